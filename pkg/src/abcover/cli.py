"""Command-line interface: ``abcover <command> ...`` or ``python -m abcover``.

Every command prints one JSON document (or CSV where offered) carrying the
schema version and the configuration it ran with, so runs can be replayed.
Exit codes: 0 success, 1 usage or input error, 2 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd
from pathlib import Path

from . import density as dens
from . import theory
from .arith import frobenius_orbits, is_prime, primes_upto
from .chars import s1
from .covers import Cover, enumerate_covers
from .eo import eo_type
from .moduli import classify
from .newton import NewtonPolygon, newton_polygon
from .zeta import DEFAULT_SEED, oracle_compare

SCHEMA_VERSION = 1
TARGETS = ("prop32", "prop41", "lemma42", "thm15", "example52", "prop110")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    fmt: str = "json"

    def header(self) -> dict:
        return {"schema": SCHEMA_VERSION, "command": self.command, "seed": self.seed, "options": self.options}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit(cfg: RunConfig, result, out) -> None:
    doc = dict(cfg.header())
    doc["result"] = result
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected a list of integers, got {text!r}") from exc


def _genus_range(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return _int_list(text)


# ---------------------------------------------------------------- commands


def _cover_from_args(args) -> Cover:
    if args.cover:
        return Cover.from_json(json.loads(args.cover))
    if args.cyclic:
        m, a0, a1 = _int_list(args.cyclic)
        return Cover.cyclic(m, a0, a1)
    raise UsageError("give --cover JSON or --cyclic M,A0,A1")


def invariants_record(cover: Cover, r: int) -> dict:
    e = cover.exponent
    if gcd(r, e) != 1:
        raise UsageError(f"residue {r} is not a unit modulo the exponent {e}")
    r %= e
    poly = newton_polygon(cover, r)
    ft, words = eo_type(cover, r)
    return {
        "cover": cover.to_json(),
        "residue": r,
        "modulus": e,
        "np": poly.to_json(),
        "np_str": str(poly),
        "eo": {"final_type": list(ft.nu), "words": words},
        "supersingular": poly.is_supersingular(),
        "superspecial": ft.is_superspecial(),
        "ordinary": poly.is_ordinary(),
        "np_stratum": classify(poly).to_json() if cover.genus >= 2 else None,
        "eo_stratum": classify(ft).to_json() if cover.genus >= 2 else None,
    }


def cmd_enumerate(args, cfg, out):
    covers = enumerate_covers(args.genus, args.max_degree)
    if cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["group", "ram", "inertia", "genus"])
        for c in covers:
            d = c.to_json()
            w.writerow([json.dumps(d["group"]), json.dumps(d["ram"]), json.dumps(d["inertia"]), d["genus"]])
        return 0
    _emit(cfg, {"genus": args.genus, "count": len(covers), "covers": [c.to_json() for c in covers]}, out)
    return 0


def cmd_invariants(args, cfg, out):
    cover = _cover_from_args(args)
    if (args.prime is None) == (args.residue is None):
        raise UsageError("give exactly one of --prime or --residue")
    if args.prime is not None:
        if not is_prime(args.prime):
            raise UsageError(f"{args.prime} is not prime")
        if cover.degree % args.prime == 0:
            raise UsageError(f"p = {args.prime} divides the group order {cover.degree}")
        r = args.prime
    else:
        r = args.residue
    _emit(cfg, invariants_record(cover, r), out)
    return 0


def cmd_density(args, cfg, out):
    genera = _genus_range(args.genus)
    props = [p.strip() for p in args.property.split(",")]
    for p in props:
        if p not in dens.PROPERTIES:
            raise UsageError(f"unknown property {p!r}; choose from {', '.join(dens.PROPERTIES)}")
    rows = []
    for g in genera:
        for p in props:
            res = dens.genus_density(g, p, args.cap)
            rows.append({"genus": g, "property": p, "value": _frac(res.value), "float": float(res.value),
                         "mode": res.mode, "modulus": res.effective_modulus, "covers_used": res.covers_used,
                         "notes": list(res.notes)})
    if cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["genus"] + [f"{p}{suffix}" for p in props for suffix in ("", "_float", "_mode")])
        for g in genera:
            line = [g]
            for p in props:
                row = next(r for r in rows if r["genus"] == g and r["property"] == p)
                line += [row["value"], f"{row['float']:.6f}", row["mode"]]
            w.writerow(line)
        return 0
    _emit(cfg, rows[0] if len(rows) == 1 else rows, out)
    return 0


def cmd_conjecture(args, cfg, out):
    _emit(cfg, dens.conjecture13_check(args.genus, args.budget), out)
    return 0


def cmd_construct(args, cfg, out):
    params = theory.ConstructionParams(args.ell, args.n)
    cover = theory.construct_cover(params)
    result = {"ell": params.ell, "n": params.n, "k": params.k, "g": params.g, "cover": cover.to_json(),
              "equation": f"y^{params.degree} = x(1-x)^{params.inertia[1]}"}
    if args.prime is not None:
        kind = theory.theorem15_hypotheses(args.ell, args.n, args.prime)
        result["hypotheses"] = kind
        result["invariants"] = invariants_record(cover, args.prime)
        pred = theory.predicted_slopes(args.ell)
        if kind == "order_g":
            result["predicted_np"] = pred.polygon(args.n).to_json()
        elif kind == "order_2g":
            result["predicted_np"] = NewtonPolygon.supersingular(args.n * params.g).to_json()
    _emit(cfg, result, out)
    return 0


def cmd_predict(args, cfg, out):
    pred = theory.predicted_slopes(args.ell)
    _emit(cfg, {"ell": args.ell, "g": pred.g, "alpha": pred.alpha, "slopes": [_frac(s) for s in pred.slopes]}, out)
    return 0


def excess_identity_sweep(ell_max: int, n_max: int) -> dict:
    checked, failures = 0, []
    for ell in primes_upto(ell_max):
        if ell <= 3:
            continue
        for n in range(1, n_max + 1):
            if gcd(n, ell) != 1:
                continue
            for r in range(1, n + 1):
                checked += 1
                if not theory.verify_lemma42(ell, n, r):
                    failures.append([ell, n, r])
    return {"ell_max": ell_max, "n_max": n_max, "checked": checked, "failures": failures}


def signature_sweep(ell_max: int, n_max: int) -> dict:
    from .chars import signature

    checked, failures = 0, []
    for ell in primes_upto(ell_max):
        if ell <= 3:
            continue
        for n in range(1, n_max + 1):
            if gcd(n, ell) != 1:
                continue
            params = theory.ConstructionParams(ell, n)
            cover = theory.construct_cover(params)
            for j in range(1, params.degree):
                if j % ell == 0:
                    continue
                checked += 1
                vals = {signature(cover, (j, 0)), theory.closed_form_signature(j, params),
                        theory.interval_signature(j, params)}
                if len(vals) != 1:
                    failures.append([ell, n, j])
    return {"ell_max": ell_max, "n_max": n_max, "checked": checked, "failures": failures}


def cmd_verify(args, cfg, out):
    if not (args.lemma42 or args.signatures):
        raise UsageError("choose --lemma42 and/or --signatures")
    result = {}
    if args.lemma42:
        result["lemma42"] = excess_identity_sweep(args.ell_max, args.n_max)
    if args.signatures:
        result["signatures"] = signature_sweep(args.ell_max, args.n_max)
    _emit(cfg, result, out)
    return 0 if all(not v["failures"] for v in result.values()) else 2


def cmd_certify(args, cfg, out):
    _emit(cfg, theory.large_denominator_certificate(args.g, args.n).to_json(), out)
    return 0


def cmd_ie_density(args, cfg, out):
    primes = _int_list(args.primes)
    value = theory.inclusion_excl_density(primes, check=not args.no_check)
    _emit(cfg, {"primes": primes, "value": _frac(value), "float": float(value),
                "violations": theory.compatibility_violations(primes)}, out)
    return 0


def cmd_find_ss(args, cfg, out):
    _emit(cfg, theory.supersingular_genus_for_prime(args.prime, args.bound).to_json(), out)
    return 0


def cmd_oracle(args, cfg, out):
    rep = oracle_compare(args.m, args.a0, args.a1, args.prime, args.max_i, cfg.seed)
    _emit(cfg, rep.to_json(), out)
    return 0 if rep.match else 2


# --------------------------------------------------------------- reproduce


def _reproduce_prop32() -> dict:
    cover = Cover.cyclic(20, 1, 9)
    ft, words = eo_type(cover, 11)
    sets = [s for _, s in dens.genus_residue_sets(5, "ssp")]
    res = dens.union_density(sets)
    listed = [dens.CongruenceSet(m, (m - 1,)) for m in (8, 11, 12, 15, 20)]
    listed += [dens.CongruenceSet(15, (11,)), dens.CongruenceSet(20, (11,))]
    bad = [q for c in enumerate_covers(5) for q in (2, 3, 5, 7, 11) if c.degree % q == 0]
    disagreements = []
    for p in primes_upto(10**4):
        if p in set(bad):
            continue
        if dens.exists_cover_with(5, "ssp", p) != any(p in s for s in listed):
            disagreements.append(p)
    return {
        "cover": str(cover),
        "orbits_at_11": [list(o) for o in frobenius_orbits(20, 11)],
        "s1": sorted(t[0] for t in s1(cover)),
        "final_type_at_11": list(ft.nu),
        "words_at_11": words,
        "ssp_residues_mod_20": list(dens.property_residues(cover, "ssp").residues),
        "density": _frac(res.value),
        "listed_density": _frac(dens.union_density(listed).value),
        "disagreements_below_10000": disagreements,
    }


def _reproduce_prop41() -> dict:
    cover = Cover.cyclic(35, 1, 20)
    target = NewtonPolygon.two_slope(5, 12, 12)
    residues = dens.property_residues(cover, lambda c, r: newton_polygon(c, r) == target).residues
    return {
        "cover": str(cover),
        "orbits_at_3": [list(o) for o in frobenius_orbits(35, 3)],
        "s1": sorted(t[0] for t in s1(cover)),
        "np_at_3": str(newton_polygon(cover, 3)),
        "residues_mod_35": list(residues),
        "np_unlikely": classify(newton_polygon(cover, 3)).unlikely,
    }


def _reproduce_thm15() -> dict:
    rows = []
    for ell in (7, 11, 13, 17, 19, 23):
        pred = theory.predicted_slopes(ell)
        for n in range(1, 5):
            if gcd(n, ell) != 1:
                continue
            for kind in ("order_g", "order_2g"):
                for p in theory.least_primes(ell, n, kind):
                    poly = theory.slopes_at(ell, n, p)
                    want = pred.polygon(n) if kind == "order_g" else NewtonPolygon.supersingular(n * pred.g)
                    rows.append({"ell": ell, "n": n, "p": p, "kind": kind, "np": str(poly), "match": poly == want})
    return {"rows": rows, "all_match": all(r["match"] for r in rows)}


def _reproduce_example52() -> dict:
    cert = theory.large_denominator_certificate(419, 1)
    return {"slopes": sorted([f"{cert.alpha}/419", f"{419 - cert.alpha}/419"]), "unlikely": cert.report.unlikely,
            "codim": cert.report.codim, "mg_dim": cert.report.mg_dim, "floor_gf": cert.floor_gf,
            "hypotheses_at_3": theory.theorem15_hypotheses(839, 1, 3), "np_at_3": str(theory.slopes_at(839, 1, 3))}


def _reproduce_prop110() -> dict:
    S = theory.LIMSUP_SET
    value = theory.inclusion_excl_density(S, check=False)
    sub = theory.compatible_subset(S)
    sub_value = theory.inclusion_excl_density(sub)
    return {
        "size": len(S),
        "value": _frac(value),
        "exceeds_0.9999": value > Fraction(9999, 10000),
        "violations": len(theory.compatibility_violations(S)),
        "compatible_subset_size": len(sub),
        "compatible_subset_exceeds_0.9999": sub_value > Fraction(9999, 10000),
    }


REPRODUCERS = {
    "prop32": _reproduce_prop32,
    "prop41": _reproduce_prop41,
    "lemma42": lambda: excess_identity_sweep(101, 12),
    "thm15": _reproduce_thm15,
    "example52": _reproduce_example52,
    "prop110": _reproduce_prop110,
}


def golden_path(target: str) -> Path:
    return Path(str(resources.files("abcover") / "golden" / f"{target}.json"))


def _diff(expected, actual, path="") -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            if k not in actual:
                out.append(f"{path}/{k}: missing")
            elif k not in expected:
                out.append(f"{path}/{k}: unexpected")
            else:
                out += _diff(expected[k], actual[k], f"{path}/{k}")
        return out
    if isinstance(expected, list) and isinstance(actual, list) and len(expected) == len(actual):
        return [d for i, (e, a) in enumerate(zip(expected, actual)) for d in _diff(e, a, f"{path}[{i}]")]
    return [] if expected == actual else [f"{path}: expected {expected!r}, got {actual!r}"]


def reproduce(target: str) -> tuple[bool, dict, list[str]]:
    actual = json.loads(json.dumps(REPRODUCERS[target]()))
    golden = json.loads(golden_path(target).read_text())
    if golden.get("schema") != SCHEMA_VERSION:
        return False, actual, [f"golden schema {golden.get('schema')} != {SCHEMA_VERSION}"]
    diff = _diff(golden["expected"], actual)
    return not diff, actual, diff


def cmd_reproduce(args, cfg, out):
    if args.write_golden:
        actual = json.loads(json.dumps(REPRODUCERS[args.target]()))
        path = golden_path(args.target)
        path.write_text(json.dumps({"schema": SCHEMA_VERSION, "target": args.target, "expected": actual},
                                   indent=2, sort_keys=True) + "\n")
        _emit(cfg, {"target": args.target, "written": str(path)}, out)
        return 0
    ok, actual, diff = reproduce(args.target)
    _emit(cfg, {"target": args.target, "status": "pass" if ok else "fail", "diff": diff, "actual": actual}, out)
    return 0 if ok else 2


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="abcover", description="Invariants of abelian covers of P^1 branched at three points.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="all covers of a genus up to equivalence")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("invariants", help="Newton polygon, EO type and strata of one cover")
    p.add_argument("--cover", help="cover JSON as printed by enumerate")
    p.add_argument("--cyclic", help="M,A0,A1 for y^M = x^A0 (1-x)^A1")
    p.add_argument("--prime", type=int)
    p.add_argument("--residue", type=int)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("density", help="density of primes admitting a cover with a property")
    p.add_argument("--genus", required=True, help="G, G1-G2 or a comma list")
    p.add_argument("--property", required=True, help="comma list of " + ",".join(dens.PROPERTIES))
    p.add_argument("--cap", type=int, default=dens.DEFAULT_CAP)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("conjecture", help="classes without unlikely NP or EO covers")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--budget", type=int, default=dens.DEFAULT_CAP)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("construct", help="the two-slope cyclic construction")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("predict", help="predicted slopes for a prime l")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="exhaustive identity sweeps")
    p.add_argument("--lemma42", action="store_true", help="quadratic-excess identity")
    p.add_argument("--signatures", action="store_true", help="closed-form signatures vs direct")
    p.add_argument("--ell-max", type=int, default=101)
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify-denominator", help="unlikely polygon with denominator g")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("ie-density", help="inclusion-exclusion density over Sophie Germain primes")
    p.add_argument("--primes", required=True)
    p.add_argument("--no-check", action="store_true", help="skip the compatibility conditions")
    p.set_defaults(func=cmd_ie_density)

    p = sub.add_parser("find-ss-genus", help="supersingular genus for a prime via the construction")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--bound", type=int, default=10**4)
    p.set_defaults(func=cmd_find_ss)

    p = sub.add_parser("oracle", help="point-counting Newton polygon vs Shimura-Taniyama")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a0", type=int, required=True)
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--max-i", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the primitive-polynomial search")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reproduce", help="rerun a worked result and diff it against its golden file")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--write-golden", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    options = {k: v for k, v in vars(args).items() if k not in ("func", "command", "format", "seed")}
    cfg = RunConfig(args.command, options, getattr(args, "seed", DEFAULT_SEED), getattr(args, "format", "json"))
    try:
        return args.func(args, cfg, out)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"abcover: error: {exc}", file=sys.stderr)
        return 1


def run(argv) -> tuple[int, str]:
    """Run in-process and capture stdout (used by the tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
