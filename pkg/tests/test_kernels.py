import numpy as np
import pytest
from hypothesis import given, strategies as st

from abcover import kernels
from abcover import _pykernels as py
from abcover.density import _unit_mask
from abcover.zeta import find_primitive_poly

needs_c = pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")


def test_backend_switch():
    before = kernels.BACKEND
    kernels.use_backend("python")
    assert kernels.count_union is py.count_union
    kernels.use_backend(before)
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@needs_c
@given(st.lists(st.sampled_from([4, 6, 9, 10, 12, 15, 18, 30]), min_size=1, max_size=4), st.integers(0, 2**32))
def test_count_union_equivalence(moduli, seed):
    from abcover import _ckernels as cy

    rng = np.random.default_rng(seed)
    L = 180
    masks = [(rng.random(e) < 0.4).astype(np.uint8) for e in moduli]
    unit = np.frombuffer(_unit_mask(30), dtype=np.uint8)
    assert cy.count_union(L, moduli, masks, 30, unit) == py.count_union(L, moduli, masks, 30, unit)


@needs_c
@pytest.mark.parametrize("p,deg", [(2, 6), (3, 5), (5, 3), (7, 2), (11, 3), (13, 1)])
def test_field_kernels_equivalence(p, deg):
    from abcover import _ckernels as cy

    poly = find_primitive_poly(p, deg)[:-1]
    e1, l1 = py.field_tables(p, deg, poly)
    e2, l2 = cy.field_tables(p, deg, poly)
    assert np.array_equal(np.asarray(e1), np.asarray(e2)) and np.array_equal(np.asarray(l1), np.asarray(l2))
    z1 = py.one_minus_logs(p, deg, np.asarray(e1), np.asarray(l1))
    z2 = cy.one_minus_logs(p, deg, np.asarray(e1, dtype=np.int64), np.asarray(l1, dtype=np.int64))
    assert np.array_equal(np.asarray(z1), np.asarray(z2))
    for a0, a1, d in [(1, 1, 2), (1, 9, 4), (2, 3, 6)]:
        q1 = p**deg - 1
        assert py.count_affine(z1, a0 % q1, a1 % q1, d) == cy.count_affine(np.asarray(z2), a0 % q1, a1 % q1, d)


def test_zech_definition():
    p, deg = 5, 2
    poly = find_primitive_poly(p, deg)[:-1]
    exp_, log_ = py.field_tables(p, deg, poly)
    zech = py.one_minus_logs(p, deg, np.asarray(exp_), np.asarray(log_))
    # 1 - x^0 = 0 has no logarithm
    assert zech[0] == -1
    minus_one = (p**deg - 1) // 2
    for k in range(1, p**deg - 1):
        if zech[k] >= 0:
            # x^zech[k] + x^k = 1, added digit by digit
            a, b = int(exp_[k]), int(exp_[zech[k]])
            s = sum(((a // p**j + b // p**j) % p) * p**j for j in range(deg))
            assert s == 1
    # 1 - (-1) = 2
    assert zech[minus_one] == log_[2]


def test_fallback_without_extension():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['abcover._ckernels'] = None\n"
        "from abcover import kernels, density\n"
        "assert kernels.BACKEND == 'python' and kernels.available_backends() == ['python']\n"
        "print(density.genus_density(5, 'ssp').value)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "97/160"
