import pytest

from qgrass.borelweil import _kernel
from qgrass.calculus import (
    FormVector,
    dbar,
    dbar_brute,
    dbar_minor_closed,
    del_,
    hk_first_order_dim,
    lambda1_coord,
    lambda_constants,
    proj_V0,
)
from qgrass.exactmath import ONE, ZERO, parse_ratfunc
from qgrass.minors import minor, subsets, z_minus, z_plus
from qgrass.ncalg import NCPoly


def test_dbar_del_of_one():
    for n, r in ((2, 1), (3, 1), (3, 2)):
        assert dbar(NCPoly.one(n), r).is_zero()
        assert del_(NCPoly.one(n), r).is_zero()


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_holomorphic_generators(n, r):
    for I in subsets(n, r):
        assert dbar(z_plus(n, r, I), r).is_zero()
    for J in subsets(n, n - r):
        assert del_(z_minus(n, r, J), r).is_zero()


def test_dbar_of_zbar_n2():
    v = dbar(z_minus(2, 1, (2,)), 1)
    assert set(v.comps) == {(1, 2)}
    assert v == dbar_minor_closed(2, 1, (2,), (2,))


def test_del_of_surgered_generator_n3():
    for j in (2, 3):
        assert not del_(z_plus(3, 1, (j,)), 1).is_zero()


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2)])
def test_fast_dbar_matches_brute(n, r):
    for s in range(1, n + 1):
        for I in subsets(n, s):
            for J in subsets(n, s):
                z = minor(n, I, J)
                assert dbar(z, r) == dbar_brute(z, r)
                assert dbar(z, r) == dbar_minor_closed(n, r, I, J)



def test_proj_v0():
    n, r = 3, 2
    lv = FormVector(n, r, "levi", {(1, 2): NCPoly.gen(n, 1, 1)})
    assert proj_V0(lv) == lv
    assert proj_V0(proj_V0(lv)) == proj_V0(lv)
    off = FormVector(n, r, "offdiag", dict(dbar(minor(3, (1, 2), (1, 3)), r).comps))
    assert proj_V0(off).is_zero()


def test_hk_dimensions():
    for (n, r), expected in {(2, 1): 2, (3, 1): 4, (4, 1): 6, (3, 2): 4, (4, 2): 8}.items():
        assert hk_first_order_dim(n, r) == expected
    with pytest.raises(ValueError):
        hk_first_order_dim(3, 3)


def test_lambda_coordinates():
    q = parse_ratfunc("q")
    assert lambda1_coord(NCPoly.one(3), 1, 2) == ZERO
    for k in range(1, 4):
        for l in range(1, 4):
            for i in range(1, 4):
                for j in range(1, 4):
                    if i != j:
                        # coordinate is Q_ji, nonzero on u^k_l iff (k, l) = (i, j)
                        assert bool(lambda1_coord(NCPoly.gen(3, k, l), i, j)) == ((k, l) == (i, j))
    with pytest.raises(ValueError):
        lambda1_coord(NCPoly.one(3), 1, 1)
    assert lambda_constants(2, 1) == {(1, 2): q**2 - 1}
    lam = lambda_constants(4, 2)
    assert lam[(1, 3)] == (1 - q**2) / q and lam[(2, 3)] == (q**2 - 1) / q**2
    assert all(lam.values())


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1)])
def test_kernel_independent_of_generator_scaling(n, r):
    # a global factor on r rescales each Q-coordinate by a power, so ker dbar cannot move
    c = parse_ratfunc("(q + 2)/(q^2 + 3)")
    span = [z_plus(n, r, I) * z_minus(n, r, J) for I in subsets(n, r) for J in subsets(n, n - r)]
    plain = _kernel(span, [lambda g: dbar(g, r)])
    scaled = _kernel(span, [lambda g: dbar(g, r, rscale=c)])
    assert len(plain) == len(scaled)
