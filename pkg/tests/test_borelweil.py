import pytest

from qgrass.borelweil import (
    TwistedAlgebraRep,
    bundle_span,
    check_ladder_constants,
    check_twisted_vanishing,
    check_twisted_leibniz,
    e_degree,
    h0,
    ladder_constant,
    ladder_set,
    proj_j,
    twisted_d,
    twisted_d_direct,
    twisted_sigma,
    verify_borel_weil,
    verify_connectedness,
    verify_coordinate_ring,
    verify_cor64,
    verify_ell,
    verify_opposite,
    z_lower,
)
from qgrass.calculus import dbar
from qgrass.comodules import dim_formula
from qgrass.exactmath import NU, ONE, parse_ratfunc, qpow
from qgrass.minors import minor
from qgrass.ncalg import NCPoly


def test_bundle_span_examples():
    s = bundle_span(2, 1, 1)
    assert len(s) == 2
    assert set(s.basis_desc) == {(("+", (1,)),), (("+", (2,)),)}
    zero = bundle_span(3, 1, 0, max_deg=0)
    assert zero.basis == [NCPoly.one(3)]
    s = bundle_span(3, 1, 2)
    assert len(s.raw_span) == 9 and len(s) == 6
    with pytest.raises(ValueError):
        bundle_span(3, 3, 1)


def test_h0_examples():
    assert h0(bundle_span(2, 1, 1))[0] == dim_formula(1, 1, 2) == 2
    assert h0(bundle_span(3, 1, -1))[0] == 0
    assert h0(bundle_span(4, 2, 1))[0] == 6
    dim, ker = h0(bundle_span(3, 1, 1))
    assert dim == 3 and all(dbar(p, 1).is_zero() for p in ker)


def test_prescreen_agrees_with_exact():
    for n, r, k in ((2, 1, 2), (3, 1, -1), (3, 2, 1)):
        s = bundle_span(n, r, k)
        assert h0(s, mode="prescreen") == h0(s)


@pytest.mark.parametrize("n,r,k,dim", [(2, 1, 2, 3), (3, 1, 1, 3), (3, 2, 1, 3)])
def test_verify_borel_weil(n, r, k, dim):
    rep = verify_borel_weil(n, r, k)
    assert rep["pass"]
    assert rep["got"]["h0_plus"] == dim and rep["got"]["h0_minus"] == 0


def test_borel_weil_larger_spans():
    # adding z z-bar pairs to the span leaves H0 unchanged
    for n, r, k in ((2, 1, 1), (3, 1, 1)):
        rep = verify_borel_weil(n, r, k, extra=1)
        assert rep["pass"], rep["got"]
    assert verify_borel_weil(2, 1, 0, max_deg=2)["pass"]


def test_opposite():
    rep = verify_opposite(2, 1, 1)
    assert rep["got"] == {"ker_del_plus": 0, "ker_del_minus": 2}
    assert verify_opposite(3, 1, 1)["got"]["ker_del_minus"] == 3


def test_coordinate_ring():
    rep = verify_coordinate_ring(3, 1, 2)
    assert rep["pass"]
    assert rep["got"] == [{"k": 1, "l": 1, "products": 9, "rank": 6, "h0": 6, "holomorphic": True}]
    assert verify_coordinate_ring(2, 1, 2)["got"][0]["rank"] == 3


@pytest.mark.parametrize("n,r,deg", [(2, 1, 1), (3, 1, 1), (2, 1, 2), (3, 1, 2)])
def test_connectedness(n, r, deg):
    rep = verify_connectedness(n, r, deg)
    assert rep["pass"] and rep["got"]["kernel_dim"] == 1


def test_ell():
    assert e_degree(minor(3, (2,), (1,)), 1) == 1
    assert e_degree(minor(3, (1, 2), (2, 3)), 1) == -1
    assert e_degree(minor(3, (1,), (2,)), 1) is None
    assert e_degree(NCPoly.gen(3, 1, 1) + NCPoly.gen(3, 1, 2), 1) is None
    rep = verify_ell(2, 1, 1)
    assert rep["pass"]
    assert verify_ell(3, 1, 2)["pass"]


def test_twisted_rep():
    rep = TwistedAlgebraRep(4, 2, 4)
    assert rep.jp == 1
    assert (3,) in rep.t_sets and (2, 4) not in rep.t_sets
    assert TwistedAlgebraRep(4, 2, 3).t_sets == []
    with pytest.raises(ValueError):
        TwistedAlgebraRep(4, 2, 3).z((1,))
    with pytest.raises(ValueError):
        rep.z((1, 2, 3))
    with pytest.raises(ValueError):
        TwistedAlgebraRep(4, 2, 2)
    assert z_lower(4, (2, 4)) == minor(4, (1, 2), (2, 4))


def test_sigma_scales_by_column():
    rep = TwistedAlgebraRep(3, 1, 3)
    x = rep.z((3,))
    assert twisted_sigma(rep, x) == x.scale(qpow(1))
    # j = j' = 2 counts twice
    y = TwistedAlgebraRep(3, 1, 2).z((2,))
    assert twisted_sigma(TwistedAlgebraRep(3, 1, 2), y) == y.scale(qpow(2))


def test_proj_j_outside_block_is_zero():
    rep = TwistedAlgebraRep(4, 1, 2)
    assert rep.jp == 3 > rep.r
    assert twisted_d_direct(rep, rep.z((3,))).is_zero()


def test_first_order_values():
    rep = TwistedAlgebraRep(2, 1, 2)
    # d(u^1_2) = nu u^1_1, from the (1, 2) component of dbar
    assert twisted_d_direct(rep, rep.z((2,))) == NCPoly.gen(2, 1, 1).scale(NU)
    assert twisted_d(rep, {((2,),): ONE}) == {((1,),): NU}


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_twisted_vanishing(n, r):
    assert check_twisted_vanishing(n, r)["pass"]


def test_ladder_values():
    q = parse_ratfunc("q")
    assert ladder_set(3, 2, 0) == (2, 3)
    assert ladder_set(3, 2, 1) == (2, 3)
    assert ladder_set(4, 3, 1) == (2, 4)
    assert ladder_set(4, 2, 2) == (2, 3, 4)
    assert ladder_constant(2, 1, 2, 0, 1) == NU
    assert ladder_constant(2, 1, 2, 0, 2) == NU**2 * q * (q**2 + 1)
    for n, r in ((2, 1), (3, 2), (4, 2)):
        assert check_ladder_constants(n, r)["pass"]


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (4, 1)])
def test_observed_leibniz_rule_rank_one(n, r):
    rep = check_twisted_leibniz(n, r, pairs=60, seed=1, convention="observed")
    assert rep["pass"], rep["got"]


def test_stated_leibniz_counterexample():
    # smallest case: d(u12 u11) is q d(u12) u11, not d(u12) u11 + sigma(u12) d(u11)
    rep = TwistedAlgebraRep(2, 1, 2)
    x, y = rep.z((2,)), rep.z((1,))
    q = parse_ratfunc("q")
    u11 = NCPoly.gen(2, 1, 1)
    assert twisted_d_direct(rep, x * y) == (u11 * u11).scale(q**2 - 1)
    stated = twisted_d_direct(rep, x) * y + twisted_sigma(rep, x) * twisted_d_direct(rep, y)
    assert stated == (u11 * u11).scale(NU)


def test_cor64_examples():
    assert verify_cor64(2, 1, [2])["pass"]
    assert verify_cor64(3, 2, [3])["pass"]
    rep = verify_cor64(3, 1, [2, 2], bound=4)
    assert rep["pass"] and sum(rep["got"]["exponents"]) <= 4
    with pytest.raises(ValueError):
        verify_cor64(3, 1, [])
    with pytest.raises(ValueError):
        verify_cor64(3, 1, [1])
