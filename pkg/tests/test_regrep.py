import random
from fractions import Fraction

import pytest

from heckealg import (
    CQ,
    HeckeElement,
    L2Vector,
    act,
    adjoint_check,
    build_ball,
    chi,
    convolve,
    double_coset_decompose,
    full_ball,
    involution_flat,
    l1_norm,
    lambda_matrix,
    operator_norm_estimate,
)
from heckealg.catalog import get_pair
from heckealg.errors import BallTooSmall
from heckealg.regrep import check_l1_bound
from heckealg.scalars import CQ_ONE


def test_act_on_delta_e_lists_the_double_coset():
    pair = get_pair("bost_connes")
    g = (Fraction(3, 2), Fraction(0))
    f = chi(pair, g)
    out = act(f, L2Vector.delta_e(pair))
    # chi_g * delta_e is the indicator of the right cosets inside HgH
    d = double_coset_decompose(pair, g)
    assert set(out.entries.keys()) == set(d.coset_keys)
    assert all(c == CQ_ONE for _, c in out.entries.values())
    assert out.norm2_sq() == d.r_value


def test_act_is_linear():
    pair = get_pair("flip")
    f = chi(pair, pair.group.elements()[3])
    xi = L2Vector(pair, [(x, CQ(Fraction(i + 1), Fraction(0)))
                         for i, x in enumerate(pair.group.elements()[:4])])
    eta = L2Vector.delta_e(pair)
    lhs = act(f, L2Vector(pair, list(xi.entries.values()) + list(eta.entries.values())))
    want = {}
    for k, (rep, c) in act(f, xi).entries.items():
        want[k] = want.get(k, CQ(Fraction(0), Fraction(0))) + c
    for k, (rep, c) in act(f, eta).entries.items():
        want[k] = want.get(k, CQ(Fraction(0), Fraction(0))) + c
    got = {k: c for k, (_, c) in lhs.entries.items()}
    assert got == {k: v for k, v in want.items() if not v.is_zero()}


def test_lambda_matrix_consistent_with_act_on_finite_pair():
    pair = get_pair("d4_center")
    f = chi(pair, pair.group.elements()[5])
    ball = full_ball(pair)
    m = lambda_matrix(f, ball)
    for j, rep in enumerate(ball.reps):
        out = act(f, L2Vector(pair, [(rep, CQ_ONE)]))
        col = {k: c for k, (_, c) in out.entries.items()}
        for i, key in enumerate(ball.keys):
            want = col.get(key, CQ(Fraction(0), Fraction(0)))
            assert m.entries[i][j] == want


def test_lambda_is_multiplicative_on_finite_pair():
    pair = get_pair("flip")
    rng = random.Random(3)
    elems = pair.group.elements()
    f = chi(pair, elems[2])
    g = chi(pair, elems[6])
    ball = full_ball(pair)
    assert lambda_matrix(convolve(f, g), ball).entries == \
        lambda_matrix(f, ball).matmul(lambda_matrix(g, ball)).entries


def test_adjoint_full_mode():
    pair = get_pair("inversion(5)")
    f = chi(pair, pair.group.elements()[4])
    rep = adjoint_check(pair, f)
    assert rep.mode == "full"
    assert rep.flat_is_adjoint and rep.sharp_is_adjoint


def test_adjoint_interior_mode_detects_sharp_mismatch():
    pair = get_pair("bost_connes")
    g = (Fraction(2), Fraction(0))
    ball = build_ball(pair, pair.sample_elements, 4)
    rep = adjoint_check(pair, chi(pair, g), ball)
    assert rep.mode == "interior"
    assert rep.flat_is_adjoint and not rep.sharp_is_adjoint
    assert rep.sharp_mismatch is not None


def test_adjoint_interior_needs_room():
    pair = get_pair("bost_connes")
    g = (Fraction(8), Fraction(0))
    ball = build_ball(pair, [(Fraction(2), Fraction(0)), (Fraction(1), Fraction(1))], 2)
    with pytest.raises(BallTooSmall):
        adjoint_check(pair, chi(pair, g), ball)


def test_operator_norm_below_l1_on_unimodular_pairs():
    for name in ("flip", "d4_center"):
        pair = get_pair(name)
        f = chi(pair, pair.group.elements()[3])
        est = operator_norm_estimate(f, full_ball(pair))
        assert est <= float(l1_norm(f).hi) + 1e-6


def test_check_l1_bound_clean_on_unimodular_element():
    pair = get_pair("bost_connes")
    f = chi(pair, (Fraction(2), Fraction(0)))
    rep = check_l1_bound(f, trials=50, seed=7)
    assert rep.ok and not rep.violations


def test_l1_bound_counterexample_is_frozen():
    """The one-norm does not dominate the operator norm when L != R.

    For g = (1/6, 0): HgH is one right coset, so ||chi_g||_1 = 1, while
    Hg^{-1}H splits into L(g) = 6 right cosets.  Feeding their indicator
    through the representation concentrates the full mass at the identity
    coset: ||chi_g * xi||_2^2 = 36 > 1^2 * ||xi||_2^2 = 6.  This is the
    expected exact value (the identity row of the matrix has six ones), not
    a bug; the inequality simply fails for non-unimodular mass transport.
    """
    pair = get_pair("bost_connes")
    g = (Fraction(1, 6), Fraction(0))
    f = chi(pair, g)
    assert l1_norm(f).value == 1
    d_inv = double_coset_decompose(pair, pair.group.inv(g))
    assert d_inv.r_value == 6
    xi = L2Vector(pair, [(rep, CQ_ONE) for rep in d_inv.right_coset_reps])
    assert act(f, xi).norm2_sq() == 36
    assert xi.norm2_sq() == 6
