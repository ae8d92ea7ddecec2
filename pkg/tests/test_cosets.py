from fractions import Fraction

import pytest

from heckealg import Budget, Diverged, bruteforce, delta, l_value, r_value
from heckealg.catalog import get_pair
from heckealg.cosets import (
    commensurator_test,
    coset_eq,
    coset_key,
    double_coset_decompose,
)


def test_coset_eq_and_keys_on_finite_pair():
    pair = get_pair("flip")
    g = pair.group
    for x in g.elements():
        for y in g.elements():
            expected = bruteforce.bf_right_coset(pair, x) == bruteforce.bf_right_coset(pair, y)
            assert coset_eq(pair, x, y) == expected
            assert (coset_key(pair, x) == coset_key(pair, y)) == expected


def test_decompose_matches_bruteforce_on_finite_pairs():
    for name in ("flip", "inversion(5)", "d4_center"):
        pair = get_pair(name)
        for x in pair.group.elements():
            d = double_coset_decompose(pair, x)
            assert d.r_value == bruteforce.bf_r_value(pair, x)
            members = set()
            for rep in d.right_coset_reps:
                members |= bruteforce.bf_right_coset(pair, rep)
            assert members == bruteforce.bf_double_coset(pair, x)


def test_decompose_key_independent_of_representative():
    pair = get_pair("bost_connes")
    g = (Fraction(3, 4), Fraction(1, 2))
    d1 = double_coset_decompose(pair, g)
    # same double coset, different representative: h1 * g * h2
    h1 = (Fraction(1), Fraction(5))
    h2 = (Fraction(1), Fraction(-2))
    d2 = double_coset_decompose(pair, pair.group.mul(h1, pair.group.mul(g, h2)))
    assert d1.key == d2.key
    assert d1.r_value == d2.r_value


def test_bost_connes_counts():
    pair = get_pair("bost_connes")
    g = (Fraction(3, 4), Fraction(0))
    assert r_value(pair, g) == 3
    assert l_value(pair, g) == 4
    assert delta(pair, g) == Fraction(4, 3)
    assert delta(pair, pair.group.identity()) == 1


def test_divergence_raises():
    pair = get_pair("free_non_hecke")
    with pytest.raises(Diverged):
        double_coset_decompose(pair, (2,), Budget(max_cosets=100, max_steps=1000))


def test_commensurator_test():
    pair = get_pair("bost_connes")
    res = commensurator_test(pair, (Fraction(5, 2), Fraction(1)))
    assert res.status == "in_comm" and (res.l, res.r) == (2, 5)
    free = get_pair("free_non_hecke")
    res = commensurator_test(free, (2,), Budget(max_cosets=100, max_steps=1000))
    assert res.status == "unknown"
