from fractions import Fraction

import pytest

from heckealg import bruteforce, core_bound, core_finite, reduce_finite
from heckealg.catalog import get_pair
from heckealg.cli import _sl2_word_ball
from heckealg.errors import NotFinite
from heckealg.groups import mat
from heckealg.reduction import check_reduction_isomorphism


def test_core_of_flip_pair_is_trivial():
    pair = get_pair("flip")
    res = core_finite(pair)
    assert res.mode == "exact"
    assert res.elements == (pair.group.identity(),)
    assert res.is_trivial


def test_core_of_normal_subgroup_is_itself():
    pair = get_pair("d4_center")
    res = core_finite(pair)
    assert set(res.elements) == set(bruteforce.bf_subgroup_elements(pair))


def test_core_is_normal():
    for name in ("flip", "d4_center", "z6_z3", "inversion(6)"):
        pair = get_pair(name)
        g = pair.group
        core = set(core_finite(pair).elements)
        for x in g.elements():
            assert {g.mul(g.mul(x, t), g.inv(x)) for t in core} == core


def test_core_finite_requires_finite_group():
    with pytest.raises(NotFinite):
        core_finite(get_pair("bost_connes"))


def test_core_bound_shrinks_with_more_conjugators():
    pair = get_pair("sl2_z_inv_p(2)")
    ball = _sl2_word_ball(pair, 3)
    no_conj = core_bound(pair, [], ball)
    one = core_bound(pair, [mat(1, Fraction(1, 4), 0, 1)], ball)
    two = core_bound(pair, [mat(1, Fraction(1, 4), 0, 1),
                            mat(1, 0, Fraction(1, 4), 1)], ball)
    assert set(two.elements) <= set(one.elements) <= set(no_conj.elements)
    # empty conjugator set keeps exactly the subgroup members of the test set
    assert set(no_conj.elements) == {x for x in ball if pair.subgroup.contains(x)}
    # -I is central, so it survives any conjugator set
    assert mat(-1, 0, 0, -1) in set(two.elements)


def test_reduce_finite_orders():
    pair = get_pair("z6_z3")
    qpair, project = reduce_finite(pair)
    assert len(qpair.group.elements()) == 2
    assert project(pair.group.identity()) == qpair.group.identity()
    # projection is a homomorphism
    g = pair.group
    for x in g.elements():
        for y in g.elements():
            assert project(g.mul(x, y)) == qpair.group.mul(project(x), project(y))


def test_reduction_isomorphism_reports():
    for name in ("d4_center", "z6_z3", "flip"):
        rep = check_reduction_isomorphism(get_pair(name))
        assert rep.bijective and rep.r_preserved and rep.tables_match
