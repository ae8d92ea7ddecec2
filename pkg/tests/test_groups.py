import itertools
from fractions import Fraction

import pytest

from heckealg.errors import KindMismatch
from heckealg.groups import (
    AxBGroup,
    FreeGroup,
    Mat2Group,
    Subgroup,
    cyclic_group,
    dihedral_group,
    direct_product_z2_z2,
    mat,
    mat_inv,
    mat_mul,
    subgroup_check,
    symmetric_group,
    word_reduce,
)


def _check_axioms(g, elements):
    e = g.identity()
    for a in elements:
        assert g.mul(a, e) == a == g.mul(e, a)
        assert g.mul(a, g.inv(a)) == e
    for a, b, c in itertools.islice(itertools.product(elements, repeat=3), 200):
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_finite_group_axioms():
    for g in (cyclic_group(6), dihedral_group(4), symmetric_group(3),
              direct_product_z2_z2()):
        _check_axioms(g, g.elements())


def test_finite_group_orders():
    assert len(cyclic_group(7).elements()) == 7
    assert len(dihedral_group(5).elements()) == 10
    assert len(symmetric_group(4).elements()) == 24


def test_mat2_group():
    g = Mat2Group()
    a = mat(1, 2, 0, 1)
    b = mat(2, 0, 0, Fraction(1, 2))
    assert g.mul(a, g.inv(a)) == g.identity()
    assert mat_mul(a, b) == mat(2, 1, 0, Fraction(1, 2))
    assert mat_inv(b) == mat(Fraction(1, 2), 0, 0, 2)
    with pytest.raises(KindMismatch):
        g.check(mat(1, 0, 0, 0))  # singular


def test_axb_group_convention():
    g = AxBGroup()
    x = (Fraction(2), Fraction(1))
    y = (Fraction(1, 3), Fraction(5))
    # (a1, b1)(a2, b2) = (a1 a2, b2 + b1 a2)
    assert g.mul(x, y) == (Fraction(2, 3), Fraction(5) + Fraction(1, 3))
    assert g.mul(x, g.inv(x)) == g.identity()
    with pytest.raises(KindMismatch):
        g.check((Fraction(-1), Fraction(0)))


def test_free_group_words():
    g = FreeGroup(2)
    a, b = (1,), (2,)
    assert g.mul(a, g.inv(a)) == ()
    assert g.mul(g.mul(a, b), g.inv(b)) == a
    assert word_reduce([1, 2, -2, -1, 1]) == (1,)
    with pytest.raises(KindMismatch):
        word_reduce([1, 0])


from hypothesis import given
from hypothesis import strategies as st


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=30))
def test_word_reduce_idempotent_and_reduced(w):
    r = word_reduce(w)
    assert word_reduce(r) == r
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


def test_word_reduce_confluent():
    # reducing in one pass equals reducing any split concatenation
    w = [1, 2, -2, 1, -1, -1, 2, 2, -2]
    whole = word_reduce(w)
    for cut in range(len(w)):
        left, right = word_reduce(w[:cut]), word_reduce(w[cut:])
        assert word_reduce(list(left) + list(right)) == whole


def test_subgroup_closure_enumeration():
    g = dihedral_group(4)
    rot = (1, 0)  # generator of the rotation subgroup
    sub = Subgroup(parent=g, membership=lambda x: x[1] == 0,
                   generators=(rot,), is_finite=True)
    assert len(sub.elements()) == 4
    report = subgroup_check(sub, [((1, 0), (2, 0)), ((3, 0), (1, 0))])
    assert report.ok


def test_subgroup_check_flags_bad_membership():
    g = cyclic_group(6)
    # "membership" that is not closed under products
    bad = Subgroup(parent=g, membership=lambda x: x in (0, 2, 3),
                   generators=(2,), is_finite=True)
    report = subgroup_check(bad, [(2, 3), (3, 3)])
    assert not report.ok
