import random
from fractions import Fraction

import pytest

from heckealg import (
    CQ,
    HeckeElement,
    bruteforce,
    chi,
    convolve,
    delta,
    double_coset_decompose,
    identity_element,
    involution_flat,
    involution_sharp,
    l1_norm,
    l_value,
    r_value,
)
from heckealg.catalog import get_pair
from heckealg.hecke import (
    is_self_inverse_class,
    is_gelfand,
    is_locally_commutative,
    is_relatively_unimodular,
    structure_constants,
)
from heckealg.scalars import CQ_ONE


def _all_dcs(pair):
    seen = {}
    for x in pair.group.elements():
        d = double_coset_decompose(pair, x)
        seen[d.key] = d
    return list(seen.values())


def _random_element(pair, pool, rng):
    terms = []
    for d in rng.sample(pool, rng.randint(1, min(3, len(pool)))):
        terms.append((d, CQ(Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))))
    f = HeckeElement(pair, terms)
    return f if not f.is_zero() else identity_element(pair)


def test_identity_element_is_neutral():
    for name in ("flip", "d4_center", "bost_connes"):
        pair = get_pair(name)
        e = identity_element(pair)
        g = pair.sample_elements[0] if pair.sample_elements else pair.group.elements()[1]
        f = chi(pair, g)
        assert convolve(e, f) == f
        assert convolve(f, e) == f


def test_convolution_matches_bruteforce():
    for name in ("flip", "inversion(4)", "z6_z3"):
        pair = get_pair(name)
        dcs = _all_dcs(pair)
        rng = random.Random(11)
        for _ in range(10):
            f1 = _random_element(pair, dcs, rng)
            f2 = _random_element(pair, dcs, rng)
            got = convolve(f1, f2)
            want = bruteforce.bf_convolve(pair, f1.value_at, f2.value_at)
            for d in dcs:
                assert got.value_at(d.rep) == want(d.rep)


def test_convolution_associative_on_finite_pair():
    pair = get_pair("d4_center")
    dcs = _all_dcs(pair)
    rng = random.Random(5)
    for _ in range(10):
        f1, f2, f3 = (_random_element(pair, dcs, rng) for _ in range(3))
        assert convolve(convolve(f1, f2), f3) == convolve(f1, convolve(f2, f3))


def test_involution_flat_properties():
    pair = get_pair("bost_connes")
    g = (Fraction(2, 3), Fraction(1, 2))
    f = chi(pair, g)
    assert involution_flat(involution_flat(f)) == f
    # (f1 * f2)^flat = f2^flat * f1^flat
    f2 = chi(pair, (Fraction(2), Fraction(0)))
    assert involution_flat(convolve(f, f2)) == convolve(
        involution_flat(f2), involution_flat(f)
    )


def test_involution_sharp_is_isometric():
    pair = get_pair("bost_connes")
    for g in [(Fraction(2, 3), Fraction(0)), (Fraction(5), Fraction(1, 2)),
              (Fraction(1, 4), Fraction(7, 3))]:
        f = chi(pair, g)
        n, ns = l1_norm(f), l1_norm(involution_sharp(f))
        assert n.exact and ns.exact and n.lo == ns.lo
        assert involution_sharp(involution_sharp(f)) == f


def test_l1_norm_values():
    pair = get_pair("bost_connes")
    g = (Fraction(5, 4), Fraction(0))
    f = chi(pair, g).scale(CQ(Fraction(3), Fraction(4)))  # |3+4i| = 5
    n = l1_norm(f)
    assert n.exact and n.lo == 5 * r_value(pair, g)


def test_structure_constants_row_sums():
    # counting both sides of chi_C * chi_D over right cosets:
    # sum over E of m(C,D;E) R(E) = R(C) R(D)
    for name in ("flip", "d4_center", "z6_z3", "inversion(5)"):
        pair = get_pair(name)
        dcs = _all_dcs(pair)
        for c in dcs:
            for d in dcs:
                consts, decomps = structure_constants(pair, c, d)
                total = sum(m * decomps[k].r_value for k, m in consts.items())
                assert total == c.r_value * d.r_value


def test_chi_convolution_recovers_l_and_r():
    pair = get_pair("gl2q_plus_sl2z")
    from heckealg.groups import mat

    g = mat(1, 0, 0, 6)
    f, fi = chi(pair, g), chi(pair, pair.group.inv(g))
    h_key = double_coset_decompose(pair, pair.group.identity()).key
    assert convolve(fi, f).coeffs[h_key].re == r_value(pair, g)
    assert convolve(f, fi).coeffs[h_key].re == l_value(pair, g)


def test_unimodularity_verdicts():
    assert is_relatively_unimodular(get_pair("flip")).kind == "true"
    v = is_relatively_unimodular(get_pair("bost_connes"))
    assert v.kind == "false"
    g, d = v.witness
    assert d != 1 and delta(get_pair("bost_connes"), g) == d


def test_self_inverse_classes_and_gelfand_on_flip():
    pair = get_pair("flip")
    assert all(is_self_inverse_class(pair, x) for x in pair.group.elements())
    assert is_locally_commutative(pair).kind == "true"
    assert is_gelfand(pair).kind == "true"


def test_bost_connes_not_locally_commutative():
    pair = get_pair("bost_connes")
    v = is_locally_commutative(pair)
    assert v.kind == "false"


def test_local_commutativity_witness_is_genuine():
    pair = get_pair("bost_connes")
    v = is_locally_commutative(pair)
    assert v.kind == "false" and v.witness is not None
    g = v.witness
    f, fi = chi(pair, g), chi(pair, pair.group.inv(g))
    assert convolve(f, fi) != convolve(fi, f)
