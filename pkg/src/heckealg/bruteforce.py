"""Exhaustive oracles for finite pairs.

Everything here works by total enumeration of the group, independently of
the BFS/key machinery in `cosets` and the sparse convolution in `hecke`, so
the two routes can be compared against each other in tests.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotFinite
from .pairs import Pair
from .scalars import CQ, CQ_ZERO


def _require_finite(pair: Pair):
    if not pair.group.is_finite:
        raise NotFinite("brute-force oracles need a finite group")


def bf_subgroup_elements(pair: Pair):
    _require_finite(pair)
    return [t for t in pair.group.elements() if pair.subgroup.contains(t)]


def bf_right_coset(pair: Pair, x) -> frozenset:
    g = pair.group
    return frozenset(g.mul(h, x) for h in bf_subgroup_elements(pair))


def bf_right_cosets_of_group(pair: Pair):
    """All right cosets Hg, each as a frozenset, with a deterministic rep."""
    g = pair.group
    seen = {}
    out = []
    for x in g.elements():
        c = bf_right_coset(pair, x)
        if c not in seen:
            seen[c] = x
            out.append((x, c))
    return out


def bf_double_coset(pair: Pair, x) -> frozenset:
    g = pair.group
    hs = bf_subgroup_elements(pair)
    return frozenset(g.mul(g.mul(h1, x), h2) for h1 in hs for h2 in hs)


def bf_r_value(pair: Pair, x) -> int:
    return len({bf_right_coset(pair, y) for y in bf_double_coset(pair, x)})


def bf_l_value(pair: Pair, x) -> int:
    return bf_r_value(pair, pair.group.inv(x))


def bf_delta(pair: Pair, x) -> Fraction:
    return Fraction(bf_l_value(pair, x), bf_r_value(pair, x))


def bf_double_cosets(pair: Pair):
    """All double cosets in a deterministic order.

    Returns (dcs, dc_of): dcs is a list of dicts with keys index, rep,
    elements, r, l; dc_of maps every group element to its double coset dict.
    """
    g = pair.group
    dcs = []
    dc_of = {}
    for x in g.elements():
        if x in dc_of:
            continue
        members = bf_double_coset(pair, x)
        rep = min(members, key=g.element_str)
        info = {
            "index": len(dcs),
            "rep": rep,
            "elements": members,
            "r": bf_r_value(pair, rep),
            "l": bf_l_value(pair, rep),
        }
        dcs.append(info)
        for m in members:
            dc_of[m] = info
    return dcs, dc_of


def bf_convolve(pair: Pair, f1, f2):
    """Convolution by the literal double sum over right cosets of G.

    f1, f2 and the result are callables element -> CQ, constant on double
    cosets (constancy is the caller's responsibility).
    """
    _require_finite(pair)
    g = pair.group
    coset_reps = [rep for rep, _ in bf_right_cosets_of_group(pair)]

    def result(x):
        total = CQ_ZERO
        for y in coset_reps:
            total = total + f1(g.mul(x, g.inv(y))) * f2(y)
        return total

    return result


def bf_chi(pair: Pair, x):
    members = bf_double_coset(pair, x)

    def f(z):
        return CQ(Fraction(1)) if z in members else CQ_ZERO

    return f


def bf_structure_table(pair: Pair):
    """Structure constants m(C, D; E) for every pair of double cosets.

    Returns (table, dc_of) where table has "constants": {(i, j): {k: m}}
    and "r_values": [R of each double coset].
    """
    dcs, dc_of = bf_double_cosets(pair)
    constants = {}
    for c in dcs:
        for d in dcs:
            conv = bf_convolve(pair, bf_chi(pair, c["rep"]), bf_chi(pair, d["rep"]))
            row = {}
            for e in dcs:
                v = conv(e["rep"])
                if not v.is_zero():
                    assert v.im == 0 and v.re.denominator == 1 and v.re >= 0
                    row[e["index"]] = int(v.re)
            constants[(c["index"], d["index"])] = row
    return {"constants": constants, "r_values": [d["r"] for d in dcs]}, dc_of
