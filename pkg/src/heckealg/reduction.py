"""Core of a pair, quotient reduction, and the reduction isomorphism check.

The core is the intersection of all conjugates of H, the largest normal
subgroup of G inside H.  For finite G it is computed exactly; for infinite G
only a finite-conjugator upper bound is available, and the module never
claims an exact infinite core.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bruteforce import bf_double_cosets, bf_structure_table
from .errors import NotFinite
from .groups import FiniteGroup, Subgroup
from .pairs import Pair


@dataclass(frozen=True)
class CoreResult:
    mode: str  # "exact" | "bound"
    elements: tuple  # exact core, or the surviving test elements
    conjugators: tuple = ()
    test_set_size: int = 0

    @property
    def is_trivial(self):
        return self.mode == "exact" and len(self.elements) == 1


def core_finite(pair: Pair) -> CoreResult:
    """The exact core of a finite pair; verified normal in G."""
    g = pair.group
    if not g.is_finite:
        raise NotFinite("exact cores need a finite group")
    h_elems = [t for t in g.elements() if pair.subgroup.contains(t)]
    core = [
        t
        for t in h_elems
        if all(pair.subgroup.contains(g.mul(g.mul(g.inv(x), t), x)) for x in g.elements())
    ]
    core_set = set(core)
    for x in g.elements():
        if {g.mul(g.mul(x, t), g.inv(x)) for t in core} != core_set:
            raise AssertionError("computed core is not normal; group tables are broken")
    return CoreResult(mode="exact", elements=tuple(sorted(core, key=g.element_str)))


def core_bound(pair: Pair, conjugators, test_set) -> CoreResult:
    """Survivors of finitely many conjugation tests: a superset of
    core(G, H) intersected with the test set."""
    g = pair.group
    survivors = [
        t
        for t in test_set
        if pair.subgroup.contains(t)
        and all(
            pair.subgroup.contains(g.mul(g.mul(g.inv(x), t), x)) for x in conjugators
        )
    ]
    return CoreResult(
        mode="bound",
        elements=tuple(survivors),
        conjugators=tuple(conjugators),
        test_set_size=len(list(test_set)),
    )


def reduce_finite(pair: Pair):
    """Quotient (G/K, H/K) by the core K, as a fresh finite table pair.

    Returns (quotient_pair, project) where project maps an element of G to
    its image in G/K.  The quotient is re-verified to be reduced.
    """
    g = pair.group
    if not g.is_finite:
        raise NotFinite("reduction needs a finite group")
    core = core_finite(pair).elements
    coset_of = {}
    labels = {}
    for x in g.elements():
        if x in coset_of:
            continue
        members = tuple(sorted((g.mul(x, t) for t in core), key=g.element_str))
        for m in members:
            coset_of[m] = members
        labels[members] = members
    elems = sorted(set(coset_of.values()), key=lambda c: g.element_str(c[0]))

    def qmul(c1, c2):
        return coset_of[g.mul(c1[0], c2[0])]

    qgroup = FiniteGroup(elems, qmul, name=f"{pair.name}/K")
    h_membership = pair.subgroup.contains

    def q_membership(c):
        return any(h_membership(m) for m in c)

    qgens = tuple({coset_of[s]: None for s in pair.subgroup.generators})
    qsub = Subgroup(
        parent=qgroup,
        membership=q_membership,
        generators=qgens,
        is_finite=True,
        name=f"{pair.subgroup.name}/K",
    )
    qpair = Pair(group=qgroup, subgroup=qsub, name=f"{pair.name}_reduced")
    if len(core_finite(qpair).elements) != 1:
        raise AssertionError("reduction is not reduced; core computation is broken")

    def project(x):
        return coset_of[x]

    return qpair, project


@dataclass
class ReductionReport:
    ok: bool
    double_cosets: int
    r_preserved: bool
    bijective: bool
    tables_match: bool


def check_reduction_isomorphism(pair: Pair, budget=None) -> ReductionReport:
    """Verify HgH -> H'gbar H' is a well defined bijection preserving
    R-values and all structure constants between a finite pair and its
    reduction (both tables computed by exhaustive double sums)."""
    qpair, project = reduce_finite(pair)
    table, _ = bf_structure_table(pair)
    qtable, qdc_of = bf_structure_table(qpair)
    dcs, _ = bf_double_cosets(pair)

    # the double-coset map, via representatives
    mapping = {}
    images = set()
    for d in dcs:
        img = qdc_of[project(d["rep"])]
        mapping[d["index"]] = img["index"]
        images.add(img["index"])
    n_q_dcs = len({v["index"] for v in qdc_of.values()})
    bijective = len(images) == len(dcs) == n_q_dcs
    r_preserved = all(
        dcs[i]["r"] == qtable["r_values"][mapping[i]] for i in range(len(dcs))
    )
    tables_match = True
    for (c, d), row in table["constants"].items():
        qrow = qtable["constants"][(mapping[c], mapping[d])]
        if {mapping[e]: m for e, m in row.items()} != qrow:
            tables_match = False
            break
    ok = bijective and r_preserved and tables_match
    return ReductionReport(
        ok=ok,
        double_cosets=len(dcs),
        r_preserved=r_preserved,
        bijective=bijective,
        tables_match=tables_match,
    )
