"""Concrete group kinds with exact, decidable element equality.

Elements are plain immutable Python values interpreted by their group object:

* finite table groups   -- hashable labels (ints, tuples, frozensets)
* 2x2 rational matrices -- ((a, b), (c, d)) of Fractions, nonzero determinant
* ax+b matrices         -- (a, b) of Fractions with a > 0, standing for [[1,b],[0,a]]
* semidirect N x| Z/2   -- (n, eps) with n in the normal part and eps in {1,-1}
* free-group words      -- freely reduced tuples of nonzero ints (+i / -i for
                           the i-th generator and its inverse, 1-based)

All arithmetic is exact; nothing here ever rounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import KindMismatch, NotFinite

# ---------------------------------------------------------------------------
# 2x2 exact matrix helpers


def mat(a, b, c, d):
    return (
        (Fraction(a), Fraction(b)),
        (Fraction(c), Fraction(d)),
    )


MAT_ID = mat(1, 0, 0, 1)


def mat_mul(m, n):
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_det(m):
    (a, b), (c, d) = m
    return a * d - b * c


def mat_inv(m):
    (a, b), (c, d) = m
    det = mat_det(m)
    if det == 0:
        raise KindMismatch("singular matrix has no inverse")
    return ((d / det, -b / det), (-c / det, a / det))


# ---------------------------------------------------------------------------
# free words


def word_reduce(letters) -> tuple:
    """Freely reduce a sequence of nonzero ints.  Confluent regardless of order."""
    out = []
    for x in letters:
        if x == 0:
            raise KindMismatch("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


# ---------------------------------------------------------------------------
# group interface


class Group:
    """A group with exact multiplication, inversion and decidable equality."""

    kind: str = "abstract"
    generators: tuple = ()

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def check(self, a):
        """Raise KindMismatch unless `a` is a value of this group's kind."""
        raise NotImplementedError

    def elements(self):
        """Full enumeration, or None when the group is infinite."""
        return None

    @property
    def is_finite(self):
        return self.elements() is not None

    def element_str(self, a) -> str:
        return repr(a)

    def element_key(self, a) -> bytes:
        """Canonical bytes for an element; equal elements get equal bytes."""
        return self.element_str(a).encode()


class FiniteGroup(Group):
    """A finite group materialized as an explicit multiplication table."""

    kind = "finite"

    def __init__(self, elements, mul, name="finite", generators=None):
        elems = tuple(elements)
        if len(set(elems)) != len(elems):
            raise KindMismatch("duplicate elements in finite group")
        self._elements = elems
        self._index = {e: i for i, e in enumerate(elems)}
        self.name = name
        self._table = {}
        for a in elems:
            for b in elems:
                c = mul(a, b)
                if c not in self._index:
                    raise KindMismatch(f"product {a!r}*{b!r} left the element list")
                self._table[(a, b)] = c
        ident = None
        for e in elems:
            if all(self._table[(e, a)] == a and self._table[(a, e)] == a for a in elems):
                ident = e
                break
        if ident is None:
            raise KindMismatch("no identity in element list")
        self._identity = ident
        self._inv = {}
        for a in elems:
            for b in elems:
                if self._table[(a, b)] == ident:
                    self._inv[a] = b
                    break
            else:
                raise KindMismatch(f"{a!r} has no inverse; not a group")
        self.generators = tuple(generators) if generators else elems

    def identity(self):
        return self._identity

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return self._table[(a, b)]

    def inv(self, a):
        self.check(a)
        return self._inv[a]

    def check(self, a):
        if a not in self._index:
            raise KindMismatch(f"{a!r} is not an element of {self.name}")

    def elements(self):
        return self._elements

    def index_of(self, a) -> int:
        self.check(a)
        return self._index[a]

    def element_str(self, a):
        return str(a)


class Mat2Group(Group):
    """Invertible 2x2 rational matrices (an ambient group, never enumerated)."""

    kind = "mat2"

    def __init__(self, name="mat2", generators=()):
        self.name = name
        self.generators = tuple(generators)

    def identity(self):
        return MAT_ID

    def check(self, a):
        try:
            (p, q), (r, s) = a
        except (TypeError, ValueError):
            raise KindMismatch(f"{a!r} is not a 2x2 matrix") from None
        for x in (p, q, r, s):
            if not isinstance(x, (int, Fraction)):
                raise KindMismatch(f"non-rational entry {x!r}")
        if mat_det(a) == 0:
            raise KindMismatch("singular matrix")

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return mat_mul(a, b)

    def inv(self, a):
        self.check(a)
        return mat_inv(a)

    def element_str(self, a):
        (p, q), (r, s) = a
        return f"[[{p},{q}],[{r},{s}]]"


class AxBGroup(Group):
    """Matrices [[1, b], [0, a]] with a in Q+, b in Q, stored as pairs (a, b)."""

    kind = "axb"

    def __init__(self, name="axb", generators=()):
        self.name = name
        self.generators = tuple(generators)

    def identity(self):
        return (Fraction(1), Fraction(0))

    def check(self, a):
        try:
            x, y = a
        except (TypeError, ValueError):
            raise KindMismatch(f"{a!r} is not an (a, b) pair") from None
        if not isinstance(x, (int, Fraction)) or not isinstance(y, (int, Fraction)):
            raise KindMismatch(f"non-rational components in {a!r}")
        if x <= 0:
            raise KindMismatch(f"a-component must be positive, got {x}")

    def mul(self, g, h):
        # [[1,b1],[0,a1]] [[1,b2],[0,a2]] = [[1, b2 + b1*a2], [0, a1*a2]]
        self.check(g)
        self.check(h)
        a1, b1 = g
        a2, b2 = h
        return (a1 * a2, b2 + b1 * a2)

    def inv(self, g):
        self.check(g)
        a, b = g
        return (1 / Fraction(a), Fraction(-b) / a)

    def element_str(self, g):
        a, b = g
        return f"axb({a},{b})"


class SemidirectGroup(Group):
    """N x| Z/2 for a finite group N and an order-2 action on it.

    Elements are (n, eps) with eps in {1, -1}; the acting part multiplies
    as in {1, -1} and acts on the normal part via the supplied function.
    """

    kind = "semidirect"

    def __init__(self, normal: FiniteGroup, action, name="semidirect", generators=None):
        self.normal = normal
        self.action = action  # (eps, n) -> n
        self.name = name
        self._elements = tuple(
            (n, eps) for n in normal.elements() for eps in (1, -1)
        )
        self._element_set = set(self._elements)
        for n in normal.elements():
            if action(-1, action(-1, n)) != n:
                raise KindMismatch("action is not an involution")
        self.generators = tuple(generators) if generators else self._elements

    def identity(self):
        return (self.normal.identity(), 1)

    def check(self, a):
        if a not in self._element_set:
            raise KindMismatch(f"{a!r} is not an element of {self.name}")

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        (n1, e1), (n2, e2) = a, b
        return (self.normal.mul(n1, self.action(e1, n2)), e1 * e2)

    def inv(self, a):
        self.check(a)
        n, e = a
        return (self.action(e, self.normal.inv(n)), e)

    def elements(self):
        return self._elements

    def element_str(self, a):
        n, e = a
        return f"({n},{'+' if e == 1 else '-'})"


class FreeGroup(Group):
    """The free group of a given rank; elements are freely reduced words."""

    kind = "free"

    def __init__(self, rank=2, name=None):
        self.rank = rank
        self.name = name or f"free{rank}"
        self.generators = tuple((i,) for i in range(1, rank + 1))

    def identity(self):
        return ()

    def check(self, a):
        if not isinstance(a, tuple):
            raise KindMismatch(f"{a!r} is not a word")
        for i, x in enumerate(a):
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise KindMismatch(f"bad letter {x!r} in word")
            if i and a[i - 1] == -x:
                raise KindMismatch(f"word {a!r} is not reduced")

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return word_reduce(a + b)

    def inv(self, a):
        self.check(a)
        return tuple(-x for x in reversed(a))

    def element_str(self, a):
        if not a:
            return "e"
        letters = "abcdefgh"
        return "".join(
            letters[abs(x) - 1] if x > 0 else letters[abs(x) - 1].upper() for x in a
        )


# ---------------------------------------------------------------------------
# subgroups


@dataclass
class Subgroup:
    """A subgroup given by a membership oracle and a generator list."""

    parent: Group
    membership: object  # callable element -> bool
    generators: tuple
    is_finite: bool = False
    name: str = "H"
    _elements: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        if not self.generators:
            raise KindMismatch("subgroup needs at least one generator")
        for g in self.generators:
            self.parent.check(g)

    def contains(self, a) -> bool:
        self.parent.check(a)
        return bool(self.membership(a))

    def elements(self):
        """Closure of the generators; only for finite subgroups."""
        if not self.is_finite:
            raise NotFinite(f"subgroup {self.name} is not finite")
        if self._elements is None:
            g = self.parent
            seen = {g.identity()}
            frontier = [g.identity()]
            gens = list(self.generators) + [g.inv(x) for x in self.generators]
            while frontier:
                x = frontier.pop()
                for s in gens:
                    y = g.mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
            self._elements = tuple(sorted(seen, key=g.element_str))
        return self._elements


@dataclass
class SubgroupReport:
    checked: int
    violations: list

    @property
    def ok(self):
        return not self.violations


def subgroup_check(h: Subgroup, samples) -> SubgroupReport:
    """Sanity-check a subgroup on sampled element pairs.

    Verifies identity membership, generator membership, and closure of the
    membership predicate under products and inverses of the sampled pairs
    (only where both samples are themselves members).
    """
    g = h.parent
    violations = []
    if not h.contains(g.identity()):
        violations.append(("identity", g.identity()))
    for s in h.generators:
        if not h.contains(s):
            violations.append(("generator", s))
    checked = 0
    for a, b in samples:
        checked += 1
        if h.contains(a):
            if not h.contains(g.inv(a)):
                violations.append(("inverse", a))
            if h.contains(b) and not h.contains(g.mul(a, b)):
                violations.append(("product", (a, b)))
    return SubgroupReport(checked=checked, violations=violations)


# ---------------------------------------------------------------------------
# common finite groups


def cyclic_group(n: int, name=None) -> FiniteGroup:
    return FiniteGroup(
        range(n), lambda a, b: (a + b) % n, name=name or f"Z/{n}", generators=(1 % n,)
    )


def direct_product_z2_z2() -> FiniteGroup:
    elems = list(itertools.product((0, 1), repeat=2))
    return FiniteGroup(
        elems,
        lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2),
        name="Z/2xZ/2",
        generators=((1, 0), (0, 1)),
    )


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n; elements (r, s) with r mod n a rotation, s a flip bit."""

    def mul(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (r2 if s1 == 0 else -r2)) % n, (s1 + s2) % 2)

    elems = [(r, s) for r in range(n) for s in (0, 1)]
    return FiniteGroup(elems, mul, name=f"D{n}", generators=((1, 0), (0, 1)))


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with elements as permutation tuples (images of 0..n-1)."""
    elems = [tuple(p) for p in itertools.permutations(range(n))]

    def mul(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(n))

    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return FiniteGroup(elems, mul, name=f"S{n}", generators=tuple(gens) or None)
