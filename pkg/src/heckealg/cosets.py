"""Right-coset keys, double-coset BFS decomposition, and the counting
functions L, R and the relative modular function.

The decomposition of HxH into right cosets is computed by breadth-first
search: starting from Hx, multiply representatives on the right by the
subgroup's generators (and their inverses), deduplicating by coset key.
The BFS closing on its own is the completeness certificate; running out of
budget always surfaces as Diverged, never as a partial answer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import Diverged
from .pairs import Budget, Pair, default_budget

# ---------------------------------------------------------------------------
# coset equality and keys


def coset_eq(pair: Pair, x, y) -> bool:
    """Hx == Hy, i.e. x * y^-1 in H."""
    g = pair.group
    return pair.subgroup.contains(g.mul(x, g.inv(y)))


def coset_key(pair: Pair, x) -> bytes:
    """A deterministic byte key for the right coset Hx, respecting coset_eq."""
    pair.group.check(x)
    pair.require_keys()
    if pair.canonicalizer is not None:
        canon = pair.canonicalizer(x)
        return str(canon).encode()
    # bucket fallback: a coset invariant narrows the search, pairwise
    # coset_eq settles it; ordinals are assigned in first-seen order and the
    # registry is an idempotent-fill cache.
    bucket = str(pair.bucket_invariant(x))
    reps = pair._coset_registry.setdefault(bucket, [])
    for i, r in enumerate(reps):
        if coset_eq(pair, x, r):
            return f"bkt:{bucket}#{i}".encode()
    reps.append(x)
    return f"bkt:{bucket}#{len(reps) - 1}".encode()


# ---------------------------------------------------------------------------
# double cosets


@dataclass(frozen=True)
class DoubleCosetDecomp:
    """HxH broken into right cosets of H.

    `right_coset_reps[i]` represents the right coset with key
    `coset_keys[i]`; reps are stored in BFS discovery order and the first is
    always the query element, so results are byte-stable across runs.
    """

    rep: object
    right_coset_reps: tuple
    coset_keys: tuple

    @property
    def r_value(self) -> int:
        return len(self.right_coset_reps)

    @property
    def key(self) -> bytes:
        """Canonical key of the whole double coset."""
        return b"dc:" + min(self.coset_keys)

    def contains_coset(self, k: bytes) -> bool:
        return k in self.coset_keys


def double_coset_decompose(pair: Pair, x, budget: Budget | None = None) -> DoubleCosetDecomp:
    """Enumerate H\\HxH by right-multiplication BFS over generators of H.

    Raises Diverged when the enumeration fails to close within budget; that
    may mean x is outside the commensurator or just that the budget was too
    small -- the two cases are indistinguishable here.
    """
    if budget is None:
        budget = default_budget()
    g = pair.group
    h = pair.subgroup
    start_key = coset_key(pair, x)
    cached = pair._decomp_cache.get(start_key)
    if cached is not None:
        return cached

    gens = list(h.generators) + [g.inv(s) for s in h.generators]
    reps = [x]
    keys = [start_key]
    seen = {start_key}
    queue = deque([x])
    steps = 0
    while queue:
        r = queue.popleft()
        for s in gens:
            steps += 1
            if steps > budget.max_steps:
                raise Diverged(frontier_size=len(queue), explored=len(reps))
            y = g.mul(r, s)
            k = coset_key(pair, y)
            if k not in seen:
                if len(reps) >= budget.max_cosets:
                    raise Diverged(frontier_size=len(queue) + 1, explored=len(reps))
                seen.add(k)
                reps.append(y)
                keys.append(k)
                queue.append(y)

    decomp = DoubleCosetDecomp(rep=x, right_coset_reps=tuple(reps), coset_keys=tuple(keys))
    pair._decomp_cache.setdefault(start_key, decomp)
    # every member coset reaches the same decomposition; share it
    for k in keys:
        pair._decomp_cache.setdefault(k, decomp)
    return decomp


def r_value(pair: Pair, x, budget: Budget | None = None) -> int:
    """R(x): the number of right cosets of H inside HxH."""
    return double_coset_decompose(pair, x, budget).r_value


def l_value(pair: Pair, x, budget: Budget | None = None) -> int:
    """L(x) = R(x^-1): the number of left cosets of H inside HxH."""
    return double_coset_decompose(pair, pair.group.inv(x), budget).r_value


def delta(pair: Pair, x, budget: Budget | None = None) -> Fraction:
    """The relative modular function L(x)/R(x); exact rational."""
    return Fraction(l_value(pair, x, budget), r_value(pair, x, budget))


@dataclass(frozen=True)
class CommResult:
    status: str  # "in_comm" | "unknown"
    l: int | None = None
    r: int | None = None


def commensurator_test(pair: Pair, x, budget: Budget | None = None) -> CommResult:
    """x lies in the commensurator of H iff both L(x) and R(x) are finite.

    Finiteness is only semi-decidable with generator BFS, so a divergence
    yields "unknown", never a negative answer.
    """
    try:
        r = r_value(pair, x, budget)
        l = l_value(pair, x, budget)
    except Diverged:
        return CommResult(status="unknown")
    return CommResult(status="in_comm", l=l, r=r)
