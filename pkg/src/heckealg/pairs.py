"""The Pair object (a group with a distinguished subgroup) and budgets."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import NoCanonicalizer
from .groups import Group, Subgroup


@dataclass(frozen=True)
class Budget:
    """Termination control for possibly infinite coset enumerations."""

    max_cosets: int = 10_000
    max_steps: int = 200_000

    def __post_init__(self):
        if self.max_cosets <= 0 or self.max_steps <= 0:
            raise ValueError("budget limits must be positive")


def default_budget() -> Budget:
    n = int(os.environ.get("HECKE_BUDGET_DEFAULT", "10000"))
    return Budget(max_cosets=n, max_steps=max(20 * n, 1000))


@dataclass
class Pair:
    """A group G with subgroup H; the ambient object of every computation.

    `canonicalizer`, when present, maps an element x to a hashable canonical
    form of its right coset Hx (equal cosets, equal forms).  Without one, a
    `bucket_invariant` (a coset invariant that need not separate cosets) lets
    key assignment fall back to pairwise coset equality within a bucket.
    Finite groups get a canonicalizer automatically (minimal element of Hx).
    """

    group: Group
    subgroup: Subgroup
    name: str = "pair"
    canonicalizer: object = None  # callable x -> hashable
    bucket_invariant: object = None  # callable x -> hashable
    sample_elements: tuple = ()
    # internal, idempotent-fill caches
    _decomp_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _coset_registry: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.sample_elements = tuple(self.sample_elements)
        if self.canonicalizer is None and self.group.is_finite:
            self.canonicalizer = self._finite_min_canonicalizer()

    def _finite_min_canonicalizer(self):
        g = self.group
        h = self.subgroup

        def canon(x):
            return min(
                (g.mul(e, x) for e in h.elements()),
                key=g.element_str,
            )

        return canon

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite

    def has_keys(self) -> bool:
        return self.canonicalizer is not None or self.bucket_invariant is not None

    def require_keys(self):
        if not self.has_keys():
            raise NoCanonicalizer(
                f"pair {self.name!r} has no coset canonicalizer or bucket invariant"
            )
