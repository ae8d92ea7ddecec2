"""The left regular representation on l2(H\\G), truncated to finite balls.

The l2 action itself is computed exactly on full finite supports, so norm
bound checks carry no truncation error; matrices only serve adjoint and
operator-norm diagnostics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cosets import coset_key, double_coset_decompose
from .errors import BallTooSmall, BudgetExceeded, KindMismatch
from .hecke import HeckeElement, involution_flat, involution_sharp, l1_norm
from .pairs import Budget, Pair
from .scalars import CQ, CQ_ONE, CQ_ZERO


class L2Vector:
    """A finitely supported vector on right cosets, with exact coefficients."""

    __slots__ = ("pair", "entries")

    def __init__(self, pair: Pair, terms):
        """terms: iterable of (element, CQ); elements landing in the same
        coset have their coefficients added."""
        entries: dict[bytes, tuple] = {}
        for x, c in terms:
            k = coset_key(pair, x)
            if k in entries:
                rep, acc = entries[k]
                entries[k] = (rep, acc + c)
            else:
                entries[k] = (x, c)
        self.pair = pair
        self.entries = {
            k: v for k, v in sorted(entries.items()) if not v[1].is_zero()
        }

    @staticmethod
    def delta_e(pair: Pair) -> "L2Vector":
        return L2Vector(pair, [(pair.group.identity(), CQ_ONE)])

    def coeff(self, k: bytes) -> CQ:
        v = self.entries.get(k)
        return v[1] if v else CQ_ZERO

    def norm2_sq(self) -> Fraction:
        return sum((c.abs2() for _, c in self.entries.values()), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, L2Vector)
            and self.pair is other.pair
            and {k: c for k, (_, c) in self.entries.items()}
            == {k: c for k, (_, c) in other.entries.items()}
        )

    def __hash__(self):
        return hash(tuple((k, c) for k, (_, c) in self.entries.items()))


def act(f: HeckeElement, xi: L2Vector, budget: Budget | None = None) -> L2Vector:
    """lambda(f) xi, i.e. (f * xi)(Hx) = sum_y f(H x y^-1 H) xi(Hy); exact."""
    pair = f.pair
    if pair is not xi.pair:
        raise KindMismatch("vector and element live over different pairs")
    g = pair.group

    candidates: dict[bytes, object] = {}
    for d in f.support.values():
        for ci in d.right_coset_reps:
            for y, _ in xi.entries.values():
                x = g.mul(ci, y)
                candidates.setdefault(coset_key(pair, x), x)

    terms = []
    for k in sorted(candidates):
        x = candidates[k]
        total = CQ_ZERO
        for y, cy in xi.entries.values():
            z = g.mul(x, g.inv(y))
            dz = double_coset_decompose(pair, z, budget)
            cf = f.coeffs.get(dz.key)
            if cf is not None:
                total = total + cf * cy
        if not total.is_zero():
            terms.append((x, total))
    return L2Vector(pair, terms)


# ---------------------------------------------------------------------------
# truncation balls and matrices


@dataclass(frozen=True)
class CosetBall:
    """A finite ordered basis of right cosets: all H*w for words w of length
    <= radius over the declared generators, in BFS discovery order."""

    pair: Pair
    keys: tuple
    reps: tuple
    distances: tuple
    generators: tuple
    radius: int

    def __len__(self):
        return len(self.keys)

    def distance_of(self, k: bytes) -> int | None:
        try:
            return self.distances[self.keys.index(k)]
        except ValueError:
            return None


def build_ball(pair: Pair, generators, radius: int, budget: Budget | None = None) -> CosetBall:
    """BFS over right cosets from He, multiplying by the given generators
    in declared order.  Deterministic for fixed generators and radius."""
    if budget is None:
        from .pairs import default_budget

        budget = default_budget()
    g = pair.group
    e = g.identity()
    keys = [coset_key(pair, e)]
    reps = [e]
    dists = [0]
    seen = {keys[0]}
    frontier = [e]
    for dist in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in generators:
                y = g.mul(x, s)
                k = coset_key(pair, y)
                if k not in seen:
                    if len(reps) >= budget.max_cosets:
                        raise BudgetExceeded(
                            f"ball exceeded {budget.max_cosets} cosets at radius {dist}"
                        )
                    seen.add(k)
                    keys.append(k)
                    reps.append(y)
                    dists.append(dist)
                    nxt.append(y)
        frontier = nxt
    return CosetBall(
        pair=pair,
        keys=tuple(keys),
        reps=tuple(reps),
        distances=tuple(dists),
        generators=tuple(generators),
        radius=radius,
    )


def full_ball(pair: Pair) -> CosetBall:
    """Every right coset of a finite pair, as a ball of its diameter."""
    if not pair.is_finite:
        raise KindMismatch("full_ball needs a finite pair")
    ball = build_ball(pair, pair.group.elements(), radius=1)
    return ball


@dataclass(frozen=True)
class RepMatrix:
    """The truncated matrix of lambda(f): entry(Hx, Hy) = f(H x y^-1 H)."""

    ball: CosetBall
    entries: tuple  # tuple of row tuples of CQ

    def conj_transpose(self) -> "RepMatrix":
        n = len(self.ball)
        rows = tuple(
            tuple(self.entries[j][i].conj() for j in range(n)) for i in range(n)
        )
        return RepMatrix(ball=self.ball, entries=rows)

    def matmul(self, other: "RepMatrix") -> "RepMatrix":
        n = len(self.ball)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = CQ_ZERO
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return RepMatrix(ball=self.ball, entries=tuple(rows))

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[c.to_complex() for c in row] for row in self.entries], dtype=complex
        )


def lambda_matrix(f: HeckeElement, ball: CosetBall, budget: Budget | None = None) -> RepMatrix:
    pair = f.pair
    if pair is not ball.pair:
        raise KindMismatch("ball built over a different pair")
    g = pair.group
    rows = []
    for x in ball.reps:
        row = []
        for y in ball.reps:
            z = g.mul(x, g.inv(y))
            dz = double_coset_decompose(pair, z, budget)
            row.append(f.coeffs.get(dz.key, CQ_ZERO))
        rows.append(tuple(row))
    return RepMatrix(ball=ball, entries=tuple(rows))


# ---------------------------------------------------------------------------
# checks


@dataclass
class L1BoundReport:
    trials: int
    violations: list  # fatal findings: (trial index, lhs, rhs_hi)
    indeterminate: int  # trials inside the enclosure band of a non-exact norm

    @property
    def ok(self):
        return not self.violations


def _random_vector(pair: Pair, rng: random.Random, max_support: int = 8) -> L2Vector:
    g = pair.group
    gens = list(pair.group.generators) or list(pair.sample_elements)
    gens = gens + [g.inv(s) for s in gens]
    terms = []
    for _ in range(rng.randint(1, max_support)):
        x = g.identity()
        for _ in range(rng.randint(0, 4)):
            x = g.mul(x, rng.choice(gens))
        c = CQ(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
        if c.is_zero():
            c = CQ_ONE
        terms.append((x, c))
    v = L2Vector(pair, terms)
    if not v.entries:
        v = L2Vector.delta_e(pair)
    return v


def check_l1_bound(
    f: HeckeElement, trials: int, seed: int, budget: Budget | None = None
) -> L1BoundReport:
    """Verify ||f * xi||_2^2 <= ||f||_1^2 ||xi||_2^2 on seeded random vectors.

    All squared quantities are exact rationals.  When ||f||_1 is only an
    enclosure [lo, hi], a trial violates the bound only if the left side
    exceeds hi^2 * ||xi||_2^2; landing between the lo- and hi-products is
    counted as indeterminate, not as a violation.
    """
    rng = random.Random(seed)
    n = l1_norm(f)
    violations = []
    indeterminate = 0
    for t in range(trials):
        xi = _random_vector(f.pair, rng)
        lhs = act(f, xi, budget).norm2_sq()
        xi2 = xi.norm2_sq()
        hi_rhs = n.hi * n.hi * xi2
        if lhs > hi_rhs:
            violations.append((t, lhs, hi_rhs))
        elif not n.exact and lhs > n.lo * n.lo * xi2:
            indeterminate += 1
    return L1BoundReport(trials=trials, violations=violations, indeterminate=indeterminate)


@dataclass
class AdjointReport:
    mode: str  # "full" | "interior"
    interior_size: int
    flat_is_adjoint: bool
    sharp_is_adjoint: bool
    sharp_mismatch: tuple | None  # (row key, col key, lambda(f sharp) entry, adjoint entry)


def adjoint_check(
    pair: Pair, f: HeckeElement, ball: CosetBall | None = None, budget: Budget | None = None
) -> AdjointReport:
    """Compare lambda(f flat-star) and lambda(f sharp-star) with lambda(f) dagger.

    Full mode (finite pairs, ball=None): compares every entry.  Interior
    mode: compares entries whose row and column cosets lie at distance
    <= radius - r from the ball center, where r is the largest ball distance
    of any right coset supporting f (a conservative sound margin).
    """
    if ball is None:
        if not pair.is_finite:
            raise KindMismatch("full-mode adjoint check needs a finite pair")
        ball = full_ball(pair)
        interior = list(range(len(ball)))
        mode = "full"
    else:
        mode = "interior"
        dist = {k: d for k, d in zip(ball.keys, ball.distances)}
        r_support = 0
        for d in f.support.values():
            for rep in d.right_coset_reps:
                k = coset_key(pair, rep)
                if k not in dist:
                    raise BallTooSmall(
                        "a support coset of f lies outside the ball; enlarge the radius"
                    )
                r_support = max(r_support, dist[k])
        cutoff = ball.radius - r_support
        interior = [i for i, d in enumerate(ball.distances) if d <= cutoff]
        if not interior:
            raise BallTooSmall("interior of the ball is empty for this support")

    a = lambda_matrix(f, ball, budget)
    adj = a.conj_transpose()
    m_flat = lambda_matrix(involution_flat(f, budget), ball, budget)
    m_sharp = lambda_matrix(involution_sharp(f, budget), ball, budget)

    flat_ok = True
    sharp_ok = True
    mismatch = None
    for i in interior:
        for j in interior:
            if m_flat.entries[i][j] != adj.entries[i][j]:
                flat_ok = False
            if m_sharp.entries[i][j] != adj.entries[i][j]:
                sharp_ok = False
                if mismatch is None and not adj.entries[i][j].is_zero():
                    mismatch = (
                        ball.keys[i],
                        ball.keys[j],
                        m_sharp.entries[i][j],
                        adj.entries[i][j],
                    )
    return AdjointReport(
        mode=mode,
        interior_size=len(interior),
        flat_is_adjoint=flat_ok,
        sharp_is_adjoint=sharp_ok,
        sharp_mismatch=mismatch,
    )


def operator_norm_estimate(f: HeckeElement, ball: CosetBall, iterations: int = 1000) -> float:
    """Largest singular value of the truncated lambda(f) matrix.

    Power iteration on A^dagger A seeded with the all-ones vector, converged
    to relative 1e-9 or the iteration cap; the only floating point in the
    library outside interval endpoints.
    """
    a = lambda_matrix(f, ball).to_numpy()
    if a.size == 0:
        return 0.0
    ata = a.conj().T @ a
    v = np.ones(ata.shape[0], dtype=complex)
    prev = 0.0
    for _ in range(iterations):
        w = ata @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        if prev and abs(norm - prev) <= 1e-9 * norm:
            prev = norm
            break
        prev = norm
    return float(np.sqrt(prev))
