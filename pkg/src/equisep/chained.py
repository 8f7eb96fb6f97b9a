"""Set distance, delta-chainedness, and hypothesis checks.

A chain step requires strictly rho(p, q) < delta; two points at exactly
delta apart are not delta-chained, and no tolerance softens that (the
boundary case is semantically load-bearing: disks of radius delta/2
around two points at distance exactly delta only touch, they do not
overlap). Step comparisons are done on squared distances, which is
exact whenever the squared values are exactly representable and avoids
the extra square-root rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Point, PointSet


@dataclass(frozen=True)
class ChainPartition:
    """Partition of a point set into delta-chained components.

    blocks are listed in canonical order of their smallest point;
    block_of maps each index of the source PointSet to its block.
    """

    threshold: float
    blocks: tuple[PointSet, ...]
    block_of: tuple[int, ...]


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the separation-hypothesis check for (A, B, epsilon).

    B_chained_at is the verdict for threshold 2*(rho_AB - epsilon) and
    is None when rho_AB <= epsilon (the threshold is not positive, so
    the clause is vacuous and the rho clause already failed).
    """

    epsilon: float
    rho_AB: float
    A_chained_at: bool
    B_chained_at: bool | None
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


def set_distance(A: PointSet, B: PointSet) -> float:
    """Minimum Euclidean distance over all pairs (exact for finite sets)."""
    best = math.inf
    for p in A.points:
        for q in B.points:
            d = math.hypot(p.x - q.x, p.y - q.y)
            if d < best:
                best = d
    return best


def chained_components(M: PointSet, delta: float) -> ChainPartition:
    """Partition M into delta-chained components.

    Components of the graph with an edge wherever rho(p, q) < delta
    strictly, computed by union-find over all pairs.
    """
    if not (delta > 0 and math.isfinite(delta)):
        raise ValueError(f"delta must be positive, got {delta}")
    pts = M.points
    n = len(pts)
    uf = _UnionFind(n)
    d2 = delta * delta
    for i in range(n):
        pi = pts[i]
        for j in range(i + 1, n):
            dx = pts[j].x - pi.x
            dy = pts[j].y - pi.y
            if dx * dx + dy * dy < d2:
                uf.union(i, j)
    groups: dict[int, list[Point]] = {}
    for i in range(n):
        groups.setdefault(uf.find(i), []).append(pts[i])
    root_items = sorted(groups.items(), key=lambda kv: kv[1][0])
    blocks = tuple(PointSet(tuple(g)) for _, g in root_items)
    root_to_block = {root: k for k, (root, _) in enumerate(root_items)}
    block_of = tuple(root_to_block[uf.find(i)] for i in range(n))
    return ChainPartition(threshold=delta, blocks=blocks, block_of=block_of)


def is_chained(A: PointSet, delta: float) -> bool:
    """True iff A forms a single delta-chained component."""
    return len(chained_components(A, delta).blocks) == 1


# Clause names, in the fixed order they are reported.
CLAUSE_RHO = "rho(A,B) <= epsilon"
CLAUSE_A = "A not 2*epsilon-chained"
CLAUSE_B = "B not 2*(rho(A,B)-epsilon)-chained"


def check_hypotheses(A: PointSet, B: PointSet, epsilon: float) -> HypothesisReport:
    """Check the sufficient conditions for an equidistant separating curve:
    rho(A,B) > epsilon, A is 2*epsilon-chained, and B is
    2*(rho(A,B)-epsilon)-chained. Failures are reported as data, not
    raised.
    """
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    rho = set_distance(A, B)
    a_ok = is_chained(A, 2.0 * epsilon)
    b_ok = is_chained(B, 2.0 * (rho - epsilon)) if rho > epsilon else None
    violations = []
    if rho <= epsilon:
        violations.append(CLAUSE_RHO)
    if not a_ok:
        violations.append(CLAUSE_A)
    if b_ok is False:
        violations.append(CLAUSE_B)
    return HypothesisReport(
        epsilon=epsilon,
        rho_AB=rho,
        A_chained_at=a_ok,
        B_chained_at=b_ok,
        violations=tuple(violations),
    )
