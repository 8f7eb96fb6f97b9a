"""Separation operations built on the offset boundary.

outer_curve encloses a chained set; separating_curve returns the
boundary cycle of the complement face holding B; midway_curve places
that curve halfway between two sets; separate_components does it for
every pair of chained components; some_simple_closed_curve always
produces one cycle on the epsilon-boundary of any nonempty set; and
verify_separation re-checks any curve from scratch with the point-side
predicates only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chained import (
    HypothesisReport,
    chained_components,
    check_hypotheses,
    is_chained,
    set_distance,
)
from .errors import (
    BSpansMultipleFaces,
    EquisepError,
    HypothesisViolation,
    NotChained,
    ZeroDistance,
)
from .geometry import (
    INSIDE,
    ON_CURVE,
    OUTSIDE,
    Arc,
    ArcCycle,
    DEFAULT_POLICY,
    Point,
    PointSet,
    SidePolicy,
    point_in_cycle,
    point_to_arc_distance,
    sample_arc_angles,
)
from .offset import FaceGraph, OffsetBoundary, face_graph, face_of_point, offset_boundary


@dataclass(frozen=True)
class SeparationResult:
    """A separating cycle plus the evidence that it separates.

    side_of_A / side_of_B come from representatives (first point of
    each set); dist_curve_A / dist_curve_B are exact minima over all
    set points and arcs. face_id / face_bounded identify the complement
    face containing B: bounded means B ended up enclosed by the curve.
    """

    curve: ArcCycle
    side_of_A: str
    side_of_B: str
    epsilon: float
    dist_curve_A: float
    dist_curve_B: float
    hypothesis: HypothesisReport
    face_id: int
    face_bounded: bool


@dataclass(frozen=True)
class MidwayResult:
    curve: ArcCycle
    rho_AB: float
    achieved_dist_A: float
    achieved_dist_B: float
    separation: SeparationResult


@dataclass(frozen=True)
class VerificationReport:
    """Independent re-check of a separation: per-point side labels for
    both sets and the exact curve-to-set distances. Passes iff every
    point of A is strictly on one side, every point of B strictly on
    the other, and nothing lies on the curve."""

    passed: bool
    side_of_A: str | None
    side_of_B: str | None
    labels_A: tuple[str, ...]
    labels_B: tuple[str, ...]
    dist_curve_A: float
    dist_curve_B: float


@dataclass(frozen=True)
class PairOutcome:
    """Separation outcome for one pair of chained components; exactly
    one of result / error is set."""

    block_a: int
    block_b: int
    result: SeparationResult | None
    error: EquisepError | None


def curve_to_set_distance(curve: ArcCycle, S: PointSet) -> float:
    """Exact minimum distance between the curve and the set."""
    return min(
        point_to_arc_distance(p, arc) for p in S.points for arc in curve.arcs
    )


def _assert_on_set_boundary(curve: ArcCycle, M: PointSet, epsilon: float,
                            policy: SidePolicy, samples_per_arc: int = 256) -> None:
    """Sampled check that every curve point is at distance epsilon from M."""
    tol = policy.on_curve_tol(epsilon)
    for arc in curve.arcs:
        for theta in sample_arc_angles(arc, samples_per_arc):
            px = arc.center.x + arc.radius * math.cos(theta)
            py = arc.center.y + arc.radius * math.sin(theta)
            rho = min(math.hypot(px - q.x, py - q.y) for q in M.points)
            if abs(rho - epsilon) > tol:
                raise EquisepError(
                    f"curve sample ({px}, {py}) is at distance {rho} from the set, "
                    f"expected {epsilon} within {tol}"
                )


def outer_curve(
    A: PointSet,
    epsilon: float,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> ArcCycle:
    """The unique outermost boundary cycle of the epsilon-neighbourhood
    of a 2*epsilon-chained set; every point of A lies inside it."""
    partition = chained_components(A, 2.0 * epsilon)
    if len(partition.blocks) > 1:
        raise NotChained(
            f"A splits into {len(partition.blocks)} blocks at threshold {2.0 * epsilon}",
            partition=partition,
            threshold=2.0 * epsilon,
        )
    ob = offset_boundary(A, epsilon, policy, seed)
    outers = ob.outer_cycles()
    if len(outers) != 1:
        raise EquisepError(
            f"expected one outer cycle for a chained set, found {len(outers)}"
        )
    return outers[0]


def separating_curve(
    A: PointSet,
    B: PointSet,
    epsilon: float,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
    force: bool = False,
) -> SeparationResult:
    """Simple closed curve on the epsilon-boundary of A separating A
    from B: the boundary cycle of the complement face containing B.

    With force=True the hypothesis check result is carried along but
    does not abort, so geometric obstructions (B spanning several
    faces) surface as BSpansMultipleFaces.
    """
    report = check_hypotheses(A, B, epsilon)
    if report.violations and not force:
        raise HypothesisViolation(report.violations, report=report)
    ob = offset_boundary(A, epsilon, policy, seed)
    fg = face_graph(ob, policy, seed)
    face_ids = [face_of_point(q, fg, policy, seed) for q in B.points]
    if len(set(face_ids)) > 1:
        raise BSpansMultipleFaces(face_ids)
    face = fg.faces[face_ids[0]]
    if face.bounded:
        curve = ob.cycles[face.boundary_cycle]
    else:
        curve = _enclosing_root(ob, fg, A, policy, seed)
    side_a = point_in_cycle(A.points[0], curve, policy, seed)
    side_b = point_in_cycle(B.points[0], curve, policy, seed)
    return SeparationResult(
        curve=curve,
        side_of_A=side_a,
        side_of_B=side_b,
        epsilon=epsilon,
        dist_curve_A=curve_to_set_distance(curve, A),
        dist_curve_B=curve_to_set_distance(curve, B),
        hypothesis=report,
        face_id=face.face_id,
        face_bounded=face.bounded,
    )


def _enclosing_root(ob: OffsetBoundary, fg: FaceGraph, A: PointSet,
                    policy: SidePolicy, seed: int) -> ArcCycle:
    roots = [i for i, p in enumerate(fg.parent) if p is None]
    if len(roots) == 1:
        return ob.cycles[roots[0]]
    # only reachable under force with a non-chained A: pick the root
    # enclosing A's representative so the sides stay meaningful
    for i in roots:
        if point_in_cycle(A.points[0], ob.cycles[i], policy, seed) == INSIDE:
            return ob.cycles[i]
    return ob.cycles[roots[0]]


def midway_curve(
    A: PointSet,
    B: PointSet,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
    force: bool = False,
) -> MidwayResult:
    """Separating curve at half the set distance, equidistant from both
    sets; among all separating curves this one is maximally distant
    from their union. Requires both sets rho(A,B)-chained."""
    rho = set_distance(A, B)
    if rho <= 0.0:
        raise ZeroDistance("sets share a point; no curve can separate them")
    violations = []
    if not is_chained(A, rho):
        violations.append("A not rho(A,B)-chained")
    if not is_chained(B, rho):
        violations.append("B not rho(A,B)-chained")
    if violations and not force:
        raise HypothesisViolation(violations)
    sep = separating_curve(A, B, rho / 2.0, policy, seed, force=force)
    return MidwayResult(
        curve=sep.curve,
        rho_AB=rho,
        achieved_dist_A=sep.dist_curve_A,
        achieved_dist_B=sep.dist_curve_B,
        separation=sep,
    )


def separate_components(
    M: PointSet,
    epsilon: float,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> tuple[PairOutcome, ...]:
    """Separate every pair of 2*epsilon-chained components of M; each
    curve also lies on the epsilon-boundary of all of M (distinct
    blocks are at least 2*epsilon apart, checked by sampling).

    Per-pair failures are recorded, not raised, so remaining pairs
    still run. Block indices refer to chained_components(M, 2*epsilon).
    """
    partition = chained_components(M, 2.0 * epsilon)
    outcomes = []
    blocks = partition.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            try:
                res = separating_curve(blocks[i], blocks[j], epsilon, policy, seed)
                _assert_on_set_boundary(res.curve, M, epsilon, policy)
                outcomes.append(PairOutcome(i, j, res, None))
            except EquisepError as exc:
                outcomes.append(PairOutcome(i, j, None, exc))
    return tuple(outcomes)


def some_simple_closed_curve(
    M: PointSet,
    epsilon: float,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> ArcCycle:
    """A simple closed curve on the epsilon-boundary of any nonempty
    set: the outer cycle of the canonically first 2*epsilon-chained
    block (every other block stays at least 2*epsilon away, so the
    cycle is on the boundary of all of M)."""
    partition = chained_components(M, 2.0 * epsilon)
    first = partition.blocks[0]
    curve = outer_curve(first, epsilon, policy, seed)
    _assert_on_set_boundary(curve, M, epsilon, policy)
    return curve


def verify_separation(
    curve: ArcCycle,
    A: PointSet,
    B: PointSet,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> VerificationReport:
    """Re-check a separation from scratch: classify every point of both
    sets against the curve. Failure is a report, not an exception."""
    labels_a = tuple(point_in_cycle(p, curve, policy, seed) for p in A.points)
    labels_b = tuple(point_in_cycle(p, curve, policy, seed) for p in B.points)
    uniform_a = len(set(labels_a)) == 1 and labels_a[0] != ON_CURVE
    uniform_b = len(set(labels_b)) == 1 and labels_b[0] != ON_CURVE
    passed = uniform_a and uniform_b and labels_a[0] != labels_b[0]
    return VerificationReport(
        passed=passed,
        side_of_A=labels_a[0] if uniform_a else None,
        side_of_B=labels_b[0] if uniform_b else None,
        labels_A=labels_a,
        labels_B=labels_b,
        dist_curve_A=curve_to_set_distance(curve, A),
        dist_curve_B=curve_to_set_distance(curve, B),
    )
