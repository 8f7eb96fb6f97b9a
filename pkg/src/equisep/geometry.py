"""Exact primitive geometry for circular-arc curves.

Points, point sets, arcs, closed arc cycles, and the robust predicates
everything else is built on: circle-circle intersection, point-to-arc
distance, point-in-cycle classification by seeded ray casting, and
simplicity checking of arc cycles.

All tolerances come from a single SidePolicy object passed explicitly;
there are no module-level tolerance globals. Every type is immutable
and every function is a pure function of its arguments plus an explicit
seed, so concurrent use is safe and results are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import (
    DegenerateRay,
    EmptyInput,
    IdenticalCircles,
    NotClosed,
    RobustnessExhausted,
)

TWO_PI = 2.0 * math.pi

# point_in_cycle verdicts
INSIDE = "inside"
OUTSIDE = "outside"
ON_CURVE = "on_curve"

OUTER = "outer"
HOLE = "hole"


@dataclass(frozen=True)
class SidePolicy:
    """Shared tolerance policy.

    tau_join   absolute tolerance for welding arc endpoints,
    tau_isect  absolute tolerance for merging coincident intersection points,
    tau_dist   relative tolerance for distance assertions; comparisons
               against a radius r use tau_dist * (1 + r).
    """

    tau_join: float = 1e-12
    tau_isect: float = 1e-12
    tau_dist: float = 1e-9

    def __post_init__(self):
        if not (self.tau_join > 0 and self.tau_isect > 0 and self.tau_dist > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.tau_isect > self.tau_join:
            raise ValueError("tau_isect must not exceed tau_join")

    def on_curve_tol(self, radius: float) -> float:
        return self.tau_dist * (1.0 + radius)


DEFAULT_POLICY = SidePolicy()


@dataclass(frozen=True, order=True)
class Point:
    """Plane point; ordering is lexicographic by (x, y)."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate: ({self.x}, {self.y})")


def point_distance(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


@dataclass(frozen=True)
class PointSet:
    """Finite set of plane points in canonical lexicographic order.

    Construction deduplicates exactly equal points; near-duplicates are
    legal input and are kept.
    """

    points: tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise EmptyInput("point set must be nonempty")
        for a, b in zip(self.points, self.points[1:]):
            if not a < b:
                raise ValueError("points must be strictly ascending (use from_coords)")

    @staticmethod
    def from_coords(coords) -> "PointSet":
        pts = {Point(float(x), float(y)) for x, y in coords}
        if not pts:
            raise EmptyInput("point set must be nonempty")
        return PointSet(tuple(sorted(pts)))

    @staticmethod
    def from_points(points) -> "PointSet":
        return PointSet(tuple(sorted(set(points))))

    def __len__(self) -> int:
        return len(self.points)

    def coords(self) -> list[tuple[float, float]]:
        return [(p.x, p.y) for p in self.points]


@dataclass(frozen=True)
class Arc:
    """Directed circular arc, always counterclockwise around its center.

    Angles are canonicalized to [0, 2pi). A full circle is encoded as
    start_angle == end_angle with the full_circle flag set; a non-full
    arc with equal angles is rejected as ambiguous. center_index points
    back into the generating PointSet (-1 for free-standing arcs).
    """

    center: Point
    radius: float
    start_angle: float
    end_angle: float
    full_circle: bool = False
    center_index: int = -1

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not (math.isfinite(self.start_angle) and math.isfinite(self.end_angle)):
            raise ValueError("angles must be finite")
        s = self.start_angle % TWO_PI
        e = self.end_angle % TWO_PI
        if self.full_circle:
            e = s
        elif s == e:
            raise ValueError("zero-sweep arc; encode full circles with full_circle=True")
        object.__setattr__(self, "start_angle", s)
        object.__setattr__(self, "end_angle", e)

    @property
    def sweep(self) -> float:
        if self.full_circle:
            return TWO_PI
        return (self.end_angle - self.start_angle) % TWO_PI

    def point_at(self, theta: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(theta),
            self.center.y + self.radius * math.sin(theta),
        )

    def start_point(self) -> Point:
        return self.point_at(self.start_angle)

    def end_point(self) -> Point:
        return self.point_at(self.end_angle)

    def midpoint(self) -> Point:
        return self.point_at(self.start_angle + 0.5 * self.sweep)

    def angle_offset(self, theta: float) -> float:
        """Angle of theta past start_angle, in [0, 2pi)."""
        return (theta - self.start_angle) % TWO_PI

    def contains_angle(self, theta: float, slack: float = 0.0) -> bool:
        """Whether theta lies on the arc, expanded by `slack` radians."""
        if self.full_circle:
            return True
        a = self.angle_offset(theta)
        return a <= self.sweep + slack or a >= TWO_PI - slack


@dataclass(frozen=True)
class ArcCycle:
    """Closed chain of arcs traversed in order; a simple closed curve
    when cycle_is_simple holds.

    reversed_flags marks arcs traversed against their stored (ccw)
    direction; boundary construction never needs that, but hand-built
    cycles may. kind classifies the cycle on a union-of-disks boundary:
    OUTER encloses disks, HOLE bounds a hole of the union.
    """

    arcs: tuple[Arc, ...]
    reversed_flags: tuple[bool, ...] = ()
    kind: str = OUTER

    def __post_init__(self):
        if not self.arcs:
            raise ValueError("cycle needs at least one arc")
        if not self.reversed_flags:
            object.__setattr__(self, "reversed_flags", (False,) * len(self.arcs))
        if len(self.reversed_flags) != len(self.arcs):
            raise ValueError("reversed_flags length mismatch")
        if self.kind not in (OUTER, HOLE):
            raise ValueError(f"unknown cycle kind: {self.kind}")

    def __len__(self) -> int:
        return len(self.arcs)

    def traversal_start(self, i: int) -> Point:
        arc = self.arcs[i]
        return arc.end_point() if self.reversed_flags[i] else arc.start_point()

    def traversal_end(self, i: int) -> Point:
        arc = self.arcs[i]
        return arc.start_point() if self.reversed_flags[i] else arc.end_point()

    def junctions(self) -> tuple[Point, ...]:
        """Weld points, one per arc: the traversal start of each arc."""
        return tuple(self.traversal_start(i) for i in range(len(self.arcs)))

    def canonical_key(self) -> Point:
        if len(self.arcs) == 1 and self.arcs[0].full_circle:
            return self.arcs[0].center
        return min(self.junctions())


def circle_circle_intersections(
    c1: Point,
    r1: float,
    c2: Point,
    r2: float,
    policy: SidePolicy = DEFAULT_POLICY,
) -> tuple[tuple[Point, ...], bool]:
    """All common points of two circles, sorted lexicographically.

    Returns (points, tangent). A tangency (outer or inner, decided
    within tau_isect) yields exactly one point and tangent=True.
    Raises IdenticalCircles when centers and radii coincide within
    tau_isect.
    """
    if r1 <= 0 or r2 <= 0:
        raise ValueError("radii must be positive")
    dx = c2.x - c1.x
    dy = c2.y - c1.y
    d = math.hypot(dx, dy)
    if d <= policy.tau_isect and abs(r1 - r2) <= policy.tau_isect:
        raise IdenticalCircles(f"circles coincide: center ({c1.x},{c1.y}), radius {r1}")
    rsum = r1 + r2
    rdiff = abs(r1 - r2)
    if abs(d - rsum) <= policy.tau_isect:
        t = r1 / d
        return (Point(c1.x + dx * t, c1.y + dy * t),), True
    if abs(d - rdiff) <= policy.tau_isect:
        t = r1 / d if r1 >= r2 else -r1 / d
        return (Point(c1.x + dx * t, c1.y + dy * t),), True
    if d > rsum or d < rdiff:
        return (), False
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h2 = r1 * r1 - a * a
    h = math.sqrt(h2) if h2 > 0.0 else 0.0
    bx = c1.x + dx * (a / d)
    by = c1.y + dy * (a / d)
    ox = -dy * (h / d)
    oy = dx * (h / d)
    p = Point(bx + ox, by + oy)
    q = Point(bx - ox, by - oy)
    return tuple(sorted((p, q))), False


def point_to_arc_distance(p: Point, arc: Arc) -> float:
    """Exact minimum Euclidean distance from p to the arc's point set.

    Radial clamp when the angle of p falls inside the sweep, otherwise
    the nearer endpoint. The arc center itself is at distance radius
    either way, so no special case is needed there.
    """
    dx = p.x - arc.center.x
    dy = p.y - arc.center.y
    d = math.hypot(dx, dy)
    radial = abs(d - arc.radius)
    if arc.full_circle:
        return radial
    theta = math.atan2(dy, dx) % TWO_PI
    if arc.angle_offset(theta) <= arc.sweep:
        return radial
    return min(
        point_distance(p, arc.start_point()),
        point_distance(p, arc.end_point()),
    )


def _rational_direction(rng: random.Random) -> tuple[float, float]:
    """Unit direction with random rational slope num/den, random quadrant."""
    num = rng.randint(1, 997)
    den = rng.randint(1, 997)
    sx = 1.0 if rng.random() < 0.5 else -1.0
    sy = 1.0 if rng.random() < 0.5 else -1.0
    norm = math.hypot(den, num)
    return sx * den / norm, sy * num / norm


def _arc_ray_crossings(p: Point, ux: float, uy: float, arc: Arc, policy: SidePolicy) -> int:
    """Number of crossings of the ray p + t*(ux,uy), t > 0, with the arc.

    Raises DegenerateRay when a hit falls within the angular safety
    margin of an arc endpoint: such hits could be double-counted (or
    missed) across the weld shared with the adjacent arc, so the caller
    retries with a fresh direction. A tangent graze strictly interior
    to the sweep contributes 0 or 2 hits, which is parity-safe.
    """
    mx = p.x - arc.center.x
    my = p.y - arc.center.y
    b = mx * ux + my * uy
    c0 = mx * mx + my * my - arc.radius * arc.radius
    disc = b * b - c0
    if disc < 0.0:
        return 0
    sq = math.sqrt(disc)
    margin = 1e-12 + policy.tau_isect / arc.radius
    count = 0
    for t in (-b - sq, -b + sq):
        if t <= 0.0:
            continue
        hx = p.x + t * ux - arc.center.x
        hy = p.y + t * uy - arc.center.y
        theta = math.atan2(hy, hx) % TWO_PI
        if arc.full_circle:
            count += 1
            continue
        a = arc.angle_offset(theta)
        sweep = arc.sweep
        if a <= margin or a >= TWO_PI - margin or abs(a - sweep) <= margin:
            raise DegenerateRay(f"ray hit within {margin} of an arc endpoint")
        if a < sweep:
            count += 1
    return count


def point_in_cycle(
    p: Point,
    cycle: ArcCycle,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> str:
    """Classify p against the cycle: INSIDE (bounded side), OUTSIDE, or
    ON_CURVE when within tau_dist * (1 + radius) of some arc.

    Side classification casts a ray with a seeded random rational slope
    and takes crossing parity; degenerate rays (endpoint grazes) are
    retried up to 32 times before RobustnessExhausted.
    """
    for arc in cycle.arcs:
        if point_to_arc_distance(p, arc) <= policy.on_curve_tol(arc.radius):
            return ON_CURVE
    rng = random.Random(seed)
    for _ in range(32):
        ux, uy = _rational_direction(rng)
        parity = 0
        try:
            for arc in cycle.arcs:
                parity += _arc_ray_crossings(p, ux, uy, arc, policy)
        except DegenerateRay:
            continue
        return INSIDE if parity % 2 == 1 else OUTSIDE
    raise RobustnessExhausted(
        f"no robust ray direction found for point ({p.x}, {p.y}) after 32 retries"
    )


def _same_circle(a: Arc, b: Arc, policy: SidePolicy) -> bool:
    return (
        point_distance(a.center, b.center) <= policy.tau_isect
        and abs(a.radius - b.radius) <= policy.tau_isect
    )


def _same_circle_common_points(a: Arc, b: Arc, policy: SidePolicy) -> list[Point]:
    """Representative common points of two arcs on one circle.

    A shared interval of positive angular measure is reported through
    its midpoint; touching endpoints are reported exactly.
    """
    tol = policy.tau_isect / a.radius + 1e-12
    if a.full_circle and b.full_circle:
        return [a.point_at(0.0)]
    if a.full_circle:
        return [b.midpoint()]
    if b.full_circle:
        return [a.midpoint()]
    wa = a.sweep
    wb = b.sweep
    t0 = (b.start_angle - a.start_angle) % TWO_PI
    spans = [(t0, t0 + wb)]
    if t0 + wb > TWO_PI:
        spans = [(t0, TWO_PI), (0.0, t0 + wb - TWO_PI)]
    common = []
    for lo, hi in spans:
        lo2 = max(lo, 0.0)
        hi2 = min(hi, wa)
        if hi2 - lo2 >= -tol:
            common.append(a.point_at(a.start_angle + 0.5 * (lo2 + hi2)))
    return common


def _arc_common_points(a: Arc, b: Arc, policy: SidePolicy) -> list[Point]:
    if _same_circle(a, b, policy):
        return _same_circle_common_points(a, b, policy)
    try:
        pts, _ = circle_circle_intersections(a.center, a.radius, b.center, b.radius, policy)
    except IdenticalCircles:
        return _same_circle_common_points(a, b, policy)
    slack_a = policy.tau_isect / a.radius + 1e-12
    slack_b = policy.tau_isect / b.radius + 1e-12
    out = []
    for p in pts:
        ta = math.atan2(p.y - a.center.y, p.x - a.center.x)
        tb = math.atan2(p.y - b.center.y, p.x - b.center.x)
        if a.contains_angle(ta, slack_a) and b.contains_angle(tb, slack_b):
            out.append(p)
    return out


def cycle_is_simple(
    cycle: ArcCycle,
    policy: SidePolicy = DEFAULT_POLICY,
) -> tuple[bool, tuple[tuple[int, int, Point], ...]]:
    """Check that the cycle is a simple closed curve.

    Requires the chain to weld within tau_join (NotClosed otherwise).
    Violations are (i, j, point) triples: either two arcs meet away
    from their shared weld, or two junction points of the traversal
    coincide (a pinch, as in a figure-eight).
    """
    arcs = cycle.arcs
    n = len(arcs)
    single_full = n == 1 and arcs[0].full_circle
    if not single_full:
        for i in range(n):
            gap = point_distance(cycle.traversal_end(i), cycle.traversal_start((i + 1) % n))
            if gap > policy.tau_join:
                raise NotClosed(f"arc {i} ends {gap} away from arc {(i + 1) % n}")

    violations: list[tuple[int, int, Point]] = []
    junctions = cycle.junctions()
    if not single_full:
        for i in range(n):
            for j in range(i + 1, n):
                if point_distance(junctions[i], junctions[j]) <= policy.tau_join:
                    violations.append((i, j, junctions[i]))

    for i in range(n):
        for j in range(i + 1, n):
            welds = []
            if (i + 1) % n == j:
                welds.append(junctions[j])
            if (j + 1) % n == i:
                welds.append(junctions[i])
            for p in _arc_common_points(arcs[i], arcs[j], policy):
                if all(point_distance(p, w) > policy.tau_join for w in welds):
                    violations.append((i, j, p))
    return len(violations) == 0, tuple(violations)


def sample_arc_angles(arc: Arc, count: int) -> list[float]:
    """Midpoint-rule sample angles covering the sweep."""
    sweep = arc.sweep
    return [arc.start_angle + sweep * (k + 0.5) / count for k in range(count)]
