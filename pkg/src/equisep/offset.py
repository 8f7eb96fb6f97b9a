"""Boundary of the union of epsilon-disks as circular-arc cycles, and
the face decomposition of the complement.

Reference O(n^2) pipeline:

1. intersect every pair of epsilon-circles once and register the
   intersection points as shared weld vertices, so both circles see
   bit-identical coordinates;
2. split each circle at its vertices and discard sub-arcs whose
   midpoint lies strictly inside some other disk. Sub-arcs are split at
   every crossing, so the midpoint side is the side of the entire
   sub-arc and the test is exact;
3. weld surviving arcs end to end. A tangency vertex (two centers at
   exactly twice the radius) carries four arc ends; the continuation
   switches circles there, which keeps the disk union on a consistent
   side of each walk. Any walk that still revisits a vertex is split at
   the repeated vertex, so a pinch is never interior to one emitted
   cycle: a figure-eight comes out as two simple cycles;
4. classify each cycle OUTER/HOLE by whether a generating disk center
   lies inside it, and order cycles canonically by smallest weld point
   (center for full circles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AmbiguousNesting,
    EmptyInput,
    NotInComplement,
    OnBoundary,
    ToleranceCollapse,
)
from .geometry import (
    HOLE,
    INSIDE,
    ON_CURVE,
    OUTER,
    TWO_PI,
    Arc,
    ArcCycle,
    DEFAULT_POLICY,
    Point,
    PointSet,
    SidePolicy,
    circle_circle_intersections,
    point_in_cycle,
)


@dataclass(frozen=True)
class OffsetBoundary:
    """All boundary cycles of the union of epsilon-disks around source.

    arcs_per_source counts emitted arcs per source point (a point deep
    inside the union contributes none); dropped_pinch_points counts
    tangency points swallowed by the union interior, which belong to
    the exact level set but to no face boundary.
    """

    epsilon: float
    source: PointSet
    cycles: tuple[ArcCycle, ...]
    arcs_per_source: tuple[int, ...]
    dropped_pinch_points: int = 0

    def outer_cycles(self) -> tuple[ArcCycle, ...]:
        return tuple(c for c in self.cycles if c.kind == OUTER)

    def hole_cycles(self) -> tuple[ArcCycle, ...]:
        return tuple(c for c in self.cycles if c.kind == HOLE)


@dataclass(frozen=True)
class Face:
    """One component of the complement of the closed neighbourhood.

    boundary_cycle indexes the cycle bounding the face from outside;
    the unbounded face has no such single cycle and stores None.
    """

    face_id: int
    bounded: bool
    boundary_cycle: int | None


@dataclass(frozen=True)
class FaceGraph:
    """Nesting forest of the boundary cycles plus the face list.

    parent[i] is the index of the cycle immediately enclosing cycle i
    (None for roots); faces[0] is always the unbounded face.
    """

    boundary: OffsetBoundary
    parent: tuple[int | None, ...]
    depth: tuple[int, ...]
    faces: tuple[Face, ...]

    def face_of_hole(self, cycle_index: int) -> Face:
        for f in self.faces:
            if f.boundary_cycle == cycle_index:
                return f
        raise KeyError(f"cycle {cycle_index} bounds no face")


@dataclass(frozen=True)
class _SubArc:
    circle: int
    a0: float
    a1: float
    v0: int
    v1: int
    loop: bool  # single split point: sweeps the full turn back to v0


class _VertexRegistry:
    """Dedupes intersection points; merging within tau_isect is legal
    only for the same circle pair. Two points closer than tau_isect
    that involve a shared circle mean three circles pass through one
    point, which the arc splitter cannot represent."""

    def __init__(self, policy: SidePolicy):
        self.policy = policy
        self.points: list[Point] = []
        self.pairs: list[tuple[int, int]] = []
        self.tangent: list[bool] = []
        self._cells: dict[tuple[int, int], list[int]] = {}

    def _cell(self, p: Point) -> tuple[int, int]:
        s = self.policy.tau_isect
        return (int(math.floor(p.x / s)), int(math.floor(p.y / s)))

    def add(self, p: Point, pair: tuple[int, int], tangent: bool) -> int:
        cx, cy = self._cell(p)
        tol = self.policy.tau_isect
        for nx in (cx - 1, cx, cx + 1):
            for ny in (cy - 1, cy, cy + 1):
                for vid in self._cells.get((nx, ny), ()):
                    q = self.points[vid]
                    if math.hypot(p.x - q.x, p.y - q.y) <= tol:
                        other = self.pairs[vid]
                        if set(other) & set(pair):
                            circles = sorted(set(other) | set(pair))
                            raise ToleranceCollapse(
                                "intersection points coincide within tolerance "
                                f"for circles {circles}",
                                circles=circles,
                            )
        vid = len(self.points)
        self.points.append(p)
        self.pairs.append(pair)
        self.tangent.append(tangent)
        self._cells.setdefault((cx, cy), []).append(vid)
        return vid


def offset_boundary(
    A: PointSet,
    epsilon: float,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> OffsetBoundary:
    """Exact boundary of the union of closed epsilon-disks around A."""
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    pts = A.points
    n = len(pts)
    if n == 0:
        raise EmptyInput("offset_boundary needs a nonempty set")

    registry = _VertexRegistry(policy)
    events: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    neighbors: list[list[int]] = [[] for _ in range(n)]
    reach = 2.0 * epsilon + policy.tau_isect
    for i in range(n):
        for j in range(i + 1, n):
            if math.hypot(pts[j].x - pts[i].x, pts[j].y - pts[i].y) > reach:
                continue
            common, tangent = circle_circle_intersections(
                pts[i], epsilon, pts[j], epsilon, policy
            )
            if not common:
                continue
            neighbors[i].append(j)
            neighbors[j].append(i)
            for p in common:
                vid = registry.add(p, (i, j), tangent)
                events[i].append(((math.atan2(p.y - pts[i].y, p.x - pts[i].x)) % TWO_PI, vid))
                events[j].append(((math.atan2(p.y - pts[j].y, p.x - pts[j].x)) % TWO_PI, vid))

    inside_thr = epsilon - policy.tau_dist * (1.0 + epsilon)
    inside_thr2 = inside_thr * inside_thr

    subarcs: list[_SubArc] = []
    standalone: list[int] = []  # circles with no events: entire circle is boundary
    for i in range(n):
        ev = sorted(events[i])
        if not ev:
            standalone.append(i)
            continue
        m = len(ev)
        for k in range(m):
            a0, v0 = ev[k]
            a1, v1 = ev[(k + 1) % m]
            loop = m == 1
            sweep = TWO_PI if loop else (a1 - a0) % TWO_PI
            mid_angle = a0 + 0.5 * sweep
            mx = pts[i].x + epsilon * math.cos(mid_angle)
            my = pts[i].y + epsilon * math.sin(mid_angle)
            covered = False
            for j in neighbors[i]:
                dx = mx - pts[j].x
                dy = my - pts[j].y
                if dx * dx + dy * dy < inside_thr2:
                    covered = True
                    break
            if not covered:
                subarcs.append(_SubArc(i, a0, a1, v0, v1, loop))

    successor = _weld(subarcs, registry, pts)
    walks = _walks(subarcs, successor)
    walks = _split_at_repeated_vertices(walks, subarcs)

    cycles: list[ArcCycle] = []
    for i in standalone:
        arc = Arc(center=pts[i], radius=epsilon, start_angle=0.0, end_angle=0.0,
                  full_circle=True, center_index=i)
        cycles.append(ArcCycle(arcs=(arc,), kind=OUTER))
    for walk in walks:
        cycles.append(_emit_cycle(walk, subarcs, registry, pts, epsilon, policy, seed))

    cycles = [_classify(c, policy, seed) for c in cycles]
    cycles.sort(key=_cycle_sort_key)

    counts = [0] * n
    for c in cycles:
        for arc in c.arcs:
            counts[arc.center_index] += 1
    used_vertices = {s.v0 for s in subarcs} | {s.v1 for s in subarcs}
    dropped = sum(
        1
        for vid in range(len(registry.points))
        if registry.tangent[vid] and vid not in used_vertices
    )
    return OffsetBoundary(
        epsilon=epsilon,
        source=A,
        cycles=tuple(cycles),
        arcs_per_source=tuple(counts),
        dropped_pinch_points=dropped,
    )


def _weld(subarcs, registry, pts):
    incoming: dict[int, list[int]] = {}
    outgoing: dict[int, list[int]] = {}
    for idx, s in enumerate(subarcs):
        outgoing.setdefault(s.v0, []).append(idx)
        incoming.setdefault(s.v1, []).append(idx)
    successor: dict[int, int] = {}
    for v in sorted(set(incoming) | set(outgoing)):
        ins = incoming.get(v, [])
        outs = outgoing.get(v, [])
        if len(ins) != len(outs) or len(ins) not in (1, 2):
            raise ToleranceCollapse(
                f"weld vertex {registry.points[v]} has {len(ins)} incoming and "
                f"{len(outs)} outgoing arc ends",
                circles=sorted({subarcs[x].circle for x in ins + outs}),
            )
        if len(ins) == 1:
            successor[ins[0]] = outs[0]
            continue
        # tangency: two circles, one in + one out each; continue on the
        # other circle so each walk keeps the union on one side
        in_circles = {subarcs[x].circle for x in ins}
        out_circles = {subarcs[x].circle for x in outs}
        if len(in_circles) != 2 or in_circles != out_circles:
            raise ToleranceCollapse(
                f"tangency vertex {registry.points[v]} mixes circles "
                f"{sorted(in_circles | out_circles)}",
                circles=sorted(in_circles | out_circles),
            )
        for x in ins:
            nxt = [y for y in outs if subarcs[y].circle != subarcs[x].circle]
            successor[x] = nxt[0]
    return successor


def _walks(subarcs, successor):
    unused = set(range(len(subarcs)))
    walks = []
    while unused:
        start = min(unused)
        walk = [start]
        unused.remove(start)
        cur = successor[start]
        while cur != start:
            walk.append(cur)
            unused.remove(cur)
            cur = successor[cur]
        walks.append(walk)
    return walks


def _split_at_repeated_vertices(walks, subarcs):
    """Split closed walks at any vertex visited twice, so that every
    emitted cycle traverses each of its weld points exactly once."""
    out = []
    stack = list(walks)
    while stack:
        w = stack.pop()
        seen: dict[int, int] = {}
        rep = None
        for pos, idx in enumerate(w):
            v = subarcs[idx].v0
            if v in seen:
                rep = (seen[v], pos)
                break
            seen[v] = pos
        if rep is None:
            out.append(w)
            continue
        k, l = rep
        stack.append(w[k:l])
        stack.append(w[:k] + w[l:])
    return sorted(out)


def _emit_cycle(walk, subarcs, registry, pts, epsilon, policy, seed):
    if len(walk) == 1 and subarcs[walk[0]].loop:
        s = subarcs[walk[0]]
        arc = Arc(center=pts[s.circle], radius=epsilon, start_angle=s.a0,
                  end_angle=s.a0, full_circle=True, center_index=s.circle)
        return ArcCycle(arcs=(arc,), kind=OUTER)
    # rotate to start at the lexicographically smallest weld point
    keys = [registry.points[subarcs[idx].v0] for idx in walk]
    shift = keys.index(min(keys))
    walk = walk[shift:] + walk[:shift]
    arcs = []
    for idx in walk:
        s = subarcs[idx]
        arcs.append(Arc(center=pts[s.circle], radius=epsilon, start_angle=s.a0,
                        end_angle=s.a1, full_circle=False, center_index=s.circle))
    return ArcCycle(arcs=tuple(arcs), kind=OUTER)


def _classify(cycle: ArcCycle, policy: SidePolicy, seed: int) -> ArcCycle:
    """OUTER iff the generating disk center lies inside the cycle: disk
    centers sit at distance radius on the union side of their arcs, so
    the parity test is robust there."""
    for arc in cycle.arcs:
        verdict = point_in_cycle(arc.center, cycle, policy, seed)
        if verdict == ON_CURVE:
            continue
        kind = OUTER if verdict == INSIDE else HOLE
        return ArcCycle(arcs=cycle.arcs, reversed_flags=cycle.reversed_flags, kind=kind)
    raise AmbiguousNesting("every arc center lies on its own cycle within tolerance")


def _cycle_sort_key(c: ArcCycle):
    k = c.canonical_key()
    a = c.arcs[0]
    return (k.x, k.y, a.center.x, a.center.y, a.start_angle, len(c.arcs))


def face_graph(
    ob: OffsetBoundary,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> FaceGraph:
    """Containment forest of the cycles plus the complement faces: the
    unbounded face, and one bounded face per HOLE cycle interior."""
    cycles = ob.cycles
    k = len(cycles)
    contains = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            contains[j][i] = _representative_inside(cycles[i], cycles[j], policy, seed)
    depth = [sum(1 for j in range(k) if contains[j][i]) for i in range(k)]
    parent: list[int | None] = [None] * k
    for i in range(k):
        best = None
        for j in range(k):
            if contains[j][i] and (best is None or depth[j] > depth[best]):
                best = j
        parent[i] = best
    faces = [Face(face_id=0, bounded=False, boundary_cycle=None)]
    for idx, c in enumerate(cycles):
        if c.kind == HOLE:
            faces.append(Face(face_id=len(faces), bounded=True, boundary_cycle=idx))
    return FaceGraph(boundary=ob, parent=tuple(parent), depth=tuple(depth),
                     faces=tuple(faces))


def _representative_inside(inner: ArcCycle, outer: ArcCycle, policy, seed) -> bool:
    """Whether a representative point of `inner` lies inside `outer`,
    retrying across arc midpoints when one lands on `outer`."""
    attempts = 0
    for arc in inner.arcs:
        if attempts >= 8:
            break
        verdict = point_in_cycle(arc.midpoint(), outer, policy, seed)
        attempts += 1
        if verdict == ON_CURVE:
            continue
        return verdict == INSIDE
    raise AmbiguousNesting(
        f"no representative of a cycle could be classified after {attempts} attempts"
    )


def face_of_point(
    q: Point,
    fg: FaceGraph,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> int:
    """Face id of the complement face containing q.

    Requires rho(q, source) > epsilon + tau; the innermost cycle whose
    bounded side contains q is a HOLE cycle exactly when q sits in a
    bounded face, otherwise q is in the unbounded face.
    """
    ob = fg.boundary
    eps = ob.epsilon
    rho = min(math.hypot(q.x - p.x, q.y - p.y) for p in ob.source.points)
    if rho <= eps + policy.on_curve_tol(eps):
        raise NotInComplement(
            f"point ({q.x}, {q.y}) is at distance {rho} <= epsilon from the source"
        )
    containing = []
    for idx, c in enumerate(ob.cycles):
        verdict = point_in_cycle(q, c, policy, seed)
        if verdict == ON_CURVE:
            raise OnBoundary(f"point ({q.x}, {q.y}) lies on cycle {idx} within tolerance")
        if verdict == INSIDE:
            containing.append(idx)
    if not containing:
        return 0
    innermost = max(containing, key=lambda i: fg.depth[i])
    if ob.cycles[innermost].kind != HOLE:
        raise NotInComplement(
            f"parity places ({q.x}, {q.y}) inside the disk union, but its "
            f"distance to the source is {rho} > epsilon; tolerances disagree"
        )
    return fg.face_of_hole(innermost).face_id
