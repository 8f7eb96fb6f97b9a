"""Grid oracle: brute-force distance fields, complement component
labeling, marching-squares contours, and Hausdorff comparison.

This module validates the exact arc constructions through a second,
unrelated computation path: distances are minimized by brute force at
every cell center, components come from flood fill, and contours from
marching squares. It deliberately shares no code with the offset or
separation modules (only the primitive point/arc types).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import CellBudgetExceeded, EquisepError
from .geometry import (
    ArcCycle,
    DEFAULT_POLICY,
    INSIDE,
    Point,
    PointSet,
    SidePolicy,
    TWO_PI,
    point_in_cycle,
    point_to_arc_distance,
)

CELL_BUDGET = 4_000_000

_FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True, eq=False)
class DistanceGrid:
    """Exact distance field sampled at cell centers.

    origin is the lower-left corner of the grid footprint; cell (i, j)
    has its center at origin + ((i+0.5)h, (j+0.5)h) and its value in
    values[j, i] (row-major, rows along y). band flags cells whose
    value is within h*sqrt(2)/2 of epsilon: cell-center sampling cannot
    certify which side of the level set such a cell is on. source is
    kept so saddle cells can query the exact field anywhere.
    """

    origin: Point
    cell_size: float
    width: int
    height: int
    epsilon: float
    source: PointSet
    values: np.ndarray
    band: np.ndarray

    def xs(self) -> np.ndarray:
        return self.origin.x + (np.arange(self.width) + 0.5) * self.cell_size

    def ys(self) -> np.ndarray:
        return self.origin.y + (np.arange(self.height) + 0.5) * self.cell_size


@dataclass(frozen=True, eq=False)
class GridComponents:
    """Flood-fill labeling of the complement cells (value > epsilon,
    band excluded). Label 0 is unlabeled; exactly one label touches the
    grid border and is the unbounded component."""

    labels: np.ndarray
    unbounded_label: int
    bounded_labels: tuple[int, ...]


def build_distance_grid(
    A: PointSet,
    epsilon: float,
    h: float | None = None,
) -> DistanceGrid:
    """Brute-force distance grid covering the bounding box of A
    expanded by epsilon + 4h on every side.

    With h=None the default epsilon/50 is used and coarsened if needed
    to fit the cell budget; an explicit h that exceeds the budget
    raises CellBudgetExceeded.
    """
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    pts = A.points
    min_x = min(p.x for p in pts)
    max_x = max(p.x for p in pts)
    min_y = min(p.y for p in pts)
    max_y = max(p.y for p in pts)

    def cell_counts(step):
        margin = epsilon + 4.0 * step
        w = int(math.ceil((max_x - min_x + 2.0 * margin) / step))
        hgt = int(math.ceil((max_y - min_y + 2.0 * margin) / step))
        return max(w, 1), max(hgt, 1)

    explicit = h is not None
    if h is None:
        h = epsilon / 50.0
    if not (h > 0 and math.isfinite(h)):
        raise ValueError(f"cell size must be positive, got {h}")
    w, hgt = cell_counts(h)
    while w * hgt > CELL_BUDGET:
        if explicit:
            raise CellBudgetExceeded(
                f"{w}x{hgt} = {w * hgt} cells exceed the budget of {CELL_BUDGET}"
            )
        h *= 1.125
        w, hgt = cell_counts(h)

    margin = epsilon + 4.0 * h
    origin = Point(min_x - margin, min_y - margin)
    xs = origin.x + (np.arange(w) + 0.5) * h
    ys = origin.y + (np.arange(hgt) + 0.5) * h
    gx = xs[np.newaxis, :]
    gy = ys[:, np.newaxis]
    values = None
    for p in pts:
        dx = gx - p.x
        dy = gy - p.y
        d = np.sqrt(dx * dx + dy * dy)
        values = d if values is None else np.minimum(values, d)
    band = np.abs(values - epsilon) <= h * math.sqrt(2.0) / 2.0
    return DistanceGrid(
        origin=origin, cell_size=h, width=w, height=hgt,
        epsilon=epsilon, source=A, values=values, band=band,
    )


def grid_components(g: DistanceGrid, epsilon: float) -> GridComponents:
    """4-connected flood fill of the certain complement cells."""
    mask = (g.values > epsilon) & ~g.band
    labels, count = ndimage.label(mask, structure=_FOUR_CONNECTED)
    border = np.concatenate(
        [labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]
    )
    border_labels = sorted(set(border.tolist()) - {0})
    if len(border_labels) != 1:
        raise EquisepError(
            f"expected one unbounded grid component, found {len(border_labels)}; "
            "the grid margin should make the border frame one certain region"
        )
    unbounded = border_labels[0]
    bounded = tuple(l for l in range(1, count + 1) if l != unbounded)
    return GridComponents(labels=labels, unbounded_label=unbounded, bounded_labels=bounded)


# marching squares: edge pairs per corner-occupancy case, corners
# ordered c00 (bit 0), c10 (bit 1), c11 (bit 2), c01 (bit 3), edges
# named B(ottom), R(ight), T(op), L(eft); cases 5 and 10 are saddles
_MS_CASES = {
    1: [("L", "B")],
    2: [("B", "R")],
    4: [("R", "T")],
    8: [("T", "L")],
    3: [("L", "R")],
    6: [("B", "T")],
    12: [("R", "L")],
    9: [("B", "T")],
    7: [("T", "L")],
    11: [("R", "T")],
    13: [("B", "R")],
    14: [("L", "B")],
}


def _exact_distance(x: float, y: float, pts) -> float:
    return min(math.sqrt((x - p.x) ** 2 + (y - p.y) ** 2) for p in pts)


def grid_boundary(g: DistanceGrid, epsilon: float) -> tuple[np.ndarray, ...]:
    """Marching-squares contours of the epsilon level set as closed
    polylines (vertex arrays; the last vertex connects to the first).

    Crossing positions are linearly interpolated along cell edges;
    saddle cells are disambiguated by evaluating the exact distance at
    the cell center instead of a fixed convention.
    """
    v = g.values
    inside = v <= epsilon
    xs = g.xs()
    ys = g.ys()

    c00 = inside[:-1, :-1]
    c10 = inside[:-1, 1:]
    c11 = inside[1:, 1:]
    c01 = inside[1:, :-1]
    case = (
        c00.astype(np.int8)
        | (c10.astype(np.int8) << 1)
        | (c11.astype(np.int8) << 2)
        | (c01.astype(np.int8) << 3)
    )
    mixed = (case != 0) & (case != 15)
    rows, cols = np.nonzero(mixed)

    def interp(x0, y0, v0, x1, y1, v1):
        t = (epsilon - v0) / (v1 - v0)
        return (x0 + t * (x1 - x0), y0 + t * (y1 - y0))

    segments = []  # ((edge_key_a, point_a), (edge_key_b, point_b))
    for j, i in zip(rows.tolist(), cols.tolist()):
        x0, x1 = xs[i], xs[i + 1]
        y0, y1 = ys[j], ys[j + 1]
        vals = {
            "00": v[j, i], "10": v[j, i + 1],
            "11": v[j + 1, i + 1], "01": v[j + 1, i],
        }
        edge_pts = {}
        if inside[j, i] != inside[j, i + 1]:
            edge_pts["B"] = (("h", j, i), interp(x0, y0, vals["00"], x1, y0, vals["10"]))
        if inside[j, i + 1] != inside[j + 1, i + 1]:
            edge_pts["R"] = (("v", j, i + 1), interp(x1, y0, vals["10"], x1, y1, vals["11"]))
        if inside[j + 1, i] != inside[j + 1, i + 1]:
            edge_pts["T"] = (("h", j + 1, i), interp(x0, y1, vals["01"], x1, y1, vals["11"]))
        if inside[j, i] != inside[j + 1, i]:
            edge_pts["L"] = (("v", j, i), interp(x0, y0, vals["00"], x0, y1, vals["01"]))

        c = int(case[j, i])
        if c in _MS_CASES:
            pairs = _MS_CASES[c]
        else:
            center_x = 0.5 * (x0 + x1)
            center_y = 0.5 * (y0 + y1)
            center_inside = _exact_distance(center_x, center_y, g.source.points) <= epsilon
            if c == 5:  # c00 and c11 inside
                pairs = [("B", "R"), ("T", "L")] if center_inside else [("L", "B"), ("R", "T")]
            else:  # c == 10: c10 and c01 inside
                pairs = [("L", "B"), ("R", "T")] if center_inside else [("B", "R"), ("T", "L")]
        for a, b in pairs:
            segments.append((edge_pts[a], edge_pts[b]))

    return _stitch_loops(segments)


def _stitch_loops(segments) -> tuple[np.ndarray, ...]:
    """Join marching-squares segments into closed vertex loops; every
    edge crossing is shared by exactly two segments."""
    by_edge: dict[tuple, list[int]] = {}
    coords: dict[tuple, tuple[float, float]] = {}
    for idx, ((ka, pa), (kb, pb)) in enumerate(segments):
        by_edge.setdefault(ka, []).append(idx)
        by_edge.setdefault(kb, []).append(idx)
        coords[ka] = pa
        coords[kb] = pb
    for key, inc in by_edge.items():
        if len(inc) != 2:
            raise EquisepError(f"open contour at grid edge {key}: {len(inc)} segments")
    loops = []
    used = [False] * len(segments)
    for start_idx in range(len(segments)):
        if used[start_idx]:
            continue
        (ka, _), (kb, _) = segments[start_idx]
        used[start_idx] = True
        loop_keys = [ka, kb]
        cur = kb
        prev_seg = start_idx
        while True:
            nxt = [s for s in by_edge[cur] if s != prev_seg][0]
            if used[nxt]:
                break
            used[nxt] = True
            (k1, _), (k2, _) = segments[nxt]
            cur = k2 if k1 == cur else k1
            prev_seg = nxt
            if cur == loop_keys[0]:
                break
            loop_keys.append(cur)
        loops.append(np.array([coords[k] for k in loop_keys], dtype=float))
    loops.sort(key=lambda arr: (arr.min(axis=0).tolist(), len(arr)))
    return tuple(loops)


def polyline_length(polyline: np.ndarray) -> float:
    closed = np.vstack([polyline, polyline[:1]])
    return float(np.sum(np.hypot(np.diff(closed[:, 0]), np.diff(closed[:, 1]))))


def _points_to_segments_min(px: np.ndarray, py: np.ndarray,
                            polyline: np.ndarray) -> np.ndarray:
    """Min distance from each point to the closed polyline, exact
    point-segment distances, chunked to bound memory."""
    closed = np.vstack([polyline, polyline[:1]])
    ax, ay = closed[:-1, 0], closed[:-1, 1]
    bx, by = closed[1:, 0], closed[1:, 1]
    ex, ey = bx - ax, by - ay
    elen2 = ex * ex + ey * ey
    elen2 = np.where(elen2 == 0.0, 1.0, elen2)
    best = np.full(px.shape, np.inf)
    chunk = 512
    for s in range(0, ax.size, chunk):
        e = slice(s, s + chunk)
        dx = px[:, None] - ax[None, e]
        dy = py[:, None] - ay[None, e]
        t = np.clip((dx * ex[None, e] + dy * ey[None, e]) / elen2[None, e], 0.0, 1.0)
        qx = dx - t * ex[None, e]
        qy = dy - t * ey[None, e]
        best = np.minimum(best, np.sqrt(qx * qx + qy * qy).min(axis=1))
    return best


def compare_curves(cycle: ArcCycle, polyline: np.ndarray,
                   samples_per_arc: int = 1024) -> float:
    """Symmetric Hausdorff distance between an exact arc cycle and a
    closed polyline: dense arc samples against exact point-segment
    distances one way, polyline vertices against exact point-to-arc
    distances the other."""
    sample_x = []
    sample_y = []
    for arc in cycle.arcs:
        sweep = arc.sweep
        thetas = arc.start_angle + sweep * (np.arange(samples_per_arc) + 0.5) / samples_per_arc
        sample_x.append(arc.center.x + arc.radius * np.cos(thetas))
        sample_y.append(arc.center.y + arc.radius * np.sin(thetas))
    px = np.concatenate(sample_x)
    py = np.concatenate(sample_y)
    d_arc_to_poly = float(_points_to_segments_min(px, py, polyline).max())

    d_poly_to_arc = 0.0
    for vx, vy in polyline:
        p = Point(float(vx), float(vy))
        d = min(point_to_arc_distance(p, arc) for arc in cycle.arcs)
        if d > d_poly_to_arc:
            d_poly_to_arc = d
    return max(d_arc_to_poly, d_poly_to_arc)


def grid_cycle_parity(
    g: DistanceGrid,
    cycle: ArcCycle,
    policy: SidePolicy = DEFAULT_POLICY,
) -> tuple[np.ndarray, np.ndarray]:
    """Inside/outside verdict of every cell center against one cycle,
    computed by a horizontal row sweep independent of the seeded
    point-in-cycle predicate.

    Returns (inside, suspicious_rows). Rows flagged suspicious had a
    crossing too close to an arc endpoint or a tangent row and must be
    re-checked with the exact scalar predicate.
    """
    xs = g.xs()
    ys = g.ys()
    inside = np.zeros((g.height, g.width), dtype=bool)
    suspicious = np.zeros(g.height, dtype=bool)
    crossings: list[list[float]] = [[] for _ in range(g.height)]
    for arc in cycle.arcs:
        cx, cy, r = arc.center.x, arc.center.y, arc.radius
        j_lo = int(np.searchsorted(ys, cy - r))
        j_hi = int(np.searchsorted(ys, cy + r))
        margin = 1e-12 + policy.tau_isect / r
        for j in range(j_lo, min(j_hi, g.height)):
            dy = ys[j] - cy
            off2 = r * r - dy * dy
            if off2 <= 0.0:
                continue
            off = math.sqrt(off2)
            if off <= policy.on_curve_tol(r):
                suspicious[j] = True
                continue
            for sign in (-1.0, 1.0):
                theta = math.atan2(dy, sign * off) % TWO_PI
                if not arc.full_circle:
                    a = arc.angle_offset(theta)
                    sweep = arc.sweep
                    if a <= margin or a >= TWO_PI - margin or abs(a - sweep) <= margin:
                        suspicious[j] = True
                        continue
                    if a >= sweep:
                        continue
                crossings[j].append(cx + sign * off)
    for j in range(g.height):
        if not crossings[j]:
            continue
        arr = np.sort(np.array(crossings[j]))
        right = arr.size - np.searchsorted(arr, xs, side="right")
        inside[j, :] = (right % 2) == 1
    return inside, suspicious


def cycle_side_signatures(
    g: DistanceGrid,
    comps: GridComponents,
    cycles,
    policy: SidePolicy = DEFAULT_POLICY,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell inside/outside signature against every cycle, encoded
    as a bitmask array, suspicious rows resolved through the scalar
    predicate. Cells outside the certain complement region carry -1."""
    sig = np.zeros((g.height, g.width), dtype=np.int64)
    xs = g.xs()
    ys = g.ys()
    certain = comps.labels > 0
    for bit, cycle in enumerate(cycles):
        inside, suspicious = grid_cycle_parity(g, cycle, policy)
        for j in np.nonzero(suspicious)[0].tolist():
            for i in np.nonzero(certain[j])[0].tolist():
                verdict = point_in_cycle(Point(float(xs[i]), float(ys[j])), cycle,
                                         policy, seed)
                inside[j, i] = verdict == INSIDE
        sig |= inside.astype(np.int64) << bit
    return np.where(certain, sig, -1), certain
