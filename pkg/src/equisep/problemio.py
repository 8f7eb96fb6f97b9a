"""Problem input parsing: JSON problem files and two-column CSV sets.

Only finite point sets are representable; any non-finite coordinate
(including JSON's Infinity/NaN literals and overflowing exponents) is
rejected at this layer, which is the model restriction standing in for
unbounded inputs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .geometry import DEFAULT_POLICY, PointSet, SidePolicy


@dataclass
class ProblemOptions:
    grid_res: float | None = None
    seed: int = 0
    force: bool = False
    policy: SidePolicy = field(default_factory=SidePolicy)


@dataclass
class ProblemSpec:
    """Validated problem input: optional epsilon, named point sets, and
    run options. duplicates counts exact duplicate points dropped per
    set (a warning, not an error)."""

    epsilon: float | None
    sets: dict[str, PointSet]
    options: ProblemOptions
    duplicates: dict[str, int]


def _reject_constant(token: str):
    raise ParseError(f"non-finite literal {token!r} is not a coordinate")


def _as_finite_float(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ValidationError(f"{where}: non-finite value {value!r}")
    return x


def _build_set(name: str, rows) -> tuple[PointSet, int]:
    if not isinstance(rows, list) or not rows:
        raise ValidationError(f"set {name!r} must be a nonempty list of [x, y] pairs")
    coords = []
    for k, row in enumerate(rows):
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise ValidationError(f"set {name!r} entry {k}: expected [x, y], got {row!r}")
        coords.append((
            _as_finite_float(row[0], f"set {name!r} entry {k} x"),
            _as_finite_float(row[1], f"set {name!r} entry {k} y"),
        ))
    ps = PointSet.from_coords(coords)
    return ps, len(coords) - len(ps)


def _parse_tol(raw, base: SidePolicy) -> SidePolicy:
    if not isinstance(raw, dict):
        raise ValidationError(f"options.tol must be an object, got {raw!r}")
    vals = {"join": base.tau_join, "isect": base.tau_isect, "dist": base.tau_dist}
    for key, value in raw.items():
        if key not in vals:
            raise ValidationError(f"unknown tolerance {key!r} (join, isect, dist)")
        vals[key] = _as_finite_float(value, f"options.tol.{key}")
    try:
        return SidePolicy(tau_join=vals["join"], tau_isect=vals["isect"], tau_dist=vals["dist"])
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def parse_problem(text: str) -> ProblemSpec:
    """Parse and validate a JSON problem document with fields
    "epsilon", "sets" and "options"."""
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ParseError("top-level value must be an object")

    epsilon = None
    if raw.get("epsilon") is not None:
        epsilon = _as_finite_float(raw["epsilon"], "epsilon")
        if epsilon <= 0:
            raise ValidationError(f"epsilon must be positive, got {epsilon}")

    sets_raw = raw.get("sets", {})
    if not isinstance(sets_raw, dict):
        raise ParseError('"sets" must map names to coordinate lists')
    sets = {}
    duplicates = {}
    for name, rows in sets_raw.items():
        ps, dups = _build_set(str(name), rows)
        sets[str(name)] = ps
        if dups:
            duplicates[str(name)] = dups

    options = ProblemOptions()
    opts_raw = raw.get("options", {})
    if opts_raw is None:
        opts_raw = {}
    if not isinstance(opts_raw, dict):
        raise ParseError('"options" must be an object')
    if opts_raw.get("grid_res") is not None:
        options.grid_res = _as_finite_float(opts_raw["grid_res"], "options.grid_res")
        if options.grid_res <= 0:
            raise ValidationError("options.grid_res must be positive")
    if opts_raw.get("seed") is not None:
        if not isinstance(opts_raw["seed"], int) or isinstance(opts_raw["seed"], bool):
            raise ValidationError("options.seed must be an integer")
        options.seed = opts_raw["seed"]
    if opts_raw.get("force") is not None:
        if not isinstance(opts_raw["force"], bool):
            raise ValidationError("options.force must be a boolean")
        options.force = opts_raw["force"]
    if opts_raw.get("tol") is not None:
        options.policy = _parse_tol(opts_raw["tol"], options.policy)

    return ProblemSpec(epsilon=epsilon, sets=sets, options=options, duplicates=duplicates)


def parse_points_csv(text: str, name: str = "set") -> list[tuple[float, float]]:
    """Two-column numeric CSV; blank lines are skipped."""
    coords = []
    reader = csv.reader(io.StringIO(text))
    for lineno, row in enumerate(reader, start=1):
        cells = [c.strip() for c in row if c.strip() != ""]
        if not cells:
            continue
        if len(cells) != 2:
            raise ParseError(f"{name}, line {lineno}: expected two columns, got {len(cells)}")
        try:
            x, y = float(cells[0]), float(cells[1])
        except ValueError as exc:
            raise ParseError(f"{name}, line {lineno}: {exc}") from exc
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValidationError(f"{name}, line {lineno}: non-finite coordinate")
        coords.append((x, y))
    if not coords:
        raise ValidationError(f"{name}: no points")
    return coords
