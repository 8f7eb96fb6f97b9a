"""Deterministic curve-document serialization.

Documents are JSON with a fixed key order and every number printed with
17 significant digits, which round-trips doubles exactly: the same
inputs always produce byte-identical output.
"""

from __future__ import annotations

import json

from .chained import HypothesisReport
from .geometry import ArcCycle
from .separation import SeparationResult, VerificationReport

TOOL_NAME = "equisep"
TOOL_VERSION = "0.1.0"


def format_number(x: float) -> str:
    if isinstance(x, float) and x == 0.0:
        x = 0.0  # normalize -0.0
    return "%.17g" % x


def _serialize(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_number(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key, value in obj.items():
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(str(key)))
            out.append(":")
            _serialize(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        first = True
        for value in obj:
            if not first:
                out.append(",")
            first = False
            _serialize(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    out: list[str] = []
    _serialize(obj, out)
    out.append("\n")
    return "".join(out)


def arc_payload(arc, ccw: bool = True) -> dict:
    return {
        "center": [arc.center.x, arc.center.y],
        "radius": arc.radius,
        "start_angle": arc.start_angle,
        "end_angle": arc.end_angle,
        "ccw": ccw,
        "full_circle": arc.full_circle,
    }


def cycle_payload(cycle: ArcCycle) -> dict:
    return {
        "kind": cycle.kind,
        "arcs": [
            arc_payload(arc, ccw=not rev)
            for arc, rev in zip(cycle.arcs, cycle.reversed_flags)
        ],
    }


def hypothesis_payload(report: HypothesisReport) -> dict:
    return {
        "epsilon": report.epsilon,
        "rho_AB": report.rho_AB,
        "A_chained": report.A_chained_at,
        "B_chained": report.B_chained_at,
        "violations": list(report.violations),
    }


def verification_payload(report: VerificationReport) -> dict:
    return {
        "passed": report.passed,
        "side_of_A": report.side_of_A,
        "side_of_B": report.side_of_B,
        "labels_A": list(report.labels_A),
        "labels_B": list(report.labels_B),
        "dist_curve_A": report.dist_curve_A,
        "dist_curve_B": report.dist_curve_B,
    }


def separation_payload(res: SeparationResult) -> dict:
    return {
        "epsilon": res.epsilon,
        "side_of_A": res.side_of_A,
        "side_of_B": res.side_of_B,
        "dist_curve_A": res.dist_curve_A,
        "dist_curve_B": res.dist_curve_B,
        "face_id": res.face_id,
        "face_bounded": res.face_bounded,
    }


def emit_curves(curves, metadata: dict | None = None) -> str:
    """Serialize cycles plus metadata as a deterministic document."""
    meta = {"tool": TOOL_NAME, "version": TOOL_VERSION}
    if metadata:
        meta.update(metadata)
    doc = {
        "curves": [cycle_payload(c) for c in curves],
        "metadata": meta,
    }
    return dumps(doc)
