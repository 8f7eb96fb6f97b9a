"""Exception types shared across the package.

The CLI groups these into exit codes (see cli.py): input problems,
domain-level negative outcomes (failed separation hypotheses and
geometric obstructions), and internal tolerance failures.
"""


class EquisepError(Exception):
    """Base class for all package-specific errors."""


class ParseError(EquisepError):
    """Input text could not be parsed (bad JSON / CSV)."""


class ValidationError(EquisepError):
    """Input parsed but violates a structural constraint (non-finite
    coordinate, empty set, non-positive epsilon, missing set name)."""


class EmptyInput(EquisepError):
    """An operation received an empty point set."""


class IdenticalCircles(EquisepError):
    """Two circles coincide within tolerance; their intersection is the
    whole circle, which no caller can consume."""


class DegenerateRay(EquisepError):
    """Internal: a cast ray grazed an arc endpoint or tangency.

    Never surfaces to callers; point_in_cycle retries with a fresh
    seeded direction and raises RobustnessExhausted if retries run out.
    """


class RobustnessExhausted(EquisepError):
    """All ray-casting retries hit degenerate configurations."""


class NotClosed(EquisepError):
    """Arc chain does not weld into a closed cycle."""


class ToleranceCollapse(EquisepError):
    """Intersection points that must stay distinct merged within
    tolerance (three circles through a common point, or equivalent)."""

    def __init__(self, message, circles=()):
        super().__init__(message)
        self.circles = tuple(circles)


class AmbiguousNesting(EquisepError):
    """No representative point of a cycle could be classified against
    another cycle after the retry budget."""


class NotInComplement(EquisepError):
    """Query point lies inside the closed epsilon-neighbourhood, so it
    belongs to no complement face."""


class OnBoundary(EquisepError):
    """Query point lies on a boundary cycle within tolerance."""


class NotChained(EquisepError):
    """A set failed a required chainedness condition.

    Carries the offending partition as a diagnostic.
    """

    def __init__(self, message, partition=None, threshold=None):
        super().__init__(message)
        self.partition = partition
        self.threshold = threshold


class HypothesisViolation(EquisepError):
    """Preconditions of a separation operation do not hold.

    `violations` lists the failed clauses; `report` carries the full
    hypothesis report when one was computed.
    """

    def __init__(self, violations, report=None):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)
        self.report = report


class BSpansMultipleFaces(EquisepError):
    """Points of B fall into different complement faces, so no single
    boundary cycle of the epsilon-neighbourhood can separate A and B."""

    def __init__(self, face_ids):
        super().__init__(
            "B spans multiple complement faces: " + ", ".join(str(f) for f in face_ids)
        )
        self.face_ids = tuple(face_ids)


class ZeroDistance(EquisepError):
    """The two sets touch; no midway curve exists."""


class CellBudgetExceeded(EquisepError):
    """Requested grid resolution exceeds the oracle cell budget."""


class UsageError(EquisepError):
    """Bad command line arguments."""
