"""Inequality certificates: a computed ``lhs <= rhs`` instance with its gap."""

import enum
import math
from dataclasses import dataclass, field

DEFAULT_TOL = 1e-9


class Status(str, enum.Enum):
    HOLDS = "Holds"
    VIOLATED_WITHIN_TOLERANCE = "ViolatedWithinTolerance"
    VIOLATED = "Violated"


def classify(gap, tolerance):
    """``Holds`` iff ``gap >= -tol``; ``Violated`` iff ``gap < -10 tol``."""
    if math.isnan(gap):
        return Status.VIOLATED
    if gap >= -tolerance:
        return Status.HOLDS
    if gap < -10 * tolerance:
        return Status.VIOLATED
    return Status.VIOLATED_WITHIN_TOLERANCE


def default_tolerance(dim):
    """1e-9, growing as ``dim * 1e-10`` beyond dimension 10."""
    return max(DEFAULT_TOL, dim * 1e-10) if dim > 10 else DEFAULT_TOL


@dataclass(frozen=True)
class InequalityCertificate:
    """One evaluated instance of ``lhs <= rhs``.

    ``gap`` is ``rhs - lhs``; an infinite ``rhs`` (for example a divergence
    between states with mismatched supports) gives ``gap = inf``.
    """

    name: str
    lhs: float
    rhs: float
    tolerance: float = DEFAULT_TOL
    metadata: dict = field(default_factory=dict)

    @property
    def gap(self):
        if math.isinf(self.rhs) and self.rhs > 0 and not math.isinf(self.lhs):
            return math.inf
        return self.rhs - self.lhs

    @property
    def status(self):
        return classify(self.gap, self.tolerance)

    @property
    def holds(self):
        return self.status is Status.HOLDS

    def to_record(self):
        return {
            "name": self.name,
            "parameters": {**self.metadata, "tolerance": self.tolerance},
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "status": self.status.value,
        }


def certify(name, lhs, rhs, tolerance=DEFAULT_TOL, **metadata):
    return InequalityCertificate(name, float(lhs), float(rhs), float(tolerance), metadata)
