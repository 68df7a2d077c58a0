"""Generalized-degrees-of-freedom analysis at high SNR.

Exponents theta1 = log SNR2 / log SNR1, theta2 = log INR1 / log SNR1 and
theta3 = log INR2 / log SNR1 parametrise the scaling regime.  The closed-form
g.d.o.f. regions are polytopes in (d1, d2) with rows carrying theta1-scaled
coefficients; bargaining reuses the generic polytope NBS solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .bargain import BargainingProblem, Phase1Outcome, Phase1Reason
from .errors import InvalidParameterError, NotEssentialError, UnsupportedRegimeError
from .nbs import NbsResult, nbs_polytope
from .regions import ConstraintRow, PowerSplit, RatePolytope


@dataclass(frozen=True)
class GdofParams:
    """Scaling exponents of the two SNRs and two INRs (all strictly positive)."""

    theta1: float
    theta2: float
    theta3: float

    def __post_init__(self) -> None:
        for name in ("theta1", "theta2", "theta3"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise InvalidParameterError(f"{name} must be finite and > 0, got {v!r}")

    def as_dict(self) -> dict:
        return {"theta1": self.theta1, "theta2": self.theta2, "theta3": self.theta3}


class GdofPoint(NamedTuple):
    """A pair of generalized degrees of freedom, each in [0, 1]."""

    d1: float
    d2: float


@dataclass(frozen=True)
class GdofRegion:
    """A closed-form g.d.o.f. region with its regime tag (D1..D4)."""

    tag: str
    polytope: RatePolytope

    def as_dict(self) -> dict:
        out = self.polytope.as_dict()
        out["tag"] = self.tag
        return out


def _pos(x: float) -> float:
    return max(x, 0.0)


def gdof_region(theta: GdofParams) -> GdofRegion:
    """Optimal g.d.o.f. region for the exponent regime of ``theta``.

    Strong (theta2 >= theta1, theta3 >= 1): one weighted-sum row.  Weak
    (theta2 < theta1, theta3 < 1): three rows.  Mixed (theta2 >= theta1,
    theta3 < 1): two rows.  The remaining exponent corner has no stated
    closed form and is rejected.
    """
    t1, t2, t3 = theta.theta1, theta.theta2, theta.theta3
    caps = (1.0, 1.0)
    if t2 >= t1 and t3 >= 1.0:
        bound = min(max(1.0, t2), max(t1, t3))
        rows = (ConstraintRow((1.0, t1), bound, "d1+t1*d2"),)
        return GdofRegion("D1", RatePolytope(caps, rows, "GdofScaled:D1"))
    if t2 < t1 and t3 < 1.0:
        b1 = min(
            1.0 + _pos(t1 - t3),
            t1 + _pos(1.0 - t2),
            max(t2, 1.0 - t3) + max(t3, t1 - t2),
        )
        b2 = max(1.0, t2) + max(t3, t1 - t2) + 1.0 - t3
        b3 = max(t1, t3) + max(t2, 1.0 - t3) + t1 - t2
        rows = (
            ConstraintRow((1.0, t1), b1, "d1+t1*d2"),
            ConstraintRow((2.0, t1), b2, "2d1+t1*d2"),
            ConstraintRow((1.0, 2.0 * t1), b3, "d1+2t1*d2"),
        )
        return GdofRegion("D2", RatePolytope(caps, rows, "GdofScaled:D2"))
    if t2 >= t1 and t3 < 1.0:
        b1 = min(1.0 + _pos(t1 - t3), max(1.0, t2))
        b2 = max(t1, t3) + max(t2, 1.0 - t3)
        rows = (
            ConstraintRow((1.0, t1), b1, "d1+t1*d2"),
            ConstraintRow((1.0, 2.0 * t1), b2, "d1+2t1*d2"),
        )
        return GdofRegion("D3", RatePolytope(caps, rows, "GdofScaled:D3"))
    raise UnsupportedRegimeError(
        "exponents with theta2 < theta1 and theta3 >= 1 have no closed-form region"
    )


def gdof_tdm_region() -> GdofRegion:
    """Time-division g.d.o.f. region: the simplex d1 + d2 <= 1."""
    rows = (ConstraintRow((1.0, 1.0), 1.0, "d1+d2"),)
    return GdofRegion("D4", RatePolytope((1.0, 1.0), rows, "GdofScaled:D4"))


def gdof_disagreement(theta: GdofParams) -> GdofPoint:
    """Uncoordinated g.d.o.f. pair when interference is treated as noise."""
    d1 = _pos(1.0 - theta.theta2)
    d2 = _pos(1.0 - theta.theta3 / theta.theta1)
    return GdofPoint(d1, d2)


# Display labels for the asymptotic coding schemes; private-message power
# fractions 1/INR vanish in the high-SNR limit, so the numeric split is (0, 0).
_SCHEMES = {
    "D1": "HK(0,0)",
    "D2": "HK(1/INR2,1/INR1)",
    "D3": "HK(1/INR2,0)",
}


def gdof_phase1(theta: GdofParams) -> Phase1Outcome:
    """Cooperation incentives in the scaling regime.

    Strong and mixed regimes always cooperate (the disagreement pair is
    strictly inside the region).  In the weak regime cooperation requires the
    disagreement pair to satisfy every region row with strict inequality.
    """
    region = gdof_region(theta)
    d0 = gdof_disagreement(theta)
    split = PowerSplit(0.0, 0.0)
    scheme = _SCHEMES[region.tag]
    if region.tag in ("D1", "D3"):
        return Phase1Outcome(True, Phase1Reason.OK, split=split, scheme=scheme)
    for row in region.polytope.rows:
        if not row.value(d0) < row.bound:
            return Phase1Outcome(
                False,
                Phase1Reason.NOT_ESSENTIAL,
                condition=(
                    f"disagreement pair meets row {row.label}: "
                    f"{row.value(d0):.6g} >= {row.bound:.6g}"
                ),
            )
    return Phase1Outcome(True, Phase1Reason.OK, split=split, scheme=scheme)


def gdof_nbs(theta: GdofParams) -> NbsResult:
    """NBS over the optimal g.d.o.f. region (requires phase-1 cooperation)."""
    outcome = gdof_phase1(theta)
    if not outcome.cooperate:
        raise NotEssentialError(outcome.condition or "phase 1 failed")
    region = gdof_region(theta)
    d0 = gdof_disagreement(theta)
    return nbs_polytope(BargainingProblem(region.polytope, (d0.d1, d0.d2)))


def gdof_nbs_tdm(theta: GdofParams) -> NbsResult:
    """NBS over the time-division g.d.o.f. region.

    The disagreement pair can fall outside the simplex (time division can be
    strictly worse than not coordinating); that case is reported as a
    non-essential problem.
    """
    region = gdof_tdm_region()
    d0 = gdof_disagreement(theta)
    if not region.polytope.contains(d0):
        raise NotEssentialError(
            "disagreement g.d.o.f. pair lies outside the time-division region"
        )
    return nbs_polytope(BargainingProblem(region.polytope, (d0.d1, d0.d2)))
