"""Bargaining problems over rate regions: essentiality, regularity, phase 1.

Phase 1 is the pre-bargaining negotiation: users agree to a superposition
coding scheme with a fixed power split only when it can strictly improve both
rates over the uncoordinated (interference-as-noise) operating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .channel import (
    ChannelParams,
    Interference,
    RatePair,
    classify_regime,
    disagreement_point,
)
from .errors import InvalidParameterError
from .regions import (
    FEAS_TOL,
    ParetoChain,
    PowerSplit,
    RatePolytope,
    TdmFrontier,
    efficient_frontier,
    hk_power_split,
    hk_region,
    ir_frontier,
)

# Strict-dominance margin used by the essentiality test.
STRICT_TOL = 1e-12


@dataclass(frozen=True)
class BargainingProblem:
    """A feasible set of payoff allocations plus the disagreement point."""

    feasible: RatePolytope | TdmFrontier
    d0: tuple[float, float]

    def __post_init__(self) -> None:
        if not isinstance(self.feasible, (RatePolytope, TdmFrontier)):
            raise TypeError(f"unsupported feasible set {type(self.feasible)!r}")
        if not self.feasible.contains(self.d0):
            raise InvalidParameterError(
                "disagreement point must belong to the feasible set"
            )


def is_essential(problem: BargainingProblem) -> bool:
    """True iff some feasible allocation strictly dominates the disagreement point.

    Decided geometrically: the efficient frontier must contain a point with
    both coordinates strictly above d0 (margin ``STRICT_TOL``).
    """
    feasible, d0 = problem.feasible, problem.d0
    if isinstance(feasible, RatePolytope):
        margin = efficient_frontier(feasible).best_strict_margin(d0)
    else:
        margin = feasible.best_strict_margin(d0)
    return margin > STRICT_TOL


def ir_frontier_strictly_monotone(
    feasible: RatePolytope | TdmFrontier, d0: Sequence[float], tol: float = FEAS_TOL
) -> bool:
    """Structural regularity test: no horizontal or vertical IR-frontier segment."""
    front = ir_frontier(feasible, d0)
    if isinstance(front, ParetoChain):
        return front.is_strictly_monotone(tol)
    return True  # the TDM curve is strictly monotone by construction


@dataclass(frozen=True)
class ConditionCheck:
    """A named inequality lhs >= rhs with its evaluated sides."""

    name: str
    lhs: float
    rhs: float
    satisfied: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class RegularityReport:
    """Verdicts of the closed-form regularity conditions for a phase-1 region."""

    essential: bool
    regular: bool
    failed_conditions: tuple[ConditionCheck, ...]
    structural_monotone: bool

    def __post_init__(self) -> None:
        if self.regular and not self.essential:
            raise InvalidParameterError("a regular problem must be essential")

    def as_dict(self) -> dict:
        return {
            "essential": self.essential,
            "regular": self.regular,
            "failed_conditions": [c.as_dict() for c in self.failed_conditions],
            "structural_monotone": self.structural_monotone,
        }


def _row_bound(region: RatePolytope, coef: tuple[float, float]) -> float:
    for row in region.rows:
        if row.coef == coef:
            return row.bound
    raise InvalidParameterError(f"region has no row with coefficients {coef}")


def _pos(x: float) -> float:
    return max(x, 0.0)


def is_regular(
    params: ChannelParams, region: RatePolytope, d0: RatePair
) -> RegularityReport:
    """Closed-form regularity of the phase-1 bargaining problem.

    Strong interference is regular only for a = b = 1; in the weak and mixed
    regimes each safe rate must reach the corner of the efficient frontier
    closest to its axis, so that the individually rational frontier keeps no
    horizontal or vertical segment.  Comparisons use a 1e-9 tolerance, so
    boundary equalities count as regular.  The structural (frontier-shape)
    verdict is reported alongside; the two can differ only within ~1e-9 of a
    regime knife edge.
    """
    if region.split is None or region.split != hk_power_split(params):
        raise InvalidParameterError(
            "region does not match the phase-1 power split for these parameters"
        )
    regime = classify_regime(params)
    if regime.tag is Interference.MIXED_B_WEAK:
        swapped = is_regular(params.swapped(), region.swapped(), RatePair(d0[1], d0[0]))
        checks = tuple(
            ConditionCheck(c.name + " (roles swapped)", c.lhs, c.rhs, c.satisfied)
            for c in swapped.failed_conditions
        )
        return RegularityReport(
            swapped.essential, swapped.regular, checks, swapped.structural_monotone
        )

    essential = is_essential(BargainingProblem(region, (d0[0], d0[1])))
    structural = ir_frontier_strictly_monotone(region, d0)
    checks: list[ConditionCheck] = []
    if not essential:
        checks.append(ConditionCheck("problem is essential", 0.0, 1.0, False))
        return RegularityReport(False, False, tuple(checks), structural)

    tol = FEAS_TOL
    phi1, phi2 = region.caps
    if regime.tag is Interference.STRONG:
        deviation = max(abs(params.a - 1.0), abs(params.b - 1.0))
        ok = deviation == 0.0
        checks.append(ConditionCheck("strong regime requires a = b = 1 (gain deviation)", deviation, 0.0, ok))
        failed = () if ok else tuple(checks)
        return RegularityReport(True, ok, failed, structural)

    phi3 = _row_bound(region, (1.0, 1.0))
    phi4 = _row_bound(region, (2.0, 1.0))
    phi5 = _row_bound(region, (1.0, 2.0))
    if regime.tag is Interference.WEAK:
        thr1 = _pos(phi5 - 2.0 * phi2)
        thr2 = _pos(phi4 - 2.0 * phi1)
    else:  # MIXED_A_WEAK
        thr1 = _pos(min(phi5 - 2.0 * phi2, phi3 - phi2))
        thr2 = _pos(min(phi4 - 2.0 * phi1, phi3 - phi1))
    c1 = ConditionCheck("safe rate 1 reaches the frontier corner", d0[0], thr1, d0[0] >= thr1 - tol)
    c2 = ConditionCheck("safe rate 2 reaches the frontier corner", d0[1], thr2, d0[1] >= thr2 - tol)
    failed = tuple(c for c in (c1, c2) if not c.satisfied)
    return RegularityReport(True, not failed, failed, structural)


class Phase1Reason(Enum):
    OK = "OK"
    NOISY_OPTIMAL = "NoisyOptimal"
    SPLIT_DEGENERATE = "SplitDegenerate"
    NOT_ESSENTIAL = "NotEssential"


@dataclass(frozen=True)
class Phase1Outcome:
    """Result of the pre-bargaining phase.

    ``split`` is present exactly when the users agree to cooperate; ``scheme``
    is a display label for the agreed coding scheme and ``condition`` explains
    the decisive check when cooperation fails.
    """

    cooperate: bool
    reason: Phase1Reason
    split: PowerSplit | None = None
    scheme: str | None = None
    condition: str | None = None

    def __post_init__(self) -> None:
        if self.cooperate != (self.reason is Phase1Reason.OK):
            raise InvalidParameterError("cooperate must hold exactly when reason is OK")
        if self.cooperate and self.split is None:
            raise InvalidParameterError("a cooperating outcome must carry the power split")

    def as_dict(self) -> dict:
        return {
            "cooperate": self.cooperate,
            "reason": self.reason.value,
            "split": None if self.split is None else [self.split.alpha, self.split.beta],
            "scheme": self.scheme,
            "condition": self.condition,
        }


def phase1(params: ChannelParams) -> Phase1Outcome:
    """Decide whether both users have an incentive to adopt the fixed-split scheme.

    Noisy weak channels never cooperate (interference-as-noise is already
    optimal there).  Strong channels always cooperate with the common-only
    scheme.  Weak channels need both INRs above one and an essential problem;
    mixed channels need the single relevant INR above one and essentiality.
    """
    regime = classify_regime(params)
    split = hk_power_split(params)
    scheme = f"HK({split.alpha:.6g},{split.beta:.6g})"

    if regime.noisy:
        lhs = math.sqrt(params.a) * (params.inr2 + 1.0) + math.sqrt(params.b) * (
            params.inr1 + 1.0
        )
        return Phase1Outcome(
            False,
            Phase1Reason.NOISY_OPTIMAL,
            condition=f"sqrt(a)*(b*p1+1) + sqrt(b)*(a*p2+1) = {lhs:.6g} <= 1",
        )
    if regime.tag is Interference.STRONG:
        return Phase1Outcome(True, Phase1Reason.OK, split=split, scheme=scheme)

    need_inr1 = regime.tag in (Interference.WEAK, Interference.MIXED_A_WEAK)
    need_inr2 = regime.tag in (Interference.WEAK, Interference.MIXED_B_WEAK)
    if need_inr1 and params.inr1 <= 1.0:
        return Phase1Outcome(
            False,
            Phase1Reason.SPLIT_DEGENERATE,
            condition=f"requires a*p2 > 1, got inr1 = {params.inr1:.6g}",
        )
    if need_inr2 and params.inr2 <= 1.0:
        return Phase1Outcome(
            False,
            Phase1Reason.SPLIT_DEGENERATE,
            condition=f"requires b*p1 > 1, got inr2 = {params.inr2:.6g}",
        )

    region = hk_region(params, split)
    d0 = disagreement_point(params)
    # Safe rates outside the region imply an empty IR set (positive coefficients),
    # so nothing in the region can dominate them.
    if not region.contains(d0) or not is_essential(
        BargainingProblem(region, (d0.r1, d0.r2))
    ):
        return Phase1Outcome(
            False,
            Phase1Reason.NOT_ESSENTIAL,
            condition="no feasible rate pair strictly dominates the safe rates",
        )
    return Phase1Outcome(True, Phase1Reason.OK, split=split, scheme=scheme)
