"""Alternating-offer bargaining with exogenous risk of breakdown.

For a regular problem the game has a unique subgame perfect equilibrium
described by one pair of efficient agreements (gbar, gtilde): player 1 always
offers gbar and accepts any offer paying at least gtilde_1; player 2 always
offers gtilde and accepts any offer paying at least gbar_2.  The pair solves

    gtilde_1 = (1 - p2) * (gbar_1 - d_1) + d_1
    gbar_2   = (1 - p1) * (gtilde_2 - d_2) + d_2

with both points on the individually rational efficient frontier.  On a
piecewise-linear frontier the pair is found exactly by sweeping ordered
segment pairs and solving the induced linear system in closed form; on the
smooth time-division frontier it is found by bisection.

A seedable play-out engine simulates the extensive game round by round,
including the chance move that may end negotiation after any rejection.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Protocol, Sequence

from .bargain import BargainingProblem, is_essential
from .channel import cap, mac_safe_rates
from .errors import (
    InternalCheckError,
    InvalidParameterError,
    NotRegularError,
    PlayoutLimitError,
)
from .nbs import nbs_mac
from .regions import ParetoChain, TdmFrontier, ir_frontier

# Admissibility tolerance for "point lies on this frontier segment".
SEG_TOL = 1e-9
# Distinct-solution threshold for the uniqueness audit.
AUDIT_TOL = 1e-7
MAX_ROUNDS = 1_000_000


@dataclass(frozen=True)
class BreakdownProbs:
    """Probabilities that bargaining collapses after a rejected offer.

    ``p1`` applies when player 1's offer is rejected, ``p2`` when player 2's
    is.  Both must lie strictly inside (0, 1); the boundary values are served
    by the explicit limit helpers.
    """

    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name, v in (("p1", self.p1), ("p2", self.p2)):
            if not math.isfinite(v) or not 0.0 < v < 1.0:
                raise InvalidParameterError(f"{name} must lie strictly in (0, 1), got {v!r}")


@dataclass(frozen=True)
class SpePair:
    """The unique pair of efficient equilibrium agreements.

    ``gbar`` is what player 1 offers (and what the game settles on when
    player 1 moves first); ``gtilde`` is player 2's offer.  Segment indices
    locate each point on the individually rational frontier; they are None for
    smooth frontiers.
    """

    gbar: tuple[float, float]
    gtilde: tuple[float, float]
    gbar_segment: int | None
    gtilde_segment: int | None

    def as_dict(self) -> dict:
        return {
            "gbar": list(self.gbar),
            "gtilde": list(self.gtilde),
            "gbar_segment": self.gbar_segment,
            "gtilde_segment": self.gtilde_segment,
        }


def spe_residuals(
    pair: SpePair, d0: Sequence[float], probs: BreakdownProbs
) -> tuple[float, float]:
    """Residuals of the two equilibrium fixed-point equations at ``pair``."""
    r1 = pair.gtilde[0] - ((1.0 - probs.p2) * (pair.gbar[0] - d0[0]) + d0[0])
    r2 = pair.gbar[1] - ((1.0 - probs.p1) * (pair.gtilde[1] - d0[1]) + d0[1])
    return (r1, r2)


def _segment_line(p, q) -> tuple[float, float, float]:
    """Coefficients (u, v, w) with u*x + v*y = w through segment endpoints."""
    u = p[1] - q[1]
    v = q[0] - p[0]
    return u, v, u * p[0] + v * p[1]


def _spe_on_chain(chain: ParetoChain, d0, probs: BreakdownProbs) -> SpePair:
    d1, d2 = d0
    p1, p2 = probs.p1, probs.p2
    segs = chain.segments(min_extent=1e-12)
    if not segs:
        raise NotRegularError("individually rational frontier is a single point")

    solutions: list[tuple[tuple, tuple, int, int]] = []
    for ia, (pa, qa) in enumerate(segs):
        ua, va, wa = _segment_line(pa, qa)
        for ib, (pb, qb) in enumerate(segs):
            ub, vb, wb = _segment_line(pb, qb)
            # unknowns (xbar, ytilde); the other two coordinates follow from
            # the fixed-point equations.
            rhs_a = wa - va * p1 * d2
            rhs_b = wb - ub * p2 * d1
            det = ua * vb - va * (1.0 - p1) * ub * (1.0 - p2)
            if abs(det) < 1e-13 * max(abs(ua * vb), abs(va * ub), 1e-300):
                continue
            xbar = (rhs_a * vb - va * (1.0 - p1) * rhs_b) / det
            ytil = (ua * rhs_b - ub * (1.0 - p2) * rhs_a) / det
            ybar = d2 + (1.0 - p1) * (ytil - d2)
            xtil = d1 + (1.0 - p2) * (xbar - d1)
            gbar, gtil = (xbar, ybar), (xtil, ytil)
            if _on_segment(gbar, pa, qa) and _on_segment(gtil, pb, qb):
                solutions.append((gbar, gtil, ia, ib))

    if not solutions:
        raise InternalCheckError("no frontier segment pair admits the equilibrium system")
    gbar, gtil, ia, ib = solutions[0]
    for other in solutions[1:]:
        dist = math.dist(gbar, other[0]) + math.dist(gtil, other[1])
        if dist > AUDIT_TOL:
            raise InternalCheckError("multiple distinct equilibrium candidates found")
    return SpePair(gbar, gtil, ia, ib)


def _on_segment(pt, p, q, tol: float = SEG_TOL) -> bool:
    return (
        min(p[0], q[0]) - tol <= pt[0] <= max(p[0], q[0]) + tol
        and min(p[1], q[1]) - tol <= pt[1] <= max(p[1], q[1]) + tol
    )


def _spe_on_tdm(frontier: TdmFrontier, d0, probs: BreakdownProbs) -> SpePair:
    d1, d2 = d0
    p1, p2 = probs.p1, probs.p2
    clipped = frontier.clip(d0)
    lo, hi = clipped.rho_lo, clipped.rho_hi
    if hi - lo <= 1e-14:
        raise NotRegularError("individually rational TDM frontier is a single point")
    y_top = frontier.point(lo)[1]

    # smallest rho for gbar keeps the implied gtilde_2 on the frontier
    y_bar_min = d2 + (1.0 - p1) * (y_top - d2)
    rb_lo = frontier.rho_from_y(y_bar_min)

    def residual(rb: float) -> float:
        xb, yb = frontier.point(rb)
        ytil = d2 + (yb - d2) / (1.0 - p1)
        rt = frontier.rho_from_y(ytil)
        xt = frontier.point(rt)[0]
        return xt - (d1 + (1.0 - p2) * (xb - d1))

    a, b = rb_lo, hi
    fa = residual(a)
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = residual(mid)
        if (fa <= 0.0) == (fm <= 0.0):
            a, fa = mid, fm
        else:
            b = mid
    rb = 0.5 * (a + b)
    xb, yb = frontier.point(rb)
    ytil = d2 + (yb - d2) / (1.0 - p1)
    rt = frontier.rho_from_y(ytil)
    xt = frontier.point(rt)[0]
    return SpePair((xb, yb), (xt, ytil), None, None)


def spe_pair(problem: BargainingProblem, probs: BreakdownProbs) -> SpePair:
    """Equilibrium agreement pair of the alternating-offer game.

    Requires a regular problem: essential, with a strictly monotone
    individually rational efficient frontier (checked structurally here).
    """
    if not is_essential(problem):
        raise NotRegularError("problem is not essential, hence not regular")
    front = ir_frontier(problem.feasible, problem.d0)
    if isinstance(front, ParetoChain):
        if not front.is_strictly_monotone():
            raise NotRegularError(
                "individually rational frontier has a horizontal or vertical segment"
            )
        return _spe_on_chain(front, problem.d0, probs)
    return _spe_on_tdm(front, problem.d0, probs)


def spe_mac(p1: float, p2: float, probs: BreakdownProbs) -> SpePair:
    """Closed-form equilibrium pair for the two-user MAC.

    Both agreements sit on the sum-rate face, so the fixed-point equations
    reduce to a 4x4 linear system solved here by substitution.
    """
    if p1 <= 0 or p2 <= 0:
        raise InvalidParameterError("MAC powers must be > 0")
    return _spe_mac_system(p1, p2, probs.p1, probs.p2)


def _spe_mac_system(p1: float, p2: float, q1: float, q2: float) -> SpePair:
    r0 = mac_safe_rates(p1, p2)
    phi0 = cap(p1 + p2)
    a = phi0 - q1 * r0.r2
    b = phi0 - q2 * r0.r1
    det = 1.0 - (1.0 - q1) * (1.0 - q2)
    xbar = (a - (1.0 - q1) * b) / det
    ytil = (b - (1.0 - q2) * a) / det
    return SpePair((xbar, phi0 - xbar), (phi0 - ytil, ytil), 0, 0)


def spe_mac_limit(p1: float, p2: float, prob1: float, prob2: float) -> SpePair:
    """MAC equilibrium pair with boundary breakdown probabilities allowed.

    At prob1 = prob2 = 0 the linear system is singular and the pair is taken
    as its limit, the Nash bargaining solution (both offers coincide).  All
    other combinations in [0, 1]^2 solve directly; prob → 1 yields the
    ultimatum split where each responder is held to its safe rate.
    """
    for name, v in (("prob1", prob1), ("prob2", prob2)):
        if not 0.0 <= v <= 1.0:
            raise InvalidParameterError(f"{name} must lie in [0, 1], got {v!r}")
    if prob1 == 0.0 and prob2 == 0.0:
        pt = nbs_mac(p1, p2).point
        return SpePair(pt, pt, 0, 0)
    return _spe_mac_system(p1, p2, prob1, prob2)


# -- play-out engine -------------------------------------------------------------


class Strategy(Protocol):
    """Offer/accept behaviour of one player in the alternating-offer game."""

    def propose(self, round_no: int) -> tuple[float, float]: ...

    def respond(self, round_no: int, offer: tuple[float, float]) -> bool: ...


@dataclass(frozen=True)
class ThresholdStrategy:
    """Propose a fixed offer; accept anything paying at least ``min_accept``."""

    player: int
    proposal: tuple[float, float]
    min_accept: float

    def propose(self, round_no: int) -> tuple[float, float]:
        return self.proposal

    def respond(self, round_no: int, offer: tuple[float, float]) -> bool:
        return offer[self.player - 1] >= self.min_accept - 1e-12


@dataclass(frozen=True)
class AlwaysRejectStrategy:
    """Reject every offer; propose a fixed (typically disagreement) point."""

    player: int
    proposal: tuple[float, float]

    def propose(self, round_no: int) -> tuple[float, float]:
        return self.proposal

    def respond(self, round_no: int, offer: tuple[float, float]) -> bool:
        return False


def equilibrium_strategies(
    problem: BargainingProblem, probs: BreakdownProbs, pair: SpePair | None = None
) -> tuple[ThresholdStrategy, ThresholdStrategy]:
    """The subgame perfect equilibrium strategy profile."""
    if pair is None:
        pair = spe_pair(problem, probs)
    s1 = ThresholdStrategy(1, pair.gbar, pair.gtilde[0])
    s2 = ThresholdStrategy(2, pair.gtilde, pair.gbar[1])
    return s1, s2


@dataclass(frozen=True)
class GameTrace:
    """One complete play of the game: events, terminal payoff, round count.

    Events follow the history grammar: each round appends ("offer", point)
    then either ("accept",) ending the game, or ("reject",) followed by
    ("breakdown",) or ("continue",).
    """

    events: tuple[tuple, ...]
    payoff: tuple[float, float]
    rounds: int
    breakdown: bool

    def as_dict(self) -> dict:
        return {
            "events": [list(e) if len(e) > 1 else [e[0]] for e in self.events],
            "payoff": list(self.payoff),
            "rounds": self.rounds,
            "breakdown": self.breakdown,
        }


def play_aobg(
    problem: BargainingProblem,
    probs: BreakdownProbs,
    strategies: tuple[Strategy, Strategy],
    first_mover: int = 1,
    seed: int = 0,
    max_rounds: int = MAX_ROUNDS,
) -> GameTrace:
    """Simulate the alternating-offer game once, reproducibly.

    Players alternate proposing, starting with ``first_mover``.  After each
    rejection a single uniform variate from ``random.Random(seed)`` decides
    whether bargaining breaks down (probability p_i of the proposer whose
    offer was rejected), ending the game at the disagreement point.
    """
    if first_mover not in (1, 2):
        raise InvalidParameterError("first_mover must be 1 or 2")
    rng = random.Random(seed)
    events: list[tuple] = []
    strat = {1: strategies[0], 2: strategies[1]}
    for t in range(1, max_rounds + 1):
        proposer = first_mover if t % 2 == 1 else 3 - first_mover
        responder = 3 - proposer
        offer = tuple(strat[proposer].propose(t))
        if not problem.feasible.contains(offer):
            raise InvalidParameterError(
                f"player {proposer} proposed an infeasible offer {offer} in round {t}"
            )
        events.append(("offer", offer))
        if strat[responder].respond(t, offer):
            events.append(("accept",))
            return GameTrace(tuple(events), offer, t, False)
        events.append(("reject",))
        p_break = probs.p1 if proposer == 1 else probs.p2
        if rng.random() < p_break:
            events.append(("breakdown",))
            return GameTrace(tuple(events), tuple(problem.d0), t, True)
        events.append(("continue",))
    raise PlayoutLimitError(f"no agreement or breakdown within {max_rounds} rounds")
