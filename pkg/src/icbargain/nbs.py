"""Nash bargaining solutions: exact KKT active-set solver plus 1-D frontier search.

The polytope solver enumerates candidate active sets (weighted-sum rows first,
caps last), solves each stationarity system in closed form, and keeps the
unique candidate that passes feasibility and complementary slackness.  A
uniqueness audit guards against implementation error: the maximiser of the
Nash product over a convex set is unique, so no second distinct candidate may
survive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bargain import BargainingProblem, is_essential
from .channel import cap, mac_safe_rates
from .errors import (
    HypothesisViolatedError,
    InternalCheckError,
    InvalidParameterError,
    NotEssentialError,
)
from .regions import ParetoChain, RatePolytope, TdmFrontier, mac_region

# Candidates whose multipliers dip below -MULT_TOL are rejected.
MULT_TOL = 1e-9
# Two surviving candidates further apart than this trip the uniqueness audit.
AUDIT_TOL = 1e-7
# Golden-section parameter tolerance for concave frontiers.
GOLDEN_TOL = 1e-10


@dataclass(frozen=True)
class NbsResult:
    """A Nash bargaining solution with its KKT certificate.

    ``multipliers`` holds one Lagrange multiplier per weighted-sum row (zero
    for slack rows); ``active_caps`` flags which per-user caps bind.  For
    solutions found by 1-D search on a concave frontier the certificate is
    empty and ``frontier_param`` records the frontier parameter instead.
    """

    point: tuple[float, float]
    multipliers: tuple[float, ...]
    active_caps: tuple[bool, bool]
    nash_product: float
    frontier_param: float | None = None

    def as_dict(self) -> dict:
        return {
            "point": list(self.point),
            "multipliers": list(self.multipliers),
            "active_caps": list(self.active_caps),
            "nash_product": self.nash_product,
            "frontier_param": self.frontier_param,
        }


def _check_interior(poly: RatePolytope, d0: Sequence[float]) -> None:
    if not (d0[0] < poly.caps[0] and d0[1] < poly.caps[1]):
        raise HypothesisViolatedError("disagreement point must lie strictly below both caps")
    for row in poly.rows:
        if row.slack(d0) <= 0.0:
            raise HypothesisViolatedError(
                f"disagreement point touches row {row.label}; strict interiority required"
            )


def nbs_polytope(problem: BargainingProblem) -> NbsResult:
    """Unique Nash-product maximiser over a polytope region.

    Requires an essential problem with the disagreement point strictly inside
    every cap and row.  At the optimum each coordinate satisfies
    g_i = min(cap_i, d_i + 1 / sum_j mu_j A_ji) for multipliers mu >= 0 with
    complementary slackness, which pins the solution once the active set is
    known; the active set is found by exhaustive enumeration.
    """
    poly = problem.feasible
    if not isinstance(poly, RatePolytope):
        raise TypeError("nbs_polytope needs a RatePolytope feasible set")
    if not is_essential(problem):
        raise NotEssentialError("no allocation strictly dominates the disagreement point")
    d = problem.d0
    _check_interior(poly, d)

    rows = poly.rows
    caps = poly.caps
    candidates: list[tuple[tuple[float, float], dict[int, float], tuple[bool, bool]]] = []

    def consider(point, mus: dict[int, float], caps_active, cap_duals=()) -> None:
        if point[0] - d[0] <= 1e-12 or point[1] - d[1] <= 1e-12:
            return
        if not poly.contains(point):
            return
        if any(mu < -MULT_TOL for mu in mus.values()):
            return
        if any(nu < -MULT_TOL for nu in cap_duals):
            return
        # complementary slackness: active rows must actually be tight
        for j, mu in mus.items():
            if abs(mu * rows[j].slack(point)) > MULT_TOL:
                return
        candidates.append((tuple(point), {j: max(mu, 0.0) for j, mu in mus.items()}, caps_active))

    # single active row: g = d + s/(2A_j) componentwise, mu_j = 2/s
    for j, row in enumerate(rows):
        s = row.slack(d)
        point = (d[0] + s / (2.0 * row.coef[0]), d[1] + s / (2.0 * row.coef[1]))
        consider(point, {j: 2.0 / s}, (False, False))

    # two active rows: the vertex, with multipliers from the 2x2 stationarity system
    for j in range(len(rows)):
        for k in range(j + 1, len(rows)):
            (a1, a2), bj = rows[j].coef, rows[j].bound
            (c1, c2), bk = rows[k].coef, rows[k].bound
            det = a1 * c2 - c1 * a2
            if abs(det) < 1e-13:
                continue
            x = (bj * c2 - bk * a2) / det
            y = (a1 * bk - c1 * bj) / det
            if x - d[0] <= 1e-12 or y - d[1] <= 1e-12:
                continue
            gx, gy = 1.0 / (x - d[0]), 1.0 / (y - d[1])
            mu_j = (gx * c2 - gy * c1) / det
            mu_k = (a1 * gy - a2 * gx) / det
            consider((x, y), {j: mu_j, k: mu_k}, (False, False))

    # one cap and one row
    for i in (0, 1):
        for j, row in enumerate(rows):
            gi = caps[i]
            other = (row.bound - row.coef[i] * gi) / row.coef[1 - i]
            point = (gi, other) if i == 0 else (other, gi)
            gap_other = point[1 - i] - d[1 - i]
            if gap_other <= 1e-12 or gi - d[i] <= 1e-12:
                continue
            mu_j = 1.0 / (row.coef[1 - i] * gap_other)
            nu_i = 1.0 / (gi - d[i]) - mu_j * row.coef[i]
            caps_active = (i == 0, i == 1)
            consider(point, {j: mu_j}, caps_active, cap_duals=(nu_i,))

    # both caps (all rows slack): the box corner
    consider(caps, {}, (True, True))

    if not candidates:
        raise InternalCheckError("active-set enumeration produced no KKT point")
    best_point, best_mus, best_caps = candidates[0]
    for point, _, _ in candidates[1:]:
        if math.dist(point, best_point) > AUDIT_TOL:
            raise InternalCheckError(
                f"two distinct KKT candidates found: {best_point} vs {point}"
            )
    multipliers = tuple(best_mus.get(j, 0.0) for j in range(len(rows)))
    product = (best_point[0] - d[0]) * (best_point[1] - d[1])
    return NbsResult(best_point, multipliers, best_caps, product)


def nbs_mac(p1: float, p2: float) -> NbsResult:
    """Closed-form NBS of the two-user MAC bargaining problem.

    The sum-rate face is always the unique active constraint, so both users
    gain exactly half of the sum-rate slack above their safe rates.
    """
    if p1 <= 0 or p2 <= 0:
        raise InvalidParameterError("MAC powers must be > 0")
    r0 = mac_safe_rates(p1, p2)
    phi0 = cap(p1 + p2)
    slack = phi0 - r0.r1 - r0.r2
    mu1 = 2.0 / slack
    gain = slack / 2.0
    point = (r0.r1 + gain, r0.r2 + gain)
    return NbsResult(point, (mu1,), (False, False), gain * gain)


def mac_problem(p1: float, p2: float) -> BargainingProblem:
    """The MAC region paired with its safe-rate disagreement point."""
    r0 = mac_safe_rates(p1, p2)
    return BargainingProblem(mac_region(p1, p2), (r0.r1, r0.r2))


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximisation of a unimodal function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    xs = [(a, f(a)), (b, f(b)), (c, fc), (d, fd)]
    return max(xs, key=lambda t: t[1])


def nbs_concave(frontier: TdmFrontier | ParetoChain, d0: Sequence[float]) -> NbsResult:
    """NBS on a concave, strictly monotone frontier by golden-section search.

    Works on the parametric time-division curve and on piecewise-linear
    chains; the Nash product is log-concave along a concave frontier, hence
    unimodal on the individually rational portion.
    """
    d1, d2 = d0
    if isinstance(frontier, TdmFrontier):
        if frontier.best_strict_margin(d0) <= 1e-12:
            raise NotEssentialError("TDM frontier never strictly dominates the disagreement point")
        clipped = frontier.clip(d0)

        def product_at(rho: float) -> float:
            x, y = frontier.point(rho)
            return (x - d1) * (y - d2)

        rho, best = _golden_max(product_at, clipped.rho_lo, clipped.rho_hi, GOLDEN_TOL)
        point = frontier.point(rho)
        return NbsResult(point, (), (False, False), best, frontier_param=rho)

    if isinstance(frontier, ParetoChain):
        if frontier.best_strict_margin(d0) <= 1e-12:
            raise NotEssentialError("frontier never strictly dominates the disagreement point")
        clipped = frontier.clip(d0)
        lo, hi = clipped.x_range
        if hi - lo <= 1e-15:
            pt = clipped.points[0]
            return NbsResult(pt, (), (False, False), (pt[0] - d1) * (pt[1] - d2), frontier_param=lo)

        def product_at_x(x: float) -> float:
            return (x - d1) * (clipped.value_at(x) - d2)

        x, best = _golden_max(product_at_x, lo, hi, GOLDEN_TOL)
        # kinks can beat the interior of a bracket; check chain vertices too
        for vx, vy in clipped.points:
            val = (vx - d1) * (vy - d2)
            if val > best:
                x, best = vx, val
        point = (x, clipped.value_at(x))
        return NbsResult(point, (), (False, False), best, frontier_param=x)

    raise TypeError(f"unsupported frontier type {type(frontier)!r}")
