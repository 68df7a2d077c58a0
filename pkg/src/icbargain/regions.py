"""Achievable-rate regions: polytopes, efficient frontiers, and the TDM curve.

Regions live in the closed first quadrant (optionally shifted by a floor, used
by affine-transform tests) and are downward closed: per-user caps plus a small
number of weighted-sum constraints with positive coefficients.  Vertices are
enumerated exactly by pairwise intersection of constraint lines; the efficient
frontier is kept as an explicit left-to-right chain so that clipping against a
disagreement point, monotonicity checks, and segment sweeps stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

from .channel import ChannelParams, Interference, RatePair, cap, classify_regime
from .errors import DegenerateRegionError, InvalidParameterError

# Feasibility / constraint-activity tolerance in rate units.
FEAS_TOL = 1e-9
# Vertices closer than this are merged.
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class PowerSplit:
    """Fractions of power assigned to the private messages of users 1 and 2."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if not math.isfinite(v) or not 0.0 <= v <= 1.0:
                raise InvalidParameterError(f"{name} must lie in [0, 1], got {v!r}")

    def swapped(self) -> "PowerSplit":
        return PowerSplit(self.beta, self.alpha)


@dataclass(frozen=True)
class ConstraintRow:
    """One weighted-sum constraint coef[0]*g1 + coef[1]*g2 <= bound."""

    coef: tuple[float, float]
    bound: float
    label: str

    def value(self, point: Sequence[float]) -> float:
        return self.coef[0] * point[0] + self.coef[1] * point[1]

    def slack(self, point: Sequence[float]) -> float:
        return self.bound - self.value(point)


@dataclass(frozen=True)
class RatePolytope:
    """A bounded rate region {g : floor <= g <= caps, A g <= B}.

    ``scheme`` records which construction produced the region (e.g.
    ``HK(0.02,0.05)``, ``StrongCapacity``, ``MAC``, ``GdofScaled:D3``); ``split``
    carries the power split for superposition-coding regions.
    """

    caps: tuple[float, float]
    rows: tuple[ConstraintRow, ...]
    scheme: str
    split: PowerSplit | None = None
    floor: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        for c in self.caps:
            if not math.isfinite(c):
                raise InvalidParameterError("caps must be finite")
        if self.caps[0] < self.floor[0] or self.caps[1] < self.floor[1]:
            raise InvalidParameterError("caps must dominate the floor")
        for row in self.rows:
            if row.coef[0] <= 0.0 or row.coef[1] <= 0.0:
                raise InvalidParameterError("row coefficients must be positive")
            if row.slack(self.floor) < 0.0:
                raise InvalidParameterError(
                    f"region is empty: row {row.label} excludes the floor corner"
                )

    # -- membership -----------------------------------------------------------

    def contains(self, point: Sequence[float], tol: float = FEAS_TOL) -> bool:
        x, y = point
        if x < self.floor[0] - tol or y < self.floor[1] - tol:
            return False
        if x > self.caps[0] + tol or y > self.caps[1] + tol:
            return False
        return all(row.slack(point) >= -tol for row in self.rows)

    def max_x(self) -> float:
        """Largest feasible first coordinate (attained with g2 at the floor)."""
        best = self.caps[0]
        for row in self.rows:
            best = min(best, (row.bound - row.coef[1] * self.floor[1]) / row.coef[0])
        return best

    def max_y(self) -> float:
        best = self.caps[1]
        for row in self.rows:
            best = min(best, (row.bound - row.coef[0] * self.floor[0]) / row.coef[1])
        return best

    def frontier_height(self, x: float) -> float:
        """Largest feasible g2 for a fixed g1 = x (x must be within range)."""
        best = self.caps[1]
        for row in self.rows:
            best = min(best, (row.bound - row.coef[0] * x) / row.coef[1])
        return best

    # -- vertex enumeration ----------------------------------------------------

    def _halfplanes(self) -> list[tuple[float, float, float]]:
        hp = [
            (-1.0, 0.0, -self.floor[0]),
            (0.0, -1.0, -self.floor[1]),
            (1.0, 0.0, self.caps[0]),
            (0.0, 1.0, self.caps[1]),
        ]
        hp.extend((row.coef[0], row.coef[1], row.bound) for row in self.rows)
        return hp

    def all_vertices(self) -> list[tuple[float, float]]:
        """Every vertex of the polytope, floor corners included, sorted by (x, y)."""
        hp = self._halfplanes()
        pts: list[tuple[float, float]] = []
        for i in range(len(hp)):
            a1, b1, c1 = hp[i]
            for j in range(i + 1, len(hp)):
                a2, b2, c2 = hp[j]
                det = a1 * b2 - a2 * b1
                if abs(det) < 1e-14:
                    continue
                x = (c1 * b2 - c2 * b1) / det
                y = (a1 * c2 - a2 * c1) / det
                if self.contains((x, y)):
                    pts.append((x, y))
        return _dedupe_points(pts)

    def redundant_row_indices(self, tol: float = FEAS_TOL) -> tuple[int, ...]:
        """Rows that are nowhere active on the feasible set (inactive bounds)."""
        verts = self.all_vertices()
        out = []
        for j, row in enumerate(self.rows):
            if all(row.slack(v) > tol for v in verts):
                out.append(j)
        return tuple(out)

    def swapped(self) -> "RatePolytope":
        rows = tuple(
            ConstraintRow((r.coef[1], r.coef[0]), r.bound, r.label + "~swap")
            for r in self.rows
        )
        split = self.split.swapped() if self.split is not None else None
        return RatePolytope(
            caps=(self.caps[1], self.caps[0]),
            rows=rows,
            scheme=self.scheme + "~swap",
            split=split,
            floor=(self.floor[1], self.floor[0]),
        )

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "caps": list(self.caps),
            "rows": [
                {"coef": list(r.coef), "bound": r.bound, "label": r.label}
                for r in self.rows
            ],
            "vertices": [list(v) for v in self.all_vertices()],
        }


def _dedupe_points(pts: Iterable[Sequence[float]], tol: float = MERGE_TOL) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for p in sorted((float(p[0]), float(p[1])) for p in pts):
        if any(abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol for q in out):
            continue
        out.append(p)
    return out


def extreme_points(region: "RatePolytope") -> list[RatePair]:
    """Vertices of the region away from the floor lines, by increasing g1.

    These are the corner points of the efficient boundary; floor corners such
    as the origin are excluded.  Raises if the region has no such vertex.
    """
    fx, fy = region.floor
    pts = [
        v
        for v in region.all_vertices()
        if v[0] > fx + MERGE_TOL and v[1] > fy + MERGE_TOL
    ]
    if not pts:
        raise DegenerateRegionError(
            f"region {region.scheme!r} has no vertex off the floor lines"
        )
    return [RatePair(*p) for p in pts]


# -- superposition-coding and reference regions --------------------------------


def hk_power_split(params: ChannelParams) -> PowerSplit:
    """Fixed near-optimal private-power split for each interference regime.

    Strong: both users send common messages only.  Weak: each private message
    is received at the noise level of the opposite receiver (fraction 1/INR,
    clamped to 1).  Mixed: the strongly interfering user goes common-only.
    Degenerate splits are returned as-is; incentive filtering happens in phase 1.
    """
    tag = classify_regime(params).tag
    if tag is Interference.STRONG:
        return PowerSplit(0.0, 0.0)
    alpha = min(1.0 / params.inr2, 1.0) if params.inr2 > 1.0 else 1.0
    beta = min(1.0 / params.inr1, 1.0) if params.inr1 > 1.0 else 1.0
    if tag is Interference.WEAK:
        return PowerSplit(alpha, beta)
    if tag is Interference.MIXED_A_WEAK:
        return PowerSplit(0.0, beta)
    return PowerSplit(alpha, 0.0)  # MIXED_B_WEAK: swapped analogue


def hk_region(params: ChannelParams, split: PowerSplit) -> RatePolytope:
    """Achievable region of superposition coding with a fixed power split.

    Five bounds: per-user caps plus weighted-sum rows for g1+g2, 2*g1+g2 and
    g1+2*g2.  Redundant rows are kept so the construction stays traceable.
    """
    a, b, p1, p2 = params.a, params.b, params.p1, params.p2
    al, be = split.alpha, split.beta
    n1 = 1.0 + a * be * p2  # noise + private interference seen at receiver 1
    n2 = 1.0 + b * al * p1

    phi1 = cap(p1 / n1)
    phi2 = cap(p2 / n2)
    sum1 = cap((p1 + a * (1.0 - be) * p2) / n1) + cap(be * p2 / n2)
    sum2 = cap(al * p1 / n1) + cap((p2 + b * (1.0 - al) * p1) / n2)
    sum3 = cap((al * p1 + a * (1.0 - be) * p2) / n1) + cap(
        (be * p2 + b * (1.0 - al) * p1) / n2
    )
    phi3 = min(sum1, sum2, sum3)
    phi4 = (
        cap((p1 + a * (1.0 - be) * p2) / n1)
        + cap(al * p1 / n1)
        + cap((be * p2 + b * (1.0 - al) * p1) / n2)
    )
    phi5 = (
        cap((p2 + b * (1.0 - al) * p1) / n2)
        + cap(be * p2 / n2)
        + cap((al * p1 + a * (1.0 - be) * p2) / n1)
    )
    rows = (
        ConstraintRow((1.0, 1.0), phi3, "r1+r2"),
        ConstraintRow((2.0, 1.0), phi4, "2r1+r2"),
        ConstraintRow((1.0, 2.0), phi5, "r1+2r2"),
    )
    scheme = f"HK({al:.6g},{be:.6g})"
    return RatePolytope(caps=(phi1, phi2), rows=rows, scheme=scheme, split=split)


def strong_capacity_region(params: ChannelParams) -> RatePolytope:
    """Capacity region under strong interference: caps plus one sum bound."""
    if classify_regime(params).tag is not Interference.STRONG:
        raise InvalidParameterError("strong_capacity_region requires a >= 1 and b >= 1")
    phi6 = min(cap(params.p1 + params.inr1), cap(params.inr2 + params.p2))
    rows = (ConstraintRow((1.0, 1.0), phi6, "r1+r2"),)
    return RatePolytope(
        caps=(cap(params.p1), cap(params.p2)), rows=rows, scheme="StrongCapacity"
    )


def mac_region(p1: float, p2: float) -> RatePolytope:
    """Two-user MAC capacity region (pentagon)."""
    if p1 <= 0 or p2 <= 0:
        raise InvalidParameterError("MAC powers must be > 0")
    rows = (ConstraintRow((1.0, 1.0), cap(p1 + p2), "r1+r2"),)
    return RatePolytope(caps=(cap(p1), cap(p2)), rows=rows, scheme="MAC")


# -- efficient frontier chains --------------------------------------------------


@dataclass(frozen=True)
class ParetoChain:
    """The weakly-efficient boundary of a region as an ordered polyline.

    Points run left to right: first coordinates non-decreasing, second
    non-increasing.  The leading horizontal and trailing vertical pieces of the
    boundary (where one user's payoff is pinned at its maximum) are included;
    they are what regularity checks look for after clipping.
    """

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise InvalidParameterError("a frontier needs at least one point")
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if x1 < x0 - MERGE_TOL or y1 > y0 + MERGE_TOL:
                raise InvalidParameterError("frontier points must step right and down")

    def segments(self, min_extent: float = 1e-12) -> list[tuple[tuple[float, float], tuple[float, float]]]:
        segs = []
        for p, q in zip(self.points, self.points[1:]):
            if max(abs(q[0] - p[0]), abs(q[1] - p[1])) > min_extent:
                segs.append((p, q))
        return segs

    @property
    def x_range(self) -> tuple[float, float]:
        return self.points[0][0], self.points[-1][0]

    def value_at(self, x: float) -> float:
        """Height of the chain at abscissa ``x`` (largest y on the chain)."""
        lo, hi = self.x_range
        if x < lo - FEAS_TOL or x > hi + FEAS_TOL:
            raise InvalidParameterError(f"x={x} outside frontier range [{lo}, {hi}]")
        x = min(max(x, lo), hi)
        best = None
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if x0 - FEAS_TOL <= x <= x1 + FEAS_TOL:
                if abs(x1 - x0) < 1e-15:
                    y = max(y0, y1)
                else:
                    t = (x - x0) / (x1 - x0)
                    y = y0 + t * (y1 - y0)
                best = y if best is None else max(best, y)
        if best is None:  # single-point chain
            best = self.points[0][1]
        return best

    def best_strict_margin(self, d0: Sequence[float]) -> float:
        """max over the chain of min(x - d0[0], y - d0[1]); > 0 iff some point
        strictly dominates the disagreement point."""
        d1, d2 = d0
        best = -math.inf
        for p in self.points:
            best = max(best, min(p[0] - d1, p[1] - d2))
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            dx, dy = x1 - x0, y1 - y0
            denom = dx - dy
            if abs(denom) > 1e-15:
                t = ((y0 - d2) - (x0 - d1)) / denom
                if 0.0 < t < 1.0:
                    pt = (x0 + t * dx, y0 + t * dy)
                    best = max(best, min(pt[0] - d1, pt[1] - d2))
        return best

    def clip(self, d0: Sequence[float]) -> "ParetoChain":
        """Restrict the chain to {g >= d0} (the individually rational portion)."""
        d1, d2 = d0
        kept: list[tuple[float, float]] = []

        def push(pt: tuple[float, float]) -> None:
            if kept and abs(kept[-1][0] - pt[0]) <= MERGE_TOL and abs(kept[-1][1] - pt[1]) <= MERGE_TOL:
                return
            kept.append(pt)

        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            a, b = (x0, y0), (x1, y1)
            # clip against x >= d1 (chain x is non-decreasing)
            if b[0] < d1:
                continue
            if a[0] < d1:
                t = (d1 - a[0]) / (b[0] - a[0])
                a = (d1, a[1] + t * (b[1] - a[1]))
            # clip against y >= d2 (chain y is non-increasing)
            if a[1] < d2:
                continue
            if b[1] < d2:
                t = (a[1] - d2) / (a[1] - b[1])
                b = (a[0] + t * (b[0] - a[0]), d2)
            push(a)
            push(b)
        if not kept:
            # the whole chain is clipped away: d0 itself is efficient
            x = min(max(d1, self.x_range[0]), self.x_range[1])
            kept = [(x, self.value_at(x))]
        return ParetoChain(tuple(kept))

    def is_strictly_monotone(self, tol: float = FEAS_TOL) -> bool:
        """True when no segment is (numerically) horizontal or vertical."""
        for (x0, y0), (x1, y1) in self.segments(min_extent=tol):
            dx, dy = x1 - x0, y0 - y1
            if dx <= tol or dy <= tol:
                return False
        return True

    def as_dict(self) -> dict:
        return {"points": [list(p) for p in self.points]}


def efficient_frontier(region: RatePolytope) -> ParetoChain:
    """Weakly-efficient boundary chain of a polytope, tails included."""
    fx, fy = region.floor
    x_max = region.max_x()
    y_max = region.max_y()
    pts: list[tuple[float, float]] = [(fx, y_max)]
    for v in region.all_vertices():
        if v[0] <= fx + MERGE_TOL or v[0] >= x_max - MERGE_TOL:
            continue
        if abs(v[1] - region.frontier_height(v[0])) <= FEAS_TOL:
            pts.append(v)
    pts.append((x_max, region.frontier_height(x_max)))
    pts.append((x_max, fy))
    merged: list[tuple[float, float]] = []
    for p in pts:
        if merged and abs(merged[-1][0] - p[0]) <= MERGE_TOL and abs(merged[-1][1] - p[1]) <= MERGE_TOL:
            continue
        merged.append(p)
    # drop interior points that are collinear with their neighbours
    cleaned: list[tuple[float, float]] = []
    for p in merged:
        while len(cleaned) >= 2:
            (x0, y0), (x1, y1) = cleaned[-2], cleaned[-1]
            cross = (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0)
            if abs(cross) <= 1e-12:
                cleaned.pop()
            else:
                break
        cleaned.append(p)
    return ParetoChain(tuple(cleaned))


# -- time-division region --------------------------------------------------------


@dataclass(frozen=True)
class TdmAllocation:
    """Time fractions assigned to the two users."""

    rho1: float
    rho2: float

    def __post_init__(self) -> None:
        if self.rho1 < 0 or self.rho2 < 0 or self.rho1 + self.rho2 > 1.0 + 1e-12:
            raise InvalidParameterError("time fractions must be >= 0 and sum to <= 1")


@dataclass(frozen=True)
class TdmFrontier:
    """Efficient frontier of the time-division region, rho1 + rho2 = 1.

    Parametrised by rho = rho1 in [rho_lo, rho_hi]; the curve is
    (rho*cap(p1/rho), (1-rho)*cap(p2/(1-rho))) with the continuous extension
    0*cap(p/0) = 0 at the endpoints.  Strictly monotone and concave.
    """

    p1: float
    p2: float
    rho_lo: float = 0.0
    rho_hi: float = 1.0
    samples: int = 1025

    def __post_init__(self) -> None:
        if self.p1 <= 0 or self.p2 <= 0:
            raise InvalidParameterError("TDM powers must be > 0")
        if self.samples < 2:
            raise InvalidParameterError("need at least 2 samples")
        if not 0.0 <= self.rho_lo <= self.rho_hi <= 1.0:
            raise InvalidParameterError("need 0 <= rho_lo <= rho_hi <= 1")

    def point(self, rho: float) -> tuple[float, float]:
        if not -1e-12 <= rho <= 1.0 + 1e-12:
            raise InvalidParameterError(f"rho must lie in [0, 1], got {rho}")
        rho = min(max(rho, 0.0), 1.0)
        x = rho * cap(self.p1 / rho) if rho > 0.0 else 0.0
        rem = 1.0 - rho
        y = rem * cap(self.p2 / rem) if rem > 0.0 else 0.0
        return (x, y)

    def allocation_at(self, rho: float) -> TdmAllocation:
        return TdmAllocation(rho, 1.0 - rho)

    def grid(self) -> list[tuple[float, float]]:
        n = self.samples
        step = (self.rho_hi - self.rho_lo) / (n - 1)
        return [self.point(self.rho_lo + i * step) for i in range(n)]

    def as_chain(self, samples: int | None = None) -> ParetoChain:
        n = samples if samples is not None else self.samples
        step = (self.rho_hi - self.rho_lo) / (n - 1)
        return ParetoChain(tuple(self.point(self.rho_lo + i * step) for i in range(n)))

    def rho_from_x(self, x: float) -> float:
        """Invert the (strictly increasing) first coordinate by bisection."""
        lo, hi = self.rho_lo, self.rho_hi
        if x <= self.point(lo)[0]:
            return lo
        if x >= self.point(hi)[0]:
            return hi
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if self.point(mid)[0] < x:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def rho_from_y(self, y: float) -> float:
        """Invert the (strictly decreasing) second coordinate by bisection."""
        lo, hi = self.rho_lo, self.rho_hi
        if y >= self.point(lo)[1]:
            return lo
        if y <= self.point(hi)[1]:
            return hi
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if self.point(mid)[1] > y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def contains(self, point: Sequence[float], tol: float = FEAS_TOL) -> bool:
        """Membership in the region under the curve (first quadrant hypograph)."""
        x, y = point
        if x < -tol or y < -tol:
            return False
        if x > self.point(1.0)[0] + tol:
            return False
        rho = self.rho_from_x(max(x, 0.0))
        return y <= self.point(rho)[1] + max(tol, 1e-11)

    def best_strict_margin(self, d0: Sequence[float]) -> float:
        """Exact unimodal search for max over the curve of min(x-d1, y-d2)."""
        d1, d2 = d0

        def f(rho: float) -> float:
            x, y = self.point(rho)
            return min(x - d1, y - d2)

        lo, hi = self.rho_lo, self.rho_hi
        for _ in range(200):
            m1 = lo + (hi - lo) / 3.0
            m2 = hi - (hi - lo) / 3.0
            if f(m1) < f(m2):
                lo = m1
            else:
                hi = m2
        return max(f(lo), f(hi), f(0.5 * (lo + hi)))

    def clip(self, d0: Sequence[float]) -> "TdmFrontier":
        """Restrict the parameter range to the individually rational portion."""
        d1, d2 = d0
        lo = self.rho_from_x(d1) if d1 > self.point(self.rho_lo)[0] else self.rho_lo
        hi = self.rho_from_y(d2) if d2 > self.point(self.rho_hi)[1] else self.rho_hi
        if lo > hi:
            lo = hi = 0.5 * (lo + hi)
        return replace(self, rho_lo=lo, rho_hi=hi)

    def as_dict(self) -> dict:
        return {
            "scheme": "TDM",
            "p1": self.p1,
            "p2": self.p2,
            "rho_range": [self.rho_lo, self.rho_hi],
            "samples": self.samples,
        }


def tdm_frontier(p1: float, p2: float, samples: int = 1025) -> TdmFrontier:
    """Parametric time-division frontier with a dense sample grid."""
    return TdmFrontier(p1=p1, p2=p2, samples=samples)


Region = Union[RatePolytope, TdmFrontier]
Frontier = Union[ParetoChain, TdmFrontier]


def ir_frontier(feasible: Region | ParetoChain, d0: Sequence[float]) -> Frontier:
    """Efficient frontier restricted to allocations weakly dominating ``d0``.

    Degenerates to the single point ``d0`` when the disagreement point is
    itself efficient.  Raises if ``d0`` lies outside the region.
    """
    if isinstance(feasible, RatePolytope):
        if not feasible.contains(d0):
            raise InvalidParameterError("disagreement point lies outside the region")
        return efficient_frontier(feasible).clip(d0)
    if isinstance(feasible, TdmFrontier):
        if not feasible.contains(d0):
            raise InvalidParameterError("disagreement point lies outside the TDM region")
        return feasible.clip(d0)
    if isinstance(feasible, ParetoChain):
        return feasible.clip(d0)
    raise TypeError(f"unsupported feasible set {type(feasible)!r}")


# Closed-form corner points of the weak-regime superposition polytope; each is
# a vertex whenever it falls strictly inside the first quadrant.
def weak_closed_form_corners(region: RatePolytope) -> dict[str, tuple[float, float]]:
    phi1, phi2 = region.caps
    bounds = {row.coef: row.bound for row in region.rows}
    phi3 = bounds[(1.0, 1.0)]
    phi4 = bounds[(2.0, 1.0)]
    phi5 = bounds[(1.0, 2.0)]
    return {
        "cap1_with_2r1+r2": (phi1, phi4 - 2.0 * phi1),
        "2r1+r2_with_r1+r2": (phi4 - phi3, 2.0 * phi3 - phi4),
        "r1+r2_with_r1+2r2": (2.0 * phi3 - phi5, phi5 - phi3),
        "r1+2r2_with_cap2": (phi5 - 2.0 * phi2, phi2),
    }


def mixed_closed_form_corners(region: RatePolytope) -> dict[str, tuple[float, float]]:
    """Extra corner candidates when a 2:1-slope row is redundant (mixed regime)."""
    phi1, phi2 = region.caps
    phi3 = {row.coef: row.bound for row in region.rows}[(1.0, 1.0)]
    return {
        "cap1_with_r1+r2": (phi1, phi3 - phi1),
        "r1+r2_with_cap2": (phi3 - phi2, phi2),
    }
