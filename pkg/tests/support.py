"""Shared test helpers: independent oracles and random instance generators.

The oracles here deliberately avoid the library's solver paths: the Nash
product is maximised by brute-force grid scans and the equilibrium pair is
recovered from the raw linear system with numpy, so agreement with the
closed-form/active-set code is a real cross-check.
"""

from __future__ import annotations

import numpy as np

import icbargain as ib


# -- Nash-product grid oracles ----------------------------------------------------


def _column_scan(poly: ib.RatePolytope, d0, xs: np.ndarray):
    """Best feasible point per grid abscissa.

    For abscissa x the Nash product is non-decreasing in the ordinate above
    d0, so the best feasible grid point of a column is its frontier point;
    the full n x n grid therefore collapses to one exact column maximum each.
    """
    ys = np.full(xs.shape, poly.caps[1])
    for row in poly.rows:
        ys = np.minimum(ys, (row.bound - row.coef[0] * xs) / row.coef[1])
    feasible = ys >= -1e-15
    prod = np.where(
        feasible, np.maximum(xs - d0[0], 0.0) * np.maximum(ys - d0[1], 0.0), -1.0
    )
    k = int(np.argmax(prod))
    return (float(xs[k]), float(max(ys[k], 0.0))), float(prod[k])


def grid_nash_max(poly: ib.RatePolytope, d0, n: int = 2001):
    """Feasible-grid Nash-product maximum with one local refinement pass.

    Returns ((x, y), product, coarse_argmax): the refined maximum plus the
    argmax of the coarse n x n scan (used for the one-grid-pitch check).
    """
    c1 = poly.caps[0]
    xs = np.linspace(0.0, c1, n)
    coarse_pt, coarse_val = _column_scan(poly, d0, xs)
    pitch = c1 / (n - 1)
    lo = max(coarse_pt[0] - pitch, 0.0)
    hi = min(coarse_pt[0] + pitch, c1)
    fine_pt, fine_val = _column_scan(poly, d0, np.linspace(lo, hi, n))
    if fine_val > coarse_val:
        return fine_pt, fine_val, coarse_pt
    return coarse_pt, coarse_val, coarse_pt


def grid_nash_max_literal(poly: ib.RatePolytope, d0, n: int = 501):
    """Plain n x n Cartesian feasible-grid maximum (slow; oracle self-check)."""
    xs = np.linspace(0.0, poly.caps[0], n)[:, None]
    ys = np.linspace(0.0, poly.caps[1], n)[None, :]
    feasible = np.ones((n, n), dtype=bool)
    for row in poly.rows:
        feasible &= row.coef[0] * xs + row.coef[1] * ys <= row.bound
    prod = np.maximum(xs - d0[0], 0.0) * np.maximum(ys - d0[1], 0.0)
    prod = np.where(feasible, prod, -1.0)
    k = int(np.argmax(prod))
    i, j = divmod(k, n)
    return (float(xs[i, 0]), float(ys[0, j])), float(prod[i, j])


def tdm_grid_nash_max(frontier: ib.TdmFrontier, d0, n: int = 20001):
    """Dense parameter-scan Nash maximum over the time-division frontier."""
    best_val, best_pt, best_rho = -1.0, None, None
    for i in range(n):
        rho = i / (n - 1)
        x, y = frontier.point(rho)
        val = max(x - d0[0], 0.0) * max(y - d0[1], 0.0)
        if val > best_val:
            best_val, best_pt, best_rho = val, (x, y), rho
    return best_pt, best_val, best_rho


def spe_mac_matrix_oracle(p1: float, p2: float, prob1: float, prob2: float):
    """Equilibrium pair from the raw 4x4 linear system, solved by numpy."""
    r0 = ib.mac_safe_rates(p1, p2)
    phi0 = ib.cap(p1 + p2)
    m = np.array(
        [
            [1.0 - prob2, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, -(1.0 - prob1)],
            [1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 1.0],
        ]
    )
    rhs = np.array([-prob2 * r0.r1, prob1 * r0.r2, phi0, phi0])
    gbar1, gbar2, gtil1, gtil2 = np.linalg.solve(m, rhs)
    return (float(gbar1), float(gbar2)), (float(gtil1), float(gtil2))


# -- random instances --------------------------------------------------------------


def random_strong(rng: np.random.Generator) -> ib.ChannelParams:
    a, b = rng.uniform(1.0, 4.0, 2)
    p1, p2 = 10.0 ** (rng.uniform(5.0, 25.0, 2) / 10.0)
    return ib.ChannelParams(float(a), float(b), float(p1), float(p2))


def random_weak_cooperating(rng: np.random.Generator) -> ib.ChannelParams:
    for _ in range(10_000):
        a, b = rng.uniform(0.02, 0.98, 2)
        p1, p2 = 10.0 ** (rng.uniform(12.0, 28.0, 2) / 10.0)
        params = ib.ChannelParams(float(a), float(b), float(p1), float(p2))
        if ib.phase1(params).cooperate:
            return params
    raise RuntimeError("no cooperating weak instance found")


def random_mixed_cooperating(rng: np.random.Generator) -> ib.ChannelParams:
    for _ in range(10_000):
        a = float(rng.uniform(0.02, 0.98))
        b = float(rng.uniform(1.0, 4.0))
        if rng.random() < 0.5:
            a, b = b, a
        p1, p2 = 10.0 ** (rng.uniform(12.0, 28.0, 2) / 10.0)
        params = ib.ChannelParams(a, b, float(p1), float(p2))
        if ib.phase1(params).cooperate:
            return params
    raise RuntimeError("no cooperating mixed instance found")


def random_cooperating(rng: np.random.Generator, regime: str) -> ib.ChannelParams:
    if regime == "strong":
        return random_strong(rng)
    if regime == "weak":
        return random_weak_cooperating(rng)
    if regime == "mixed":
        return random_mixed_cooperating(rng)
    raise ValueError(regime)


def phase1_problem(params: ib.ChannelParams):
    """Region, disagreement point and bargaining problem after phase 1."""
    outcome = ib.phase1(params)
    assert outcome.cooperate, "instance generator must yield cooperating channels"
    region = ib.hk_region(params, outcome.split)
    d0 = ib.disagreement_point(params)
    return region, d0, ib.BargainingProblem(region, (d0.r1, d0.r2))


def regular_instance_pool(rng: np.random.Generator, count: int):
    """Cooperating weak/mixed instances whose phase-2 problem is regular."""
    pool = []
    while len(pool) < count:
        params = (random_weak_cooperating if rng.random() < 0.5 else random_mixed_cooperating)(rng)
        region, d0, problem = phase1_problem(params)
        if ib.is_regular(params, region, d0).regular:
            pool.append((params, region, d0, problem))
    return pool


def random_mac_problem(rng: np.random.Generator):
    p1, p2 = 10.0 ** (rng.uniform(0.0, 30.0, 2) / 10.0)
    return float(p1), float(p2), ib.mac_problem(float(p1), float(p2))
