import numpy as np
import pytest

from icbargain import (
    GdofParams,
    InvalidParameterError,
    NotEssentialError,
    UnsupportedRegimeError,
    gdof_disagreement,
    gdof_nbs,
    gdof_nbs_tdm,
    gdof_phase1,
    gdof_region,
    gdof_tdm_region,
)

import support


def test_params_validation():
    with pytest.raises(InvalidParameterError):
        GdofParams(0.0, 1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        GdofParams(1.0, -0.5, 1.0)


def test_strong_region_bound():
    region = gdof_region(GdofParams(1.0, 1.2, 1.5))
    assert region.tag == "D1"
    assert region.polytope.rows[0].bound == pytest.approx(1.2, abs=0)
    assert region.polytope.rows[0].coef == (1.0, 1.0)


def test_mixed_region_bounds():
    region = gdof_region(GdofParams(1.0, 1.2, 0.8))
    assert region.tag == "D3"
    bounds = {r.label: r.bound for r in region.polytope.rows}
    assert bounds["d1+t1*d2"] == pytest.approx(1.2, abs=1e-15)
    assert bounds["d1+2t1*d2"] == pytest.approx(2.2, abs=1e-15)


def test_weak_region_touches_simplex():
    region = gdof_region(GdofParams(1.0, 0.5, 0.5))
    assert region.tag == "D2"
    assert region.polytope.rows[0].bound == pytest.approx(1.0, abs=0)


def test_weak_rows_carry_scaled_coefficients():
    t1 = 0.7
    region = gdof_region(GdofParams(t1, 0.3, 0.6))
    coefs = [r.coef for r in region.polytope.rows]
    assert coefs == [(1.0, t1), (2.0, t1), (1.0, 2.0 * t1)]


def test_unsupported_corner_rejected():
    with pytest.raises(UnsupportedRegimeError):
        gdof_region(GdofParams(1.0, 0.5, 1.5))


@pytest.mark.parametrize(
    "theta,expected",
    [
        ((1.0, 1.2, 0.8), (0.0, 0.2)),
        ((1.0, 0.7, 1.5), (0.3, 0.0)),
        ((1.0, 1.2, 1.5), (0.0, 0.0)),
        ((2.0, 0.5, 1.0), (0.5, 0.5)),
    ],
)
def test_disagreement_cases(theta, expected):
    d0 = gdof_disagreement(GdofParams(*theta))
    assert d0 == pytest.approx(expected, abs=1e-15)


def test_phase1_strong_and_mixed_always_cooperate():
    assert gdof_phase1(GdofParams(1.0, 1.5, 2.0)).cooperate
    assert gdof_phase1(GdofParams(1.0, 1.2, 0.8)).cooperate


def test_phase1_weak_boundary_fails_exactly():
    theta = GdofParams(1.0, 0.4, 0.4)
    d0 = gdof_disagreement(theta)
    region = gdof_region(theta)
    sum_row = region.polytope.rows[0]
    # bitwise equality: the disagreement pair sits exactly on the sum face
    assert d0.d1 + d0.d2 == sum_row.bound
    out = gdof_phase1(theta)
    assert not out.cooperate


def test_phase1_weak_interior_cooperates():
    out = gdof_phase1(GdofParams(1.0, 0.8, 0.7))
    assert out.cooperate


def test_phase1_weak_boundary_beyond_half_exponents():
    # theta2 + theta3 <= min(1, theta1) puts the disagreement pair exactly on
    # the sum face even when one exponent exceeds one half
    out = gdof_phase1(GdofParams(1.0, 0.6, 0.3))
    assert not out.cooperate


def test_disagreement_strictly_inside_strong_and_mixed():
    # exhaustive sweep at step 0.05: the disagreement pair always satisfies
    # every row strictly, so the problem is essential
    grid = [k * 0.05 for k in range(1, 41)]
    checked = 0
    for t1 in grid:
        for t2 in grid:
            if t2 < t1:
                continue
            for t3 in grid:
                if t3 >= 1.0:
                    tag = "D1"
                elif t3 < 1.0:
                    tag = "D3"
                theta = GdofParams(t1, t2, t3)
                region = gdof_region(theta)
                assert region.tag == tag
                d0 = gdof_disagreement(theta)
                for row in region.polytope.rows:
                    assert row.value(d0) < row.bound
                checked += 1
    assert checked > 10_000


def test_nbs_mixed_example_dominates_tdm():
    theta = GdofParams(1.0, 1.2, 0.8)
    hk = gdof_nbs(theta)
    tdm = gdof_nbs_tdm(theta)
    assert hk.point == pytest.approx((0.5, 0.7), abs=1e-12)
    assert tdm.point == pytest.approx((0.4, 0.6), abs=1e-12)
    assert hk.point[0] > tdm.point[0] and hk.point[1] > tdm.point[1]


def test_nbs_strong_unit_square_caps():
    # bound > 2 makes the sum row strictly redundant: both caps bind at (1, 1)
    theta = GdofParams(1.0, 2.5, 3.0)
    region = gdof_region(theta)
    assert region.polytope.rows[0].bound > 2.0
    res = gdof_nbs(theta)
    assert res.point == (1.0, 1.0)
    assert res.active_caps == (True, True)


def test_nbs_points_feasible_random():
    rng = np.random.default_rng(30)
    for _ in range(200):
        t1 = float(rng.uniform(0.05, 2.0))
        t2 = float(rng.uniform(t1, 2.0))
        t3 = float(rng.uniform(0.05, 2.0))
        theta = GdofParams(t1, t2, t3)
        res = gdof_nbs(theta)
        region = gdof_region(theta)
        assert region.polytope.contains(res.point, tol=1e-9)


def test_nbs_weak_failure_propagates():
    with pytest.raises(NotEssentialError):
        gdof_nbs(GdofParams(1.0, 0.4, 0.4))


def test_nbs_tdm_outside_simplex_reported():
    # strongly uncoordinated-favourable exponents: d0 beats all of D4
    with pytest.raises(NotEssentialError):
        gdof_nbs_tdm(GdofParams(0.2, 0.2, 0.1))


def test_mixed_nbs_matches_grid_oracle():
    theta = GdofParams(1.0, 1.2, 0.8)
    region = gdof_region(theta).polytope
    d0 = gdof_disagreement(theta)
    _, gp, _ = support.grid_nash_max(region, d0)
    assert gdof_nbs(theta).nash_product == pytest.approx(gp, abs=1e-6)


def test_simplex_at_unit_exponents_matches_strong_face():
    region = gdof_region(GdofParams(1.0, 1.0, 1.0))
    assert region.tag == "D1"
    assert region.polytope.rows[0].bound == 1.0
    assert gdof_tdm_region().polytope.rows[0].bound == 1.0
