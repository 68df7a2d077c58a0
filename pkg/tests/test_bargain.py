import numpy as np
import pytest

import icbargain as ib
from icbargain import (
    BargainingProblem,
    ChannelParams,
    Phase1Reason,
    PowerSplit,
    disagreement_point,
    hk_region,
    is_essential,
    is_regular,
    phase1,
)

import support


def test_mac_always_essential():
    rng = np.random.default_rng(0)
    for _ in range(50):
        _, _, problem = support.random_mac_problem(rng)
        assert is_essential(problem)


def test_strong_common_only_always_essential():
    rng = np.random.default_rng(1)
    for _ in range(50):
        params = support.random_strong(rng)
        region = hk_region(params, PowerSplit(0.0, 0.0))
        d0 = disagreement_point(params)
        assert is_essential(BargainingProblem(region, (d0.r1, d0.r2)))


def test_gdof_weak_boundary_not_essential():
    region = ib.gdof_region(ib.GdofParams(1.0, 0.4, 0.4)).polytope
    d0 = ib.gdof_disagreement(ib.GdofParams(1.0, 0.4, 0.4))
    assert d0 == (0.6, 0.6)
    assert not is_essential(BargainingProblem(region, (d0.d1, d0.d2)))


def test_essential_rejects_pareto_optimal_d0():
    region = ib.mac_region(10.0, 10.0)
    phi0 = region.rows[0].bound
    assert not is_essential(BargainingProblem(region, (phi0 / 2, phi0 / 2)))


# -- regularity ----------------------------------------------------------------------


def _report_for(params):
    out = phase1(params)
    assert out.cooperate
    region = hk_region(params, out.split)
    return is_regular(params, region, disagreement_point(params))


def test_strong_regular_iff_unit_gains():
    assert _report_for(ChannelParams(1.0, 1.0, 100.0, 100.0)).regular
    rep = _report_for(ChannelParams(3.0, 5.0, 100.0, 100.0))
    assert not rep.regular
    assert rep.failed_conditions


def test_mixed_example_regular():
    rep = _report_for(ChannelParams(0.2, 1.2, 10.0, 100.0))
    assert rep.regular and rep.essential
    assert rep.failed_conditions == ()


def test_weak_example_regular():
    rep = _report_for(ChannelParams(0.2, 0.5, 100.0, 100.0))
    assert rep.regular


def test_failed_conditions_empty_iff_regular():
    rng = np.random.default_rng(2)
    for gen in (support.random_weak_cooperating, support.random_mixed_cooperating):
        for _ in range(15):
            params = gen(rng)
            rep = _report_for(params)
            assert rep.regular == (len(rep.failed_conditions) == 0)


def test_closed_form_matches_structural_on_random_instances():
    rng = np.random.default_rng(3)
    gens = (support.random_strong, support.random_weak_cooperating, support.random_mixed_cooperating)
    for gen in gens:
        for _ in range(15):
            params = gen(rng)
            rep = _report_for(params)
            assert rep.regular == rep.structural_monotone, params


def test_swapped_mixed_conditions_match():
    # the mixed-regime conditions are invariant under relabeling the users
    params = ChannelParams(1.2, 0.2, 100.0, 10.0)
    rep = _report_for(params)
    rep_swapped = _report_for(params.swapped())
    assert rep.regular == rep_swapped.regular


def test_is_regular_rejects_mismatched_region():
    params = ChannelParams(0.2, 1.2, 10.0, 100.0)
    wrong = hk_region(params, PowerSplit(0.5, 0.5))
    with pytest.raises(ib.InvalidParameterError):
        is_regular(params, wrong, disagreement_point(params))


# -- phase 1 --------------------------------------------------------------------------


def test_phase1_strong_always_cooperates():
    out = phase1(ChannelParams(3.0, 5.0, 100.0, 100.0))
    assert out.cooperate and out.reason is Phase1Reason.OK
    assert out.split == PowerSplit(0.0, 0.0)


def test_phase1_mixed_example():
    out = phase1(ChannelParams(0.2, 1.2, 10.0, 100.0))
    assert out.cooperate
    assert out.split.alpha == 0.0
    assert out.split.beta == pytest.approx(0.05, abs=1e-15)
    assert out.scheme == "HK(0,0.05)"


def test_phase1_noisy_fails():
    out = phase1(ChannelParams(0.01, 0.01, 1.0, 1.0))
    assert not out.cooperate
    assert out.reason is Phase1Reason.NOISY_OPTIMAL


def test_phase1_weak_degenerate_split_fails():
    # inr1 = 0.8 <= 1 but not noisy
    out = phase1(ChannelParams(0.08, 0.9, 80.0, 10.0))
    assert not out.cooperate
    assert out.reason is Phase1Reason.SPLIT_DEGENERATE


def test_phase1_cooperate_implies_essential():
    rng = np.random.default_rng(4)
    for gen in (support.random_strong, support.random_weak_cooperating, support.random_mixed_cooperating):
        for _ in range(10):
            params = gen(rng)
            region, d0, problem = support.phase1_problem(params)
            assert is_essential(problem)


def test_phase1_not_essential_reason():
    # both INRs exceed one, yet the fixed-split region cannot jointly improve
    # on the safe rates at this asymmetric low-power point
    out = phase1(ChannelParams(0.9, 0.1, 48.0, 1.4))
    assert not out.cooperate
    assert out.reason is Phase1Reason.NOT_ESSENTIAL
    assert out.split is None


def test_problem_requires_feasible_d0():
    region = ib.mac_region(2.0, 2.0)
    with pytest.raises(ib.InvalidParameterError):
        BargainingProblem(region, (5.0, 5.0))
