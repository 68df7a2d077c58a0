import math

import pytest
from hypothesis import given, strategies as st

from icbargain import (
    ChannelParams,
    Interference,
    InvalidParameterError,
    cap,
    classify_regime,
    disagreement_point,
)

finite_gain = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)
finite_power = st.floats(min_value=1e-3, max_value=1e6, allow_nan=False)


def test_cap_identities():
    assert cap(0.0) == 0.0
    assert cap(1.0) == pytest.approx(0.5, abs=0)
    assert cap(3.0) == pytest.approx(1.0, abs=0)


@pytest.mark.parametrize("bad", [-1.0, -1e-12, float("nan"), float("inf")])
def test_cap_domain_errors(bad):
    with pytest.raises(InvalidParameterError):
        cap(bad)


def test_cap_monotone_and_concave():
    xs = [i * 0.37 for i in range(400)]
    vals = [cap(x) for x in xs]
    diffs = [b - a for a, b in zip(vals, vals[1:])]
    assert all(d > 0 for d in diffs)
    assert all(d2 - d1 <= 1e-12 for d1, d2 in zip(diffs, diffs[1:]))


@given(st.floats(min_value=0.0, max_value=1e9), st.floats(min_value=1e-6, max_value=10.0))
def test_cap_strictly_increasing(x, rel):
    dx = rel * (1.0 + x)  # keep the step visible at double precision
    assert cap(x + dx) > cap(x)


@pytest.mark.parametrize(
    "a,b,p1,p2,tag,noisy",
    [
        (3.0, 5.0, 100.0, 100.0, Interference.STRONG, False),
        (0.2, 0.5, 100.0, 100.0, Interference.WEAK, False),
        (0.01, 0.01, 1.0, 1.0, Interference.WEAK, True),
        (0.2, 1.2, 10.0, 100.0, Interference.MIXED_A_WEAK, False),
        (1.2, 0.2, 100.0, 10.0, Interference.MIXED_B_WEAK, False),
        (1.0, 1.0, 100.0, 100.0, Interference.STRONG, False),
        (1.0, 0.5, 10.0, 10.0, Interference.MIXED_B_WEAK, False),
        (0.5, 1.0, 10.0, 10.0, Interference.MIXED_A_WEAK, False),
    ],
)
def test_classify_regime(a, b, p1, p2, tag, noisy):
    regime = classify_regime(ChannelParams(a, b, p1, p2))
    assert regime.tag is tag
    assert regime.noisy is noisy


def test_noisy_condition_value():
    # 0.1 * 1.01 + 0.1 * 1.01 = 0.202 <= 1
    lhs = math.sqrt(0.01) * (0.01 * 1.0 + 1.0) + math.sqrt(0.01) * (0.01 * 1.0 + 1.0)
    assert lhs == pytest.approx(0.202, abs=1e-12)
    assert classify_regime(ChannelParams(0.01, 0.01, 1.0, 1.0)).noisy


@given(finite_gain, finite_gain, finite_power, finite_power)
def test_regime_partition(a, b, p1, p2):
    regime = classify_regime(ChannelParams(a, b, p1, p2))
    expected = {
        (True, True): Interference.STRONG,
        (False, False): Interference.WEAK,
        (False, True): Interference.MIXED_A_WEAK,
        (True, False): Interference.MIXED_B_WEAK,
    }[(a >= 1.0, b >= 1.0)]
    assert regime.tag is expected


def test_disagreement_point_fixed_value():
    # independent high-precision evaluation of cap(10/3) and cap(100/13)
    d0 = disagreement_point(ChannelParams(0.2, 1.2, 10.0, 100.0))
    assert d0.r1 == pytest.approx(0.28093944380405746, abs=1e-12)
    assert d0.r2 == pytest.approx(1.5598696221370478, abs=1e-12)


def test_disagreement_point_no_interference():
    d0 = disagreement_point(ChannelParams(0.0, 0.0, 7.0, 3.0))
    assert d0 == (cap(7.0), cap(3.0))


def test_disagreement_point_symmetry():
    d0 = disagreement_point(ChannelParams(1.0, 1.0, 42.0, 42.0))
    assert d0.r1 == d0.r2


@given(
    st.floats(min_value=1e-3, max_value=50.0),
    st.floats(min_value=1e-3, max_value=50.0),
    finite_power,
    finite_power,
)
def test_disagreement_below_single_user_caps(a, b, p1, p2):
    d0 = disagreement_point(ChannelParams(a, b, p1, p2))
    assert d0.r1 < cap(p1)
    assert d0.r2 < cap(p2)


def test_params_validation():
    with pytest.raises(InvalidParameterError):
        ChannelParams(-0.1, 1.0, 1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        ChannelParams(1.0, 1.0, 0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        ChannelParams(1.0, float("inf"), 1.0, 1.0)


def test_swapped_roles():
    params = ChannelParams(0.2, 1.2, 10.0, 100.0)
    sw = params.swapped()
    assert (sw.a, sw.b, sw.p1, sw.p2) == (1.2, 0.2, 100.0, 10.0)
    assert sw.inr1 == params.inr2 and sw.inr2 == params.inr1
