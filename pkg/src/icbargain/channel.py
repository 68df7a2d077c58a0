"""Two-user Gaussian interference channel: parameters, regimes, baseline rates.

All powers and gains are linear (not dB) and all rates are in bits per real
channel use, i.e. capacities use log base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import InvalidParameterError


def cap(x: float) -> float:
    """AWGN capacity 0.5*log2(1+x) in bits for a nonnegative power ratio ``x``."""
    if not isinstance(x, (int, float)) or not math.isfinite(x) or x < 0.0:
        raise InvalidParameterError(f"capacity argument must be finite and >= 0, got {x!r}")
    return 0.5 * math.log2(1.0 + x)


class RatePair(NamedTuple):
    """An achievable rate pair in bits per channel use."""

    r1: float
    r2: float


class Interference(Enum):
    """Interference regime of a two-user Gaussian IC."""

    STRONG = "strong"              # a >= 1 and b >= 1
    WEAK = "weak"                  # a < 1 and b < 1
    MIXED_A_WEAK = "mixed_a_weak"  # a < 1 <= b
    MIXED_B_WEAK = "mixed_b_weak"  # b < 1 <= a


@dataclass(frozen=True)
class Regime:
    """Regime tag plus the noisy-interference sub-flag (meaningful only when weak)."""

    tag: Interference
    noisy: bool = False

    def __post_init__(self) -> None:
        if self.noisy and self.tag is not Interference.WEAK:
            raise InvalidParameterError("noisy flag is only valid in the weak regime")

    def as_dict(self) -> dict:
        return {"tag": self.tag.value, "noisy": self.noisy}


@dataclass(frozen=True)
class ChannelParams:
    """Cross-link power gains and average power constraints of a two-user Gaussian IC.

    ``a`` is the power gain of user 2's signal into receiver 1, ``b`` the gain of
    user 1's signal into receiver 2.  ``p1`` and ``p2`` are the (linear) average
    power constraints, which equal the per-user SNRs under unit noise variance.
    """

    a: float
    b: float
    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "p1", "p2"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise InvalidParameterError(f"{name} must be a finite number, got {v!r}")
        if self.a < 0 or self.b < 0:
            raise InvalidParameterError("cross gains a, b must be >= 0")
        if self.p1 <= 0 or self.p2 <= 0:
            raise InvalidParameterError("powers p1, p2 must be > 0")

    @property
    def snr1(self) -> float:
        return self.p1

    @property
    def snr2(self) -> float:
        return self.p2

    @property
    def inr1(self) -> float:
        """Interference-to-noise ratio at receiver 1."""
        return self.a * self.p2

    @property
    def inr2(self) -> float:
        """Interference-to-noise ratio at receiver 2."""
        return self.b * self.p1

    def swapped(self) -> "ChannelParams":
        """The same channel with the two user roles exchanged."""
        return ChannelParams(a=self.b, b=self.a, p1=self.p2, p2=self.p1)

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "p1": self.p1, "p2": self.p2}


def classify_regime(params: ChannelParams) -> Regime:
    """Classify the channel as strong, weak (with noisy sub-flag), or mixed.

    Boundaries a == 1 or b == 1 fall on the strong side of each comparison.
    The noisy flag marks weak channels where treating interference as noise is
    sum-rate optimal: sqrt(a)*(b*p1 + 1) + sqrt(b)*(a*p2 + 1) <= 1.
    """
    a, b = params.a, params.b
    if a >= 1.0 and b >= 1.0:
        return Regime(Interference.STRONG)
    if a < 1.0 and b < 1.0:
        noisy = (
            math.sqrt(a) * (b * params.p1 + 1.0) + math.sqrt(b) * (a * params.p2 + 1.0)
            <= 1.0
        )
        return Regime(Interference.WEAK, noisy=noisy)
    if a < 1.0:
        return Regime(Interference.MIXED_A_WEAK)
    return Regime(Interference.MIXED_B_WEAK)


def disagreement_point(params: ChannelParams) -> RatePair:
    """Safe rates when each receiver treats the interfering signal as noise."""
    r1 = cap(params.p1 / (1.0 + params.inr1))
    r2 = cap(params.p2 / (1.0 + params.inr2))
    return RatePair(r1, r2)


def mac_safe_rates(p1: float, p2: float) -> RatePair:
    """Safe rates over the two-user MAC (worst case: the other signal is noise)."""
    return RatePair(cap(p1 / (1.0 + p2)), cap(p2 / (1.0 + p1)))
