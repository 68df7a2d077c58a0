"""Exception hierarchy for the icbargain package."""


class IcBargainError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(IcBargainError, ValueError):
    """A value violates a documented domain constraint."""


class DegenerateRegionError(IcBargainError):
    """A rate region is empty or collapses to a point where vertices are required."""


class NotEssentialError(IcBargainError):
    """No feasible allocation strictly improves on the disagreement point."""


class HypothesisViolatedError(IcBargainError):
    """The disagreement point touches a constraint required to be strictly slack."""


class NotRegularError(IcBargainError):
    """The bargaining problem is not regular; the alternating-offer equilibrium is not unique."""


class UnsupportedRegimeError(IcBargainError):
    """Exponent parameters fall outside the regimes with a known closed-form region."""


class PlayoutLimitError(IcBargainError):
    """A simulated bargaining play-out exceeded the round cap without terminating."""


class InternalCheckError(IcBargainError):
    """An internal consistency audit failed; indicates a solver bug, not bad input."""
