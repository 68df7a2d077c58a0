"""Coordination and bargaining over two-user Gaussian interference channels.

A library plus CLI covering: channel regime classification and safe rates,
fixed-power-split superposition regions, strong-interference and MAC capacity
regions, the time-division frontier, Nash bargaining solutions (exact KKT
active-set and closed MAC forms), the alternating-offer bargaining game with
risk of breakdown (equilibrium pair and seeded play-outs), and
generalized-degrees-of-freedom bargaining at high SNR.
"""

from .aobg import (
    AlwaysRejectStrategy,
    BreakdownProbs,
    GameTrace,
    SpePair,
    ThresholdStrategy,
    equilibrium_strategies,
    play_aobg,
    spe_mac,
    spe_mac_limit,
    spe_pair,
    spe_residuals,
)
from .bargain import (
    BargainingProblem,
    ConditionCheck,
    Phase1Outcome,
    Phase1Reason,
    RegularityReport,
    ir_frontier_strictly_monotone,
    is_essential,
    is_regular,
    phase1,
)
from .channel import (
    ChannelParams,
    Interference,
    RatePair,
    Regime,
    cap,
    classify_regime,
    disagreement_point,
    mac_safe_rates,
)
from .errors import (
    DegenerateRegionError,
    HypothesisViolatedError,
    IcBargainError,
    InternalCheckError,
    InvalidParameterError,
    NotEssentialError,
    NotRegularError,
    PlayoutLimitError,
    UnsupportedRegimeError,
)
from .gdof import (
    GdofParams,
    GdofPoint,
    GdofRegion,
    gdof_disagreement,
    gdof_nbs,
    gdof_nbs_tdm,
    gdof_phase1,
    gdof_region,
    gdof_tdm_region,
)
from .nbs import NbsResult, mac_problem, nbs_concave, nbs_mac, nbs_polytope
from .regions import (
    ConstraintRow,
    ParetoChain,
    PowerSplit,
    RatePolytope,
    TdmAllocation,
    TdmFrontier,
    efficient_frontier,
    extreme_points,
    hk_power_split,
    hk_region,
    ir_frontier,
    mac_region,
    strong_capacity_region,
    tdm_frontier,
)

__version__ = "0.1.0"

__all__ = [
    "AlwaysRejectStrategy",
    "BargainingProblem",
    "BreakdownProbs",
    "ChannelParams",
    "ConditionCheck",
    "ConstraintRow",
    "DegenerateRegionError",
    "GameTrace",
    "GdofParams",
    "GdofPoint",
    "GdofRegion",
    "HypothesisViolatedError",
    "IcBargainError",
    "Interference",
    "InternalCheckError",
    "InvalidParameterError",
    "NbsResult",
    "NotEssentialError",
    "NotRegularError",
    "ParetoChain",
    "Phase1Outcome",
    "Phase1Reason",
    "PlayoutLimitError",
    "PowerSplit",
    "RatePair",
    "RatePolytope",
    "Regime",
    "RegularityReport",
    "SpePair",
    "TdmAllocation",
    "TdmFrontier",
    "ThresholdStrategy",
    "UnsupportedRegimeError",
    "cap",
    "classify_regime",
    "disagreement_point",
    "efficient_frontier",
    "equilibrium_strategies",
    "extreme_points",
    "gdof_disagreement",
    "gdof_nbs",
    "gdof_nbs_tdm",
    "gdof_phase1",
    "gdof_region",
    "gdof_tdm_region",
    "hk_power_split",
    "hk_region",
    "ir_frontier",
    "ir_frontier_strictly_monotone",
    "is_essential",
    "is_regular",
    "mac_problem",
    "mac_region",
    "mac_safe_rates",
    "nbs_concave",
    "nbs_mac",
    "nbs_polytope",
    "phase1",
    "play_aobg",
    "spe_mac",
    "spe_mac_limit",
    "spe_pair",
    "spe_residuals",
    "strong_capacity_region",
    "tdm_frontier",
]
