"""Heterogeneous-agent social storage network formation game."""

from .analysis import (
    CASE_STUDY_PARAMS,
    CASE_STUDY_SIGNS,
    RegimeKind,
    StableSetReport,
    SweepReport,
    case_study_matrix,
    check_theorem1,
    corollary1_applies,
    enumerate_stable,
    expected_network,
    lemma1_applies,
    lemma2_applies,
    sweep_ratio,
    theorem1_threshold,
    verify_regime_claim,
)
from .dynamics import (
    DynamicsTrace,
    Move,
    MoveKind,
    PairOrderPolicy,
    Status,
    is_bilaterally_stable,
    run_dynamics,
    wants_add,
    wants_delete,
)
from .errors import (
    CapacityError,
    ConfigError,
    InputError,
    PreconditionError,
    RegimeError,
    SocialStoreError,
)
from .model import (
    Network,
    Params,
    SocialRangeMatrix,
    canonical_key,
    degree,
    marginal_utility_add,
    perceived_utility,
    utility,
)

__version__ = "0.1.0"
