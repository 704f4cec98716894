"""tritgame: exact analysis of a multi-party one-trit communication game.

k parties (k = 4, 7, 10, ...) each hold one trit and one bit; the bit
vectors are promised to contain a multiple of three zeros.  All parties
must make a referee learn a global trit function of the registers while
each transmits a single trit.  Sharing an entangled qutrit state lets them
succeed on every input; this package simulates that protocol exactly and,
on the classical side, computes the exact success probability of the best
one-trit strategies, which collapses toward 1/3 as the party count grows.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundParams,
    BoundRow,
    bound_A,
    bound_F,
    bound_L,
    bound_N,
    bound_value,
    convergence_table,
    plus_op,
)
from .classical import (
    DIVISION_NAMES,
    REGISTER_VALUES,
    Strategy,
    StrategyProfile,
    TranscriptClassStats,
    best_homogeneous,
    canonical_division,
    canonical_strategy_reps,
    division_type,
    evaluate_collapsed,
    evaluate_exhaustive,
    random_profile,
    ten_player_worked_example,
    strategy_groups,
    transcript_class_stats,
)
from .combinat import (
    GroupedSumSpec,
    binomial,
    grouped_sum,
    grouped_sum_primed,
    ramus,
    trit_add,
)
from .protocol import (
    AnalyticEngineLockedError,
    SteppingCertificate,
    ProtocolRun,
    RegisterInput,
    VerificationError,
    analytic_token,
    decode,
    dense_pre_measurement_state,
    enumerate_admissible,
    global_function,
    run_analytic,
    run_dense,
    sample_admissible,
    verify_class_stepping,
    zero_triples_mod3,
)
from .qudit import (
    LocalGate,
    QuditState,
    RootBranch,
    apply_local,
    classify_sum_class,
    find_valid_root_branch,
    make_sum_class_state,
    measure_all,
    permutation_gate,
    root_gate,
)

__all__ = [
    "__version__",
    # combinatorics
    "GroupedSumSpec", "binomial", "grouped_sum", "grouped_sum_primed", "ramus", "trit_add",
    # qudit simulation
    "LocalGate", "QuditState", "RootBranch", "apply_local", "classify_sum_class",
    "find_valid_root_branch", "make_sum_class_state", "measure_all",
    "permutation_gate", "root_gate",
    # protocol
    "AnalyticEngineLockedError", "SteppingCertificate", "ProtocolRun", "RegisterInput",
    "VerificationError", "analytic_token", "decode", "dense_pre_measurement_state",
    "enumerate_admissible", "global_function", "run_analytic", "run_dense",
    "sample_admissible", "verify_class_stepping", "zero_triples_mod3",
    # classical analysis
    "DIVISION_NAMES", "REGISTER_VALUES", "Strategy", "StrategyProfile",
    "TranscriptClassStats", "best_homogeneous", "canonical_division",
    "canonical_strategy_reps", "division_type", "evaluate_collapsed",
    "evaluate_exhaustive", "random_profile", "ten_player_worked_example",
    "strategy_groups", "transcript_class_stats",
    # bounds
    "BoundParams", "BoundRow", "bound_A", "bound_F", "bound_L", "bound_N",
    "bound_value", "convergence_table", "plus_op",
]
