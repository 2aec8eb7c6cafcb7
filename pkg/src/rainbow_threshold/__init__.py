"""Rainbow connection of random graphs: exact oracles, random colour-and-repair, threshold sweeps."""
from .colouring import (
    EdgeColouring,
    enumerate_rainbow_r_paths,
    independent_rainbow_packing,
    is_rainbow_colouring,
    is_rainbow_path,
    rainbow_path_exists,
    random_colouring,
    read_colouring,
    write_colouring,
)
from .estimators import ExactRainbowConnection, RainbowRepairColourer
from .exact import RcResult, rc_exact, rc_upper_bound_trivial
from .exceptions import BudgetExhausted, CapExceeded, DomainError, PathTooLong
from .experiment import (
    ExperimentConfig,
    TrialRecord,
    emit_csv,
    run_expectation_check,
    run_threshold_sweep,
)
from .graph import (
    UNBOUNDED,
    Graph,
    diameter,
    enumerate_k_paths,
    gnp_generate,
    is_connected,
    read_graph,
    write_graph,
)
from .repair import (
    DangerReport,
    ProofConstants,
    RepairOutcome,
    detect_dangerous_pairs,
    proof_constants,
    recolour_to_rainbow,
    repair_colouring,
    repair_from,
    select_unflagged_path,
)
from .thresholds import (
    conjectured_threshold,
    diameter_threshold,
    expected_rainbow_r_path_count,
    heuristic_bad_pair_estimate,
    semisharp_bounds,
)

__version__ = "0.1.0"
