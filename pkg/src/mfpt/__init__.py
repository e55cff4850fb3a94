"""Mean first passage times of finite irreducible Markov chains.

Twelve dense procedures for the full pairwise mean-first-passage-time
matrix, built on generalized inverses, rank-one update sweeps, pure
state reduction, and a reduction-backed triangular factorization —
plus accuracy metrics, independent oracles, benchmark problems, and a
command line harness for sweeps over problems, procedures, and
floating point precisions.
"""

from .chain import (
    mfpt_from_ge,
    mfpt_from_general_ginverse,
    mfpt_from_h,
    recurrence_times,
)
from .egth import first_passage_column, rotate_states, state_reduction_mfpt
from .estimator import MeanFirstPassageTime, mean_first_passage_times
from .exceptions import (
    InvalidTransitionMatrixError,
    MatrixFileError,
    ReducibleChainError,
    SingularMatrixError,
    UpdateBreakdownError,
)
from .fund import (
    factored_direct_mfpt,
    factored_fundamental_mfpt,
    factored_group_mfpt,
    ul_factorize,
)
from .gth import gth_reduce, gth_stationary, reduce_holding_times
from .inverses import anchored_inverse_mfpt, fundamental_inverse_mfpt, fundamental_matrix
from .metrics import (
    AccuracyReport,
    PrecisionComparison,
    accuracy_report,
    precision_compare,
    residual,
)
from .oracle import McEstimate, mfpt_column_solve, mfpt_oracle, monte_carlo_mfpt
from .perturbation import (
    anchored_update,
    centered_update,
    centered_update_mfpt,
    ginverse_update,
    ginverse_update_mfpt,
    group_inverse_update,
    group_inverse_update_mfpt,
    ones_anchor_mfpt,
    uniform_anchor_mfpt,
    unit_anchor_mfpt,
)
from .problems import (
    builtin_problem,
    coupled_blocks,
    generate_sparse,
    list_problems,
    load_matrix,
    save_matrix,
)
from .registry import PROCEDURES, Procedure, ProcedureResult, get_procedure, run_procedure
from .validation import check_stationary_distribution, check_transition_matrix, is_irreducible

__version__ = "1.0.0"

__all__ = [
    "AccuracyReport",
    "InvalidTransitionMatrixError",
    "MatrixFileError",
    "McEstimate",
    "MeanFirstPassageTime",
    "PROCEDURES",
    "PrecisionComparison",
    "Procedure",
    "ProcedureResult",
    "ReducibleChainError",
    "SingularMatrixError",
    "UpdateBreakdownError",
    "accuracy_report",
    "anchored_inverse_mfpt",
    "anchored_update",
    "builtin_problem",
    "centered_update",
    "centered_update_mfpt",
    "check_stationary_distribution",
    "check_transition_matrix",
    "coupled_blocks",
    "factored_direct_mfpt",
    "factored_fundamental_mfpt",
    "factored_group_mfpt",
    "first_passage_column",
    "fundamental_inverse_mfpt",
    "fundamental_matrix",
    "generate_sparse",
    "get_procedure",
    "ginverse_update",
    "ginverse_update_mfpt",
    "group_inverse_update",
    "group_inverse_update_mfpt",
    "gth_reduce",
    "gth_stationary",
    "is_irreducible",
    "list_problems",
    "load_matrix",
    "mean_first_passage_times",
    "mfpt_column_solve",
    "mfpt_from_ge",
    "mfpt_from_general_ginverse",
    "mfpt_from_h",
    "mfpt_oracle",
    "monte_carlo_mfpt",
    "ones_anchor_mfpt",
    "precision_compare",
    "recurrence_times",
    "reduce_holding_times",
    "residual",
    "rotate_states",
    "run_procedure",
    "save_matrix",
    "state_reduction_mfpt",
    "ul_factorize",
    "uniform_anchor_mfpt",
    "unit_anchor_mfpt",
]
