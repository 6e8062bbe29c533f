"""trlrank: exact and modular rank parameters for explicit small 3-tensors.

Geometric rank via Groebner bases over Q, analytic rank via exact point
counting over prime fields, flattening/slice-rank/subrank bounds, and a
CLI producing machine-readable reports.
"""

from .bounds import (
    ChainReport,
    chain_report,
    flattening_ranks,
    independence_number,
    matmul_gr_formula,
    slice_rank_upper,
    strassen_border_lower,
    subrank_diag_lower,
)
from .counting import (
    PointCount,
    ScanRow,
    analytic_rank,
    bias_bruteforce,
    liminf_scan,
    matmul_point_count,
    point_count_bruteforce,
    point_count_stratified,
)
from .errors import (
    BudgetExceededError,
    InvariantViolationError,
    TrlrankError,
    ValidationError,
)
from .exactlinalg import count_rank_matrices, fp_rank, is_prime, log_base, q_rank
from .geometric import (
    DEFAULT_MODULAR_PRIMES,
    GrResult,
    gr_exact,
    gr_modular,
    gr_symmetry_check,
    modular_gr_from_counts,
    slice_forms,
    zr_witness_check,
)
from .groebner import (
    Budget,
    GroebnerBasis,
    buchberger,
    ideal_dimension,
    normal_form,
    radical_membership,
)
from .poly import MultiPoly, PolyRing
from .tensor import (
    Hypergraph3,
    Tensor3,
    contract_x,
    direct_sum,
    entrywise_sum,
    evaluate,
    flatten,
    hypergraph_tensor,
    identity_tensor,
    kron,
    matmul_tensor,
    permute_axes,
    random_tensor,
    restrict,
    w_tensor,
)
from .tensorfile import dump_tensor, load_tensor, tensor_from_doc, tensor_to_doc

__version__ = "0.1.0"
