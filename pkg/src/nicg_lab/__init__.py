"""Search laboratory for non-redundant integer cone generators over {0,1}^d."""

from .core import (
    VecSet,
    apply_perm,
    apply_perm_set,
    enumeration_budget,
    make_vec,
    sum_set,
)
from .cone import in_int_cone, verify_certificate
from .nicg import (
    MatrixView,
    is_nicg_gauss,
    is_nicg_removal,
    matrix_of,
    nonneg_integer_solutions,
    zero_column_variant,
)
from .isomorphism import (
    canonical_form,
    isomorphic_vectors,
    layer,
    signature_key,
    update_fixed_perms,
)
from .transforms import (
    normalize_all_ones_rows,
    row_subtract_transform,
    row_sum_transform,
    rows_share_variable,
)
from .search import (
    SearchConfig,
    SearchOutcome,
    SearchStats,
    binary_search_n,
    enumerate_all_max_solutions,
    exact_n,
    exists_nicg,
    randomized_search,
    solve_dfs,
)
from .bounds import analytic_upper, bounds_table, chain_lower, decomposition_upper

__version__ = "0.1.0"

__all__ = [
    "VecSet",
    "make_vec",
    "sum_set",
    "apply_perm",
    "apply_perm_set",
    "enumeration_budget",
    "in_int_cone",
    "verify_certificate",
    "MatrixView",
    "matrix_of",
    "is_nicg_removal",
    "is_nicg_gauss",
    "nonneg_integer_solutions",
    "zero_column_variant",
    "layer",
    "canonical_form",
    "signature_key",
    "update_fixed_perms",
    "isomorphic_vectors",
    "rows_share_variable",
    "row_sum_transform",
    "row_subtract_transform",
    "normalize_all_ones_rows",
    "SearchConfig",
    "SearchStats",
    "SearchOutcome",
    "solve_dfs",
    "exact_n",
    "binary_search_n",
    "exists_nicg",
    "randomized_search",
    "enumerate_all_max_solutions",
    "analytic_upper",
    "chain_lower",
    "decomposition_upper",
    "bounds_table",
    "__version__",
]
