"""shfkit: separating hash families — construction, verification, bounds,
canonical forms, and exhaustive search."""

from .core import Hypergraph, Matrix, ShfType, Witness, d_stat, lambda_max, lambda_stat
from .verify import Verdict, incremental_check, is_shf, iter_families, row_separates
from .construct import (
    Coverage,
    construct_strong_shf,
    coverage_failure,
    covers_all,
    cyclic_difference_design,
    design_from_name,
    hypergraph_to_shf,
    packaged_design,
    steiner_triple_system,
)
from .bounds import (
    BoundKind,
    BoundReport,
    CombinedUpperBound,
    covering_lower_bound,
    lower_bound_rows,
    schonheim_size,
    upper_bound_cols,
)
from .symmetry import (
    FORBIDDEN_PATTERNS,
    ForbiddenHit,
    apply_isomorphism,
    are_isomorphic,
    canonical_form,
    find_forbidden,
    sanity_lemma_3_3,
)
from .search import (
    MaxNResult,
    SearchInconclusive,
    SearchOutcome,
    SearchStats,
    max_n,
    search_shf,
)
from .io import (
    parse_hypergraph,
    parse_matrix,
    parse_type_string,
    read_hypergraph,
    read_matrix,
    render_hypergraph,
    render_matrix,
    write_hypergraph,
    write_matrix,
)

__version__ = "0.1.0"
