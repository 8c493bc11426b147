"""Nearly colour-balanced H-factors of edge-coloured complete graphs.

Clique-factors are driven to a swap-local minimum of the squared norm of
their colour-vector sum, then lifted to H-factors by permutation blocks.
"""

__version__ = "0.1.0"

from balfactor.errors import (
    BalfactorError,
    DimensionError,
    DivisibilityError,
    EdgeError,
    InvalidPaletteError,
    InvalidSwapError,
    ParseError,
    PatternError,
    TooLargeError,
)
from balfactor.palette import (
    Palette,
    deviation_upper_from_norm,
    inner,
    make_explicit_palette,
    make_simplex_palette,
    norm_sq_of_counts,
)
from balfactor.graph_model import (
    CliqueFactor,
    ColouredCompleteGraph,
    DeviationReport,
    PatternGraph,
    balance_alpha,
    deviation,
    factor_counts,
    load_colouring,
    load_pattern,
    random_balanced_colouring,
    save_colouring,
)
from balfactor.clique_solver import (
    SearchTrace,
    apply_swap,
    initial_factor,
    local_search,
    swap_delta,
    swap_vector,
)
from balfactor.h_embedder import (
    CliqueClassification,
    HEmbedding,
    classify_cliques,
    embed_h_factor,
    embedding_error_bound,
)
from balfactor.oracle import (
    enumerate_clique_factors,
    find_unbalanced_colouring,
    min_deviation_bruteforce,
)
from balfactor.bounds import (
    BoundsTable,
    constants,
    enumerate_swap_space,
    verify_lattice_facts,
)

__all__ = [
    "BalfactorError",
    "DimensionError",
    "DivisibilityError",
    "EdgeError",
    "InvalidPaletteError",
    "InvalidSwapError",
    "ParseError",
    "PatternError",
    "TooLargeError",
    "Palette",
    "deviation_upper_from_norm",
    "inner",
    "make_explicit_palette",
    "make_simplex_palette",
    "norm_sq_of_counts",
    "CliqueFactor",
    "ColouredCompleteGraph",
    "DeviationReport",
    "PatternGraph",
    "balance_alpha",
    "deviation",
    "factor_counts",
    "load_colouring",
    "load_pattern",
    "random_balanced_colouring",
    "save_colouring",
    "SearchTrace",
    "apply_swap",
    "initial_factor",
    "local_search",
    "swap_delta",
    "swap_vector",
    "CliqueClassification",
    "HEmbedding",
    "classify_cliques",
    "embed_h_factor",
    "embedding_error_bound",
    "enumerate_clique_factors",
    "find_unbalanced_colouring",
    "min_deviation_bruteforce",
    "BoundsTable",
    "constants",
    "enumerate_swap_space",
    "verify_lattice_facts",
]
