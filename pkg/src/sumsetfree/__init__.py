"""Sets free of fixed-shape sumsets: detection, search, constructions.

A signature (l_1, ..., l_r) describes sums x + c_1 + ... + c_r with the
i-th term ranging over a set of l_i elements; a ground set is free when
it contains no such complete sum pattern.  Repeated pairs give the
classical no-repeated-differences sets, all-twos signatures give
affine cubes.
"""

from .core import (
    Ambient,
    BudgetExceededError,
    CyclicProduct,
    GroundSet,
    IntegerInterval,
    InvalidInputError,
    InvalidSignatureError,
    PreconditionError,
    Signature,
    StructureError,
    SumsetWitness,
    elem_add,
    elem_sub,
    normalize_signature,
    parse_set_text,
    read_set_file,
    write_set_file,
)
from .detect import (
    IndexedMultiset,
    ap3_of_degenerate,
    contains_sumset,
    count_all_sumsets,
    enumerate_sumsets,
    introduces_sumset,
    is_degenerate,
    is_hilbert_cube_free,
    is_sidon,
    verify_multiset,
)
from .search import (
    SearchReport,
    lower_bound_exponent,
    max_free_set,
    overlap_check,
    sidon_refined_upper,
    turan_upper_bound,
    upper_bound_leading,
)
from .construct import (
    DeletionReport,
    behrend_set,
    deletion_with_retries,
    integer_l222_construction,
    integer_l222_prime,
    mixed_radix_embed,
    primitive_root,
    random_deletion,
    zp3_construction,
)
from .hypergraph import (
    Hypergraph,
    best_translate,
    cayley_hypergraph,
    contains_complete_rpartite,
    parse_hypergraph_text,
    read_hypergraph_file,
    representation_counts,
    write_hypergraph_file,
)
from .sequences import (
    DyadicParams,
    DyadicReport,
    SequencePrefix,
    counting_function,
    dyadic_random_sequence,
    greedy_sequence,
    liminf_statistic,
)

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "BudgetExceededError",
    "CyclicProduct",
    "DeletionReport",
    "DyadicParams",
    "DyadicReport",
    "GroundSet",
    "Hypergraph",
    "IndexedMultiset",
    "IntegerInterval",
    "InvalidInputError",
    "InvalidSignatureError",
    "PreconditionError",
    "SearchReport",
    "SequencePrefix",
    "Signature",
    "StructureError",
    "SumsetWitness",
    "ap3_of_degenerate",
    "behrend_set",
    "best_translate",
    "cayley_hypergraph",
    "contains_complete_rpartite",
    "contains_sumset",
    "count_all_sumsets",
    "counting_function",
    "deletion_with_retries",
    "dyadic_random_sequence",
    "elem_add",
    "elem_sub",
    "enumerate_sumsets",
    "greedy_sequence",
    "integer_l222_construction",
    "integer_l222_prime",
    "introduces_sumset",
    "is_degenerate",
    "is_hilbert_cube_free",
    "is_sidon",
    "liminf_statistic",
    "lower_bound_exponent",
    "max_free_set",
    "mixed_radix_embed",
    "normalize_signature",
    "overlap_check",
    "parse_hypergraph_text",
    "parse_set_text",
    "primitive_root",
    "random_deletion",
    "read_hypergraph_file",
    "read_set_file",
    "representation_counts",
    "sidon_refined_upper",
    "turan_upper_bound",
    "upper_bound_leading",
    "verify_multiset",
    "write_hypergraph_file",
    "write_set_file",
    "zp3_construction",
]
