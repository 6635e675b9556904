"""Exact algebras generated by pairs of semi-commuting matrices."""

from .algebra import (
    AlgebraBasis,
    algebra_dimension,
    check_idempotent_relations,
    commutator_nil_index,
    lemma_gn_spans,
    mccoy_triangularizable,
    unital_algebra_basis,
    verify_lemma_gn,
    word_span_dims,
)
from .constructions import (
    catalan_idempotent_pair,
    companion,
    cycle,
    diagonalize_idempotent,
    gerstenhaber_witness,
    idempotent_pair_3x3,
    idempotent_pair_7x7,
    intertwiner_basis,
    jordan_block,
    permutation_from_cycle_type,
    random_idempotent_pair,
    random_semicommuting_pair,
)
from .errors import DomainError, GenerationError, InputError, SemicommError, ShapeError, UsageError
from .exact import Matrix, commutator, inverse, matrix_from_json, matrix_to_json, rank, rref
from .order import (
    IdealChain,
    SignClass,
    commutator_sign,
    invariant_ideal_chain,
    is_ideal_irreducible,
    is_positive,
    is_strictly_positive,
    refined_bound,
    sign_class,
)
from .search import Witness, search_dims, search_idempotent_even
from .verifier import Outcome, TheoremReport, check, run_suite, summarize

__version__ = "0.1.0"
