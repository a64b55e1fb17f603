"""Shift spaces, flow-equivalence invariants, and the moves between them."""

from .entropy import (
    EntropyEstimate,
    boost_entropy_construction,
    boost_entropy_pipeline,
    entropy_word_count,
    perron_entropy,
    scale_entropy_construction,
    sofic_entropy,
)
from .errors import (
    InvalidInput,
    NonConvergenceError,
    PartialBlockMapError,
    PreconditionError,
    ShiftSpaceError,
)
from .graphs import DirectedGraph, Edge, essentialize, from_adjacency, path_count, scc_decompose
from .invariants import (
    SignedBFGroup,
    SmithDecomposition,
    bowen_franks,
    determinant,
    expansion_move,
    franks_decide,
    smith_normal_form,
    verify_elementary_equivalence,
)
from .moves import (
    MovePipeline,
    Recode,
    SymbolContraction,
    SymbolExpansion,
    WordContraction,
    admits_nontrivial_overlaps,
    deciding_length_bound,
    is_nonoverlapping,
    pipeline_apply_periodic,
    pipeline_apply_word,
    prune_dead_symbols,
    recode,
    symbol_contract,
    symbol_expand,
    word_contract,
)
from .presentations import (
    LabeledGraph,
    determinize,
    extend_to_synchronizing,
    focus_set,
    follower_table,
    is_right_resolving,
    labeled_graph,
    minimal_right_resolving,
    sft_presentation,
)
from .sft import (
    ForbiddenSetSFT,
    apply_block_map,
    contains_word,
    enumerate_language,
    full_shift,
    is_empty,
    is_irreducible,
    language_count,
    sft,
    sft_to_edge_shift,
    simplify,
    to_m_step,
)
from .sgap import (
    Classification,
    EventuallyPeriodicGaps,
    FEVerdict,
    FiniteGaps,
    FullShift,
    SampledGaps,
    SGapSet,
    SoficTag,
    classify_type,
    detect_eventual_periodicity,
    fe_equal,
    fe_invariant,
    forbidden_words,
    minimal_form,
    shift_set,
)
from .words import Alphabet, PeriodicOrbit, Word

__all__ = [
    "Alphabet",
    "Classification",
    "DirectedGraph",
    "Edge",
    "EntropyEstimate",
    "EventuallyPeriodicGaps",
    "FEVerdict",
    "FiniteGaps",
    "ForbiddenSetSFT",
    "FullShift",
    "InvalidInput",
    "LabeledGraph",
    "MovePipeline",
    "NonConvergenceError",
    "PartialBlockMapError",
    "PeriodicOrbit",
    "PreconditionError",
    "Recode",
    "SGapSet",
    "SampledGaps",
    "ShiftSpaceError",
    "SignedBFGroup",
    "SmithDecomposition",
    "SoficTag",
    "SymbolContraction",
    "SymbolExpansion",
    "Word",
    "WordContraction",
    "admits_nontrivial_overlaps",
    "apply_block_map",
    "boost_entropy_construction",
    "boost_entropy_pipeline",
    "bowen_franks",
    "classify_type",
    "contains_word",
    "deciding_length_bound",
    "detect_eventual_periodicity",
    "determinant",
    "determinize",
    "enumerate_language",
    "entropy_word_count",
    "essentialize",
    "expansion_move",
    "extend_to_synchronizing",
    "fe_equal",
    "fe_invariant",
    "focus_set",
    "follower_table",
    "forbidden_words",
    "franks_decide",
    "from_adjacency",
    "full_shift",
    "is_empty",
    "is_irreducible",
    "is_nonoverlapping",
    "is_right_resolving",
    "labeled_graph",
    "language_count",
    "minimal_form",
    "minimal_right_resolving",
    "path_count",
    "perron_entropy",
    "pipeline_apply_periodic",
    "pipeline_apply_word",
    "prune_dead_symbols",
    "recode",
    "scale_entropy_construction",
    "scc_decompose",
    "sft",
    "sft_presentation",
    "sft_to_edge_shift",
    "shift_set",
    "simplify",
    "smith_normal_form",
    "sofic_entropy",
    "symbol_contract",
    "symbol_expand",
    "to_m_step",
    "verify_elementary_equivalence",
    "word_contract",
]
