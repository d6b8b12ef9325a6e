"""Edit-distance alignment recovery, embeddings, and dimension reduction."""

from .core import (
    CapacityError,
    EditOp,
    EditScript,
    InvalidScriptError,
    Partition,
    apply_script,
    as_symbols,
    banded_distance,
    edit_distance,
    equipartition,
    expand_substitutions,
    optimal_alignment,
    partition_distance,
)
from .align import (
    AlignerReport,
    AmplifiedEstimator,
    BandedEstimator,
    ExactEstimator,
    align,
    amplify,
    candidate_positions,
    choose_m_distortion,
    choose_m_runtime,
)
from .hashing import (
    HashFamily,
    RMQIndex,
    family_new,
    rmq_build,
    rmq_query,
    sliding_unique_min,
    window_hashes,
)
from .ulam import SparseEmbedding, decode_alignment, hamming, ulam_embed
from .periodic import (
    PeriodicSpan,
    is_periodic_free,
    maximal_periodic_substrings,
    min_period,
    period_at_most,
    smallest_rotation_offset,
)
from .dimred import BlockString, block_distance, dimred_general, dimred_perm
from .lowregime import (
    InnerEmbedding,
    RegimeConfig,
    RegimeRandomness,
    choose_params,
    expectation_transform,
    is_edit_preserving,
    naive_inner,
    primary_embed,
    window_partition,
)
from .corpus import CorpusSpec, GenerationError, gen_corpus
from .experiments import run_experiment

__all__ = [
    "CapacityError",
    "EditOp",
    "EditScript",
    "InvalidScriptError",
    "Partition",
    "apply_script",
    "as_symbols",
    "banded_distance",
    "edit_distance",
    "equipartition",
    "expand_substitutions",
    "optimal_alignment",
    "partition_distance",
    "AlignerReport",
    "AmplifiedEstimator",
    "BandedEstimator",
    "ExactEstimator",
    "align",
    "amplify",
    "candidate_positions",
    "choose_m_distortion",
    "choose_m_runtime",
    "HashFamily",
    "RMQIndex",
    "family_new",
    "rmq_build",
    "rmq_query",
    "sliding_unique_min",
    "window_hashes",
    "SparseEmbedding",
    "decode_alignment",
    "hamming",
    "ulam_embed",
    "PeriodicSpan",
    "is_periodic_free",
    "maximal_periodic_substrings",
    "min_period",
    "period_at_most",
    "smallest_rotation_offset",
    "BlockString",
    "block_distance",
    "dimred_general",
    "dimred_perm",
    "InnerEmbedding",
    "RegimeConfig",
    "RegimeRandomness",
    "choose_params",
    "expectation_transform",
    "is_edit_preserving",
    "naive_inner",
    "primary_embed",
    "window_partition",
    "CorpusSpec",
    "GenerationError",
    "gen_corpus",
    "run_experiment",
]
