"""Binomial coefficients of words and m-binomial equivalence.

Exact counting of scattered subwords, order-m binomial signatures with
incremental and factor-query forms, morphic fixed points and their lifted
integer matrices, detection and avoidance search for m-binomial p-powers,
and a deterministic verification battery over all of it.
"""

from .errors import (
    BinwordsError,
    BudgetExceededError,
    CountOverflowError,
    InvalidInputError,
    MorphismParseError,
    NoLinearActionError,
    NotPrefixCodeError,
    NotProlongableError,
    UnsupportedOrderError,
)
from .words import (
    Alphabet,
    BinomialSignature,
    DEFAULT_MAX_ORDER,
    MAX_ALPHABET,
    PrefixIndex,
    Word,
    ascent_imbalance,
    equivalent,
    index_words,
    mirror,
    signature,
    subword_count,
    word,
)
from .morphisms import (
    LiftedMatrix,
    Morphism,
    PRESETS,
    Preset,
    compose,
    decode,
    fixed_point_prefix,
    identity_morphism,
    is_prefix_code,
    is_prolongable,
    lift_matrix,
    mirror_morphism,
    parse_morphism,
)
from .detect import (
    Occurrence,
    ScanReport,
    find_power,
    is_power_free,
    scan_fixed_point,
    scan_word,
)
from .search import (
    CountTable,
    SearchCertificate,
    count_avoiding,
    longest_avoiding,
)
from .checks import (
    CHECK_NAMES,
    CheckConfig,
    CheckReport,
    aggregate,
    aggregate_exit_code,
    check_cyclic_shift,
    check_desubstitution,
    check_erasure,
    check_image_cube_freeness,
    check_matrix_identity,
    check_mirror_closure,
    check_pair_identities,
    check_signature_consistency,
    check_unaligned_cube_mod1,
    check_unaligned_cube_mod2,
    run_all,
    run_check,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BinomialSignature",
    "BinwordsError",
    "BudgetExceededError",
    "CHECK_NAMES",
    "CheckConfig",
    "CheckReport",
    "CountOverflowError",
    "CountTable",
    "DEFAULT_MAX_ORDER",
    "InvalidInputError",
    "LiftedMatrix",
    "MAX_ALPHABET",
    "Morphism",
    "MorphismParseError",
    "NoLinearActionError",
    "NotPrefixCodeError",
    "NotProlongableError",
    "Occurrence",
    "PRESETS",
    "Preset",
    "PrefixIndex",
    "ScanReport",
    "SearchCertificate",
    "UnsupportedOrderError",
    "Word",
    "aggregate",
    "aggregate_exit_code",
    "ascent_imbalance",
    "check_cyclic_shift",
    "check_desubstitution",
    "check_erasure",
    "check_image_cube_freeness",
    "check_matrix_identity",
    "check_mirror_closure",
    "check_pair_identities",
    "check_signature_consistency",
    "check_unaligned_cube_mod1",
    "check_unaligned_cube_mod2",
    "compose",
    "count_avoiding",
    "decode",
    "equivalent",
    "find_power",
    "fixed_point_prefix",
    "identity_morphism",
    "index_words",
    "is_power_free",
    "is_prefix_code",
    "is_prolongable",
    "lift_matrix",
    "longest_avoiding",
    "mirror",
    "mirror_morphism",
    "parse_morphism",
    "run_all",
    "run_check",
    "scan_fixed_point",
    "scan_word",
    "signature",
    "subword_count",
    "word",
]
