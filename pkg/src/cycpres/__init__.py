"""Syntactic infiniteness certificates for cyclically presented groups G_n(w)."""

from .certify import (
    Assumption,
    Certificate,
    analyze_purity,
    applicable_rules,
    certify,
    main_pair,
    required_pairs,
)
from .errors import CycpresError, WordParseError
from .formcheck import (
    MagnusPair,
    PairVerdict,
    SearchParams,
    brute_force_oracle,
    check_pair,
    match_form_i,
    match_form_ii,
    syllable_factorize,
)
from .freeword import CyclicWord, Word, cyclically_reduce, parse_word, power_root, primitive_root
from .presentation import (
    CyclicPresentationSpec,
    OneRelatorSpec,
    gap_profile,
    magnus_subset,
    normalize_span,
    relator_family,
)

__version__ = "0.1.0"
