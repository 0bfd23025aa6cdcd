"""Machine-checkable mean-set axioms, random corpora and operator property tables."""

from .corpus import DEFAULT_PROFILE, CorpusProfile, gen_corpus
from .profiles import (
    FAILS,
    HOLDS,
    OPERATOR_NAMES,
    SEARCH_BUDGET,
    UNTESTABLE,
    EntryResult,
    LadderEvidence,
    ProfileEntry,
    ProfileRun,
    aa_K_operator,
    corpus_for,
    corpus_profile,
    expected_profile,
    ladder_strong_internal_evidence,
    operator_by_name,
    run_entry,
    run_profile,
)
from .properties import (
    DEFAULT_CAP,
    Aux,
    CheckReport,
    PropertyId,
    Skip,
    Violation,
    check,
    evaluate,
    finite_leq,
    parse_property,
)

__all__ = [
    "Aux", "CheckReport", "CorpusProfile", "DEFAULT_CAP", "DEFAULT_PROFILE", "EntryResult",
    "FAILS", "HOLDS", "LadderEvidence", "OPERATOR_NAMES", "ProfileEntry", "ProfileRun",
    "PropertyId", "SEARCH_BUDGET", "Skip", "UNTESTABLE", "Violation", "aa_K_operator",
    "check", "corpus_for", "corpus_profile", "evaluate", "expected_profile", "finite_leq",
    "gen_corpus", "ladder_strong_internal_evidence", "operator_by_name", "parse_property",
    "run_entry", "run_profile",
]
