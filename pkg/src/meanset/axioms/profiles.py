"""Claimed property tables of the built-in operators and a runner that verifies them."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..exactset import IntervalSet, parse_set
from ..means import HARMONIC, ms_aa_K
from ..operators import (
    MeanSetOperator,
    aa_operator,
    aas_operator,
    hf_operator,
    max_interval_operator,
    middle_third_operator,
    topo_operator,
)
from .corpus import CorpusProfile, gen_corpus
from .properties import Aux, CheckReport, PropertyId, check

HOLDS, FAILS, UNTESTABLE = "holds", "fails", "untestable"
SEARCH_BUDGET = 10_000

OPERATOR_NAMES = (
    "interior", "closure", "derived", "ms_aa", "ms_aas", "ms_hf", "ms_aa_K",
    "middle_third", "max_interval",
)


def _finite_positive(S: IntervalSet) -> bool:
    return not S.is_empty and S.is_finite and S.inf > 0


def aa_K_operator(K=HARMONIC) -> MeanSetOperator:
    """``ms_aa_K`` for the mean ``K`` as an operator on finite positive point sets."""
    return MeanSetOperator(f"ms_aa_K[{K.name}]", lambda S: ms_aa_K(K, S), _finite_positive)


def operator_by_name(name: str) -> MeanSetOperator:
    if name in ("interior", "closure", "derived"):
        return topo_operator(name)
    table = {
        "ms_aa": aa_operator,
        "ms_aas": aas_operator,
        "ms_hf": hf_operator,
        "ms_aa_K": aa_K_operator,
        "middle_third": middle_third_operator,
        "max_interval": max_interval_operator,
    }
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown operator {name!r}; expected one of {', '.join(OPERATOR_NAMES)}") from None


@dataclass(frozen=True)
class ProfileEntry:
    """One row of an operator's property table.

    ``status`` is what the suite enforces. ``claim`` is what the literature
    asserts; the two differ only where the claim is contradicted, which
    ``reason`` then explains.
    """

    prop: PropertyId
    status: str
    claim: str
    reason: str = ""
    witnesses: tuple = ()
    cap: Optional[int] = None

    @property
    def contested(self) -> bool:
        return self.status != self.claim


def _S(*exprs):
    return tuple(parse_set(e) for e in exprs)


def _e(prop, status, claim=None, reason="", witnesses=(), cap=None):
    return ProfileEntry(PropertyId(prop), status, claim or status, reason,
                        tuple(witnesses), cap)


_MIDPOINT_COMMON = [
    _e("internal", HOLDS),
    _e("monotone", HOLDS),
    _e("increasing", HOLDS),
    _e("translation_invariant", HOLDS),
    _e("reflection_invariant", HOLDS),
    _e("homogeneous", HOLDS),
    _e("strong_internal", FAILS,
       reason="the ladder witness {±1/n} is not an interval set; {0} ∪ [1,2] has the isolated "
              "midpoint 0 below liminf = 1",
       witnesses=[_S("{0} U [1,2]")]),
    _e("finite_valued", FAILS, witnesses=[_S("[0,1]")]),
    _e("strong_monotone", FAILS,
       reason="H1 = [0,1], H2 = {-5} ∪ [1,2]: the union reaches [-5/2,-3/2]",
       witnesses=[_S("[0,1]", "{-5} U [1,2]")]),
]

_PROFILES = {
    "interior": [
        _e("internal", HOLDS),
        _e("strong_internal", HOLDS),
        _e("strong_monotone", HOLDS),
        _e("mean_monotone", HOLDS),
        _e("translation_invariant", HOLDS),
        _e("reflection_invariant", HOLDS),
        _e("homogeneous", HOLDS),
        _e("convex", HOLDS),
        _e("idempotent", HOLDS),
        _e("increasing", HOLDS),
        _e("finite_independent", FAILS, claim=HOLDS,
           reason="removing an interior point splits a component: int([0,2] - {1}) = "
                  "(0,1) ∪ (1,2) differs from int([0,2]) = (0,2)",
           witnesses=[_S("[0,2]", "{1}")]),
        _e("closed_prop", FAILS,
           reason="the witness Q ∩ [0,1] is not representable; (0,1) ∪ (1,2) also shows it",
           witnesses=[_S("(0,1) U (1,2)")]),
        _e("accumulated", FAILS,
           reason="the witness Q ∩ [0,1] is not representable; (0,1) ∪ (1,2) also shows it",
           witnesses=[_S("(0,1) U (1,2)")]),
    ],
    "closure": [_e("internal", HOLDS)],
    "derived": [_e("internal", HOLDS)],
    "ms_aa": _MIDPOINT_COMMON + [
        _e("convex", HOLDS, claim="fails and holds",
           reason="both asserted; MS(H) ⊆ I forces H ⊆ I since H ⊆ ms_aa(H), so it holds"),
        _e("finite_order", FAILS,
           reason="the witness {1/n} is not an interval set; {0,1} gains points at every step",
           witnesses=[_S("{0,1}")], cap=8),
    ],
    "ms_aas": _MIDPOINT_COMMON + [
        _e("convex", FAILS, witnesses=[_S("{-1,2}", "[0,1]", "{0}")]),
    ],
    "ms_hf": [
        _e("internal", HOLDS),
        _e("strong_internal", HOLDS),
        _e("strong_monotone", HOLDS),
        _e("convex", HOLDS),
        _e("translation_invariant", HOLDS),
        _e("reflection_invariant", HOLDS),
        _e("homogeneous", HOLDS),
        _e("finite_independent", HOLDS),
        _e("idempotent", FAILS, witnesses=[_S("[0,1] U [2,3]")]),
        _e("increasing", FAILS, witnesses=[_S("[0,1] U [4,5]", "[0,2] U [3,5]")]),
        _e("closed_prop", UNTESTABLE, claim=FAILS,
           reason="witness (Q ∩ [0,1]) ∪ [2,3] is not representable; on interval sets "
                  "closure and derived set change only a null set"),
        _e("accumulated", UNTESTABLE, claim=FAILS,
           reason="witness (Q ∩ [0,1]) ∪ [2,3] is not representable; on interval sets "
                  "closure and derived set change only a null set"),
    ],
    "ms_aa_K": [
        _e("internal", HOLDS),
        _e("monotone", HOLDS),
        _e("increasing", HOLDS),
        _e("strong_internal", UNTESTABLE, claim=FAILS,
           reason="the domain is finite point sets, where liminf is undefined"),
        _e("strong_monotone", UNTESTABLE, claim=FAILS,
           reason="the domain is finite point sets, where liminf is undefined"),
        _e("finite_valued", UNTESTABLE, claim=FAILS,
           reason="every value on a finite point set is finite"),
        _e("convex", HOLDS, claim=FAILS,
           reason="K(a,a) = a gives H ⊆ MS(H), so MS(H) ⊆ I forces H ∪ L ⊆ I and "
                  "internality concludes"),
    ],
    "middle_third": [_e("internal", HOLDS)],
    "max_interval": [
        _e("internal", HOLDS),
        _e("finite_order", HOLDS, cap=16),
    ],
}


def expected_profile(op_name: str) -> list:
    """The property table of a built-in operator."""
    try:
        return list(_PROFILES[op_name])
    except KeyError:
        raise ValueError(f"unknown operator {op_name!r}; expected one of {', '.join(OPERATOR_NAMES)}") from None


def corpus_profile(op_name: str) -> CorpusProfile:
    """A corpus shape whose sets mostly lie in the operator's domain."""
    if op_name in ("middle_third", "max_interval"):
        return CorpusProfile(open_fraction=1.0, point_fraction=0.0)
    if op_name == "ms_aa_K":
        return CorpusProfile(endpoint_range=(1, 10), open_fraction=0.0, point_fraction=1.0)
    if op_name == "ms_hf":
        return CorpusProfile(point_fraction=0.0)
    return CorpusProfile()


def corpus_for(op_name: str, seed: int = 0, count: int = 500) -> list:
    return gen_corpus(seed, count, corpus_profile(op_name))


@dataclass
class EntryResult:
    entry: ProfileEntry
    ok: bool
    report: Optional[CheckReport] = None
    note: str = ""
    discharged_by: Optional[str] = None  # "witness" or "search" for fails entries


@dataclass
class ProfileRun:
    operator: str
    corpus_size: int
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list:
        out = []
        for r in self.results:
            e = r.entry
            tag = "ok  " if r.ok else "FAIL"
            how = f" by {r.discharged_by}" if r.discharged_by else ""
            counts = ""
            if r.report is not None:
                counts = f" [{r.report.cases_run} run, {r.report.skipped} skipped, " \
                         f"{len(r.report.violations)} violations]"
            claim = f" (claimed: {e.claim})" if e.contested else ""
            out.append(f"{tag} {self.operator:13s} {str(e.prop):22s} {e.status}{how}{claim}{counts}")
            if r.note:
                out.append(f"       {r.note}")
        return out


def run_entry(op: MeanSetOperator, entry: ProfileEntry, corpus, seed: int = 0) -> EntryResult:
    prop = entry.prop
    aux = Aux(seed=seed, cap=entry.cap or Aux.cap)
    if entry.status == UNTESTABLE:
        return EntryResult(entry, True, note=f"skipped: {entry.reason}")
    if entry.status == HOLDS:
        rep = check(op, prop, corpus, aux)
        if rep.violations:
            return EntryResult(entry, False, rep, note=rep.violations[0].clause)
        if rep.cases_run == 0:
            return EntryResult(entry, False, rep, note="no applicable case in the corpus")
        return EntryResult(entry, True, rep)
    # fails: the witness first, then a budgeted search
    if entry.witnesses:
        rep = check(op, prop, corpus, replace(aux, cases=entry.witnesses, generate=False))
        if rep.violations:
            return EntryResult(entry, True, rep, discharged_by="witness")
    rounds = max(1, -(-SEARCH_BUDGET // max(1, len(corpus))))
    rep = check(op, prop, corpus, replace(aux, rounds=rounds, budget=SEARCH_BUDGET,
                                          stop_at_first=True))
    if rep.violations:
        return EntryResult(entry, True, rep, discharged_by="search")
    return EntryResult(entry, False, rep, note=f"no violation within {SEARCH_BUDGET} cases")


def run_profile(op_name: str, corpus=None, seed: int = 0, count: int = 500) -> ProfileRun:
    """Verify every entry of ``expected_profile(op_name)`` on a corpus."""
    op = operator_by_name(op_name)
    if corpus is None:
        corpus = corpus_for(op_name, seed, count)
    run = ProfileRun(op_name, len(corpus))
    for entry in expected_profile(op_name):
        run.results.append(run_entry(op, entry, corpus, seed))
    return run


# -- ladder evidence for the unrepresentable ladder witnesses -------------------


@dataclass(frozen=True)
class LadderEvidence:
    steps: tuple
    persistent: IntervalSet
    window: IntervalSet

    @property
    def found(self) -> bool:
        return not self.persistent.is_empty


def ladder_strong_internal_evidence(op: MeanSetOperator, D, n_max: int = 12) -> LadderEvidence:
    """Points of ``op`` on every enumeration ``H_n`` of ``D`` (n = 2..n_max) that lie
    outside ``[liminf D, limsup D]``.

    A point present at every stage is kept by the whole ladder set whenever
    ``op`` is increasing, so a nonempty result refutes strong internality on ``D``.
    """
    from ..countable import derived_set, enumerate_desc

    Hd = derived_set(D)
    window = IntervalSet.closed(Hd.minimum, Hd.maximum)
    persistent = None
    steps = []
    for n in range(2, n_max + 1):
        H = enumerate_desc(D, n)
        outside = op(H) - window
        steps.append(len(outside.components))
        persistent = outside if persistent is None else persistent & outside
    return LadderEvidence(tuple(steps), persistent, window)


__all__ = [
    "FAILS", "HOLDS", "OPERATOR_NAMES", "SEARCH_BUDGET", "UNTESTABLE", "EntryResult",
    "LadderEvidence", "ProfileEntry", "ProfileRun", "aa_K_operator", "corpus_for",
    "corpus_profile", "expected_profile", "ladder_strong_internal_evidence",
    "operator_by_name", "run_entry", "run_profile",
]
