"""Exact, sampled checks of the mean-set axioms.

Each property has a case generator, which draws the extra inputs a clause
quantifies over (a second set, a shift, an interval ...), and an evaluator,
which decides the clause exactly for one case. A case either holds, is
skipped with a reason, or yields a violation carrying every input and output.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from ..errors import DomainError, IterationError
from ..exactset import (
    IntervalSet,
    combine,
    format_rat,
    format_set,
    reflect,
    scale,
    symmetry_center,
    topo,
    translate,
)
from ..operators import MeanSetOperator, iterate
from .corpus import random_rat


class PropertyId(str, Enum):
    INTERNAL = "internal"
    STRONG_INTERNAL = "strong_internal"
    MONOTONE = "monotone"
    STRONG_MONOTONE = "strong_monotone"
    MEAN_MONOTONE = "mean_monotone"
    TRANSLATION_INVARIANT = "translation_invariant"
    SYMMETRIC = "symmetric"
    REFLECTION_INVARIANT = "reflection_invariant"
    HOMOGENEOUS = "homogeneous"
    FINITE_INDEPENDENT = "finite_independent"
    CONVEX = "convex"
    CLOSED_PROP = "closed_prop"
    ACCUMULATED = "accumulated"
    FINITE_VALUED = "finite_valued"
    IDEMPOTENT = "idempotent"
    INCREASING = "increasing"
    F_INCREASING = "f_increasing"
    FINITE_ORDER = "finite_order"

    def __str__(self):
        return self.value


DEFAULT_CAP = 16


def parse_property(text) -> tuple:
    """``(PropertyId, cap)`` from ``"monotone"`` or ``"finite_order:8"``; cap is None otherwise."""
    if isinstance(text, PropertyId):
        return text, None
    name, _, arg = str(text).partition(":")
    if name.startswith("finite_order(") and name.endswith(")"):
        name, arg = "finite_order", name[len("finite_order("):-1]
    try:
        prop = PropertyId(name)
    except ValueError:
        raise ValueError(f"unknown property {text!r}") from None
    if arg:
        if prop is not PropertyId.FINITE_ORDER:
            raise ValueError(f"property {name} takes no parameter")
        cap = int(arg)
        if cap < 1:
            raise ValueError("finite_order cap must be at least 1")
        return prop, cap
    return prop, None


# -- reporting ------------------------------------------------------------------


def _render(v) -> str:
    if isinstance(v, IntervalSet):
        return format_set(v)
    if isinstance(v, Fraction):
        return format_rat(v)
    return str(v)


@dataclass(frozen=True)
class Violation:
    inputs: tuple
    outputs: tuple
    clause: str
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "inputs": [_render(v) for v in self.inputs],
            "outputs": [_render(v) for v in self.outputs],
            "clause": self.clause,
            "detail": self.detail,
        }


@dataclass
class CheckReport:
    property: PropertyId
    operator: str
    cases_run: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    skip_reasons: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "property": str(self.property),
            "operator": self.operator,
            "cases_run": self.cases_run,
            "skipped": self.skipped,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "violations": [v.to_json() for v in self.violations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def table(self) -> str:
        lines = [
            f"{self.operator} / {self.property}: {self.cases_run} cases, "
            f"{self.skipped} skipped, {len(self.violations)} violations"
        ]
        for reason, n in sorted(self.skip_reasons.items()):
            lines.append(f"  skipped {n:5d}  {reason}")
        for v in self.violations[:10]:
            args = "; ".join(_render(x) for x in v.inputs)
            lines.append(f"  VIOLATION {v.clause}: inputs {args}")
            if v.detail:
                lines.append(f"            {v.detail}")
        if len(self.violations) > 10:
            lines.append(f"  ... {len(self.violations) - 10} more")
        return "\n".join(lines)


@dataclass(frozen=True)
class Aux:
    """Extra parameters for :func:`check`.

    ``cases`` are explicit input tuples evaluated before any generated case.
    ``rounds`` passes are made over the corpus, each drawing fresh auxiliary
    inputs; ``budget`` caps the number of attempted cases and ``stop_at_first``
    ends the run at the first violation. ``offsets``, ``scales`` and ``centers``
    pin the translation, homogeneity and reflection parameters.
    """

    seed: int = 0
    cases: tuple = ()
    generate: bool = True
    rounds: int = 1
    budget: Optional[int] = None
    stop_at_first: bool = False
    cap: int = DEFAULT_CAP
    offsets: tuple = ()
    scales: tuple = ()
    centers: tuple = ()


class Skip(Exception):
    """Raised by generators and evaluators for an inapplicable case."""


class _Fail(Exception):
    def __init__(self, clause, outputs, detail=""):
        super().__init__(clause)
        self.clause, self.outputs, self.detail = clause, tuple(outputs), detail


# -- small exact helpers --------------------------------------------------------


def _hull(S: IntervalSet) -> IntervalSet:
    return IntervalSet.closed(S.inf, S.sup)


def _lims(S: IntervalSet):
    d = topo(S, "derived")
    if d.is_empty:
        return None
    return d.inf, d.sup


def _value_lims(M: IntervalSet):
    # a finite value has no accumulation points; its own bounds stand in
    return _lims(M) or (M.inf, M.sup)


def _ms(op: MeanSetOperator, S: IntervalSet) -> IntervalSet:
    if not op.accepts(S):
        raise Skip("input outside the operator's domain")
    return op.fn(S)


def _nonempty(*sets):
    if any(s.is_empty for s in sets):
        raise Skip("a mean-set value is empty; inf/sup undefined")


def _union(a, b):
    return combine(a, b, "union")


def finite_leq(H, K) -> bool:
    """``H <= K``: some bijection ``g: H -> K`` has ``x <= g(x)`` everywhere (finite sets)."""
    h, k = _finite_points(H), _finite_points(K)
    if len(h) != len(k):
        return False
    return all(x <= y for x, y in zip(h, k))


def _finite_points(S) -> list:
    if isinstance(S, IntervalSet):
        if not S.is_finite:
            raise DomainError("finite_leq compares finite point sets")
        return S.points()
    return sorted(set(S))


def _other(corpus, rng):
    return corpus[rng.randrange(len(corpus))]


def _rat(rng, lo=-5, hi=5, den=4):
    return random_rat(rng, lo, hi, den)


def _pos_rat(rng):
    d = rng.randint(1, 4)
    return Fraction(rng.randint(1, 4 * d), d)


def _pick(rng, pinned, draw):
    return rng.choice(pinned) if pinned else draw()


# -- properties ---------------------------------------------------------------
# Generators build one case from a corpus set; evaluators raise _Fail or Skip.


def _gen_single(op, S, corpus, rng, aux):
    return (S,)


def _ev_internal(op, H):
    M = _ms(op, H)
    if M.is_empty or M.issubset(_hull(H)):
        return
    raise _Fail("MS(H) ⊆ [inf H, sup H]", (M,))


def _ev_strong_internal(op, H):
    lim = _lims(H)
    if lim is None:
        raise Skip("finite set: liminf/limsup undefined")
    M = _ms(op, H)
    if M.is_empty or M.issubset(IntervalSet.closed(*lim)):
        return
    raise _Fail("MS(H) ⊆ [liminf H, limsup H]", (M,),
                f"liminf H={format_rat(lim[0])}, limsup H={format_rat(lim[1])}")


def _shift_above(T: IntervalSet, level, gap):
    return translate(T, level + gap - T.inf)


def _gen_monotone(op, S, corpus, rng, aux):
    T = _other(corpus, rng)
    gap = rng.choice((Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1)))
    return S, _shift_above(T, S.sup, gap)


def _ev_monotone(op, H1, H2):
    if not H1.sup <= H2.inf:
        raise Skip("precondition sup H1 <= inf H2 fails")
    H12 = _union(H1, H2)
    M1, M12, M2 = _ms(op, H1), _ms(op, H12), _ms(op, H2)
    _nonempty(M1, M12, M2)
    if not M1.inf <= M12.inf:
        raise _Fail("inf MS(H1) <= inf MS(H1 ∪ H2)", (M1, M12, M2))
    if not M12.sup <= M2.sup:
        raise _Fail("sup MS(H1 ∪ H2) <= sup MS(H2)", (M1, M12, M2))


def _gen_strong_monotone(op, S, corpus, rng, aux):
    T = _other(corpus, rng)
    ls, lt = _lims(S), _lims(T)
    if ls is None or lt is None:
        raise Skip("finite set: liminf/limsup undefined")
    gap = rng.choice((Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1)))
    return S, translate(T, ls[1] + gap - lt[0])


def _ev_strong_monotone(op, H1, H2):
    l1, l2 = _lims(H1), _lims(H2)
    if l1 is None or l2 is None:
        raise Skip("finite set: liminf/limsup undefined")
    H12 = _union(H1, H2)
    for H in (H1, H2, H12):
        try:
            _ev_strong_internal(op, H)
        except _Fail as f:
            raise _Fail("strong internal: " + f.clause, f.outputs, f"on {format_set(H)}; {f.detail}")
    if not l1[1] <= l2[0]:
        raise Skip("precondition limsup H1 <= liminf H2 fails")
    M1, M12, M2 = _ms(op, H1), _ms(op, H12), _ms(op, H2)
    _nonempty(M1, M12, M2)
    m1, m12, m2 = _value_lims(M1), _value_lims(M12), _value_lims(M2)
    if not m1[0] <= m12[0]:
        raise _Fail("liminf MS(H1) <= liminf MS(H1 ∪ H2)", (M1, M12, M2))
    if not m12[1] <= m2[1]:
        raise _Fail("limsup MS(H1 ∪ H2) <= limsup MS(H2)", (M1, M12, M2))


def _gen_mean_monotone(op, S, corpus, rng, aux):
    M = _ms(op, S)
    _nonempty(M)
    T1, T2 = _other(corpus, rng), _other(corpus, rng)
    g1 = rng.choice((Fraction(0), Fraction(1, 2), Fraction(2)))
    g2 = rng.choice((Fraction(0), Fraction(1, 2), Fraction(2)))
    K1 = translate(T1, M.inf - g1 - T1.sup)
    K2 = translate(T2, M.sup + g2 - T2.inf)
    return S, K1, K2


def _ev_mean_monotone(op, H, K1, K2):
    HK1, HK2 = _union(H, K1), _union(H, K2)
    for X in (K1, K2, HK1, HK2):
        if not op.accepts(X):
            raise Skip("input outside the operator's domain")
    M = _ms(op, H)
    _nonempty(M)
    if not (K1.sup <= M.inf and M.sup <= K2.inf):
        raise Skip("precondition sup K1 <= inf MS(H) <= sup MS(H) <= inf K2 fails")
    M1, M2 = op.fn(HK1), op.fn(HK2)
    _nonempty(M1, M2)
    if not M1.inf <= M.inf:
        raise _Fail("inf MS(H ∪ K1) <= inf MS(H)", (M, M1, M2))
    if not M.sup <= M2.sup:
        raise _Fail("sup MS(H) <= sup MS(H ∪ K2)", (M, M1, M2))


def _gen_translation(op, S, corpus, rng, aux):
    return S, _pick(rng, aux.offsets, lambda: _rat(rng))


def _ev_translation(op, H, x):
    Hx = translate(H, x)
    M, Mx = _ms(op, H), _ms(op, Hx)
    if Mx != translate(M, x):
        raise _Fail("MS(H + x) = MS(H) + x", (M, Mx))


def _ev_symmetric(op, H):
    s = symmetry_center(H) if not H.is_empty else None
    if s is None:
        raise Skip("H is not symmetric")
    M = _ms(op, H)
    if reflect(M, s) != M:
        raise _Fail("T_s(MS(H)) = MS(H) for the symmetry center s", (M,), f"s={format_rat(s)}")


def _gen_reflection(op, S, corpus, rng, aux):
    return S, _pick(rng, aux.centers, lambda: _rat(rng))


def _ev_reflection(op, H, s):
    M, Ms = _ms(op, H), _ms(op, reflect(H, s))
    if reflect(M, s) != Ms:
        raise _Fail("T_s(MS(H)) = MS(T_s(H))", (M, Ms))


def _gen_homogeneous(op, S, corpus, rng, aux):
    return S, _pick(rng, aux.scales, lambda: _pos_rat(rng))


def _ev_homogeneous(op, H, a):
    if not a > 0:
        raise Skip("scale factor must be positive")
    M, Ma = _ms(op, H), _ms(op, scale(H, a))
    if Ma != scale(M, a):
        raise _Fail("MS(a H) = a MS(H)", (M, Ma))


def _gen_finite_independent(op, S, corpus, rng, aux):
    if S.is_finite:
        raise Skip("H is finite")
    lo, hi = S.inf, S.sup
    pts = []
    for _ in range(rng.randint(1, 3)):
        r = rng.random()
        if r < 0.5:
            p = lo + (hi - lo) * Fraction(rng.randint(1, 15), 16)
        elif r < 0.7:
            c = rng.choice(S.components)
            p = rng.choice((c.lo, c.hi))
        else:
            p = rng.choice((lo - _pos_rat(rng), hi + _pos_rat(rng)))
        pts.append(p)
    return S, IntervalSet.of_points(*pts)


def _ev_finite_independent(op, H, V):
    if H.is_finite:
        raise Skip("H is finite")
    Hu, Hd = _union(H, V), combine(H, V, "diff")
    M = _ms(op, H)
    Mu, Md = _ms(op, Hu), _ms(op, Hd)
    if Mu != M:
        raise _Fail("MS(H) = MS(H ∪ V)", (M, Mu, Md))
    if Md != M:
        raise _Fail("MS(H) = MS(H - V)", (M, Mu, Md))


def _gen_convex(op, S, corpus, rng, aux):
    M = _ms(op, S)
    _nonempty(M)
    d1 = rng.choice((Fraction(0), Fraction(1, 2), Fraction(1)))
    d2 = rng.choice((Fraction(0), Fraction(1, 2), Fraction(1)))
    lo, hi = M.inf - d1, M.sup + d2
    I = IntervalSet.closed(lo, hi)
    T = _other(corpus, rng)
    if lo == hi or T.inf == T.sup:
        L = IntervalSet.of_points(lo + (hi - lo) * Fraction(rng.randint(0, 4), 4))
    else:
        # affine image of T onto a random subinterval of I
        a = lo + (hi - lo) * Fraction(rng.randint(0, 2), 4)
        b = hi - (hi - lo) * Fraction(rng.randint(0, 1), 4)
        L = translate(scale(translate(T, -T.inf), (b - a) / (T.sup - T.inf)), a)
    if rng.random() < 0.5:
        L = _union(L, IntervalSet.of_points(rng.choice((lo, hi))))
    return S, I, L


def _ev_convex(op, H, I, L):
    if not (len(I.components) == 1 and I.components[0].lo_closed and I.components[0].hi_closed):
        raise Skip("I must be a closed interval")
    HL = _union(H, L)
    M = _ms(op, H)
    if not (M.issubset(I) and L.issubset(I)):
        raise Skip("precondition MS(H) ⊆ I and L ⊆ I fails")
    ML = _ms(op, HL)
    if not ML.issubset(I):
        raise _Fail("MS(H ∪ L) ⊆ I", (M, ML))


def _ev_closed(op, H):
    C = topo(H, "closure")
    M, Mc = _ms(op, H), _ms(op, C)
    if M != Mc:
        raise _Fail("MS(cl H) = MS(H)", (M, Mc))


def _ev_accumulated(op, H):
    D = topo(H, "derived")
    if D.is_empty:
        raise Skip("H' is empty")
    M, Md = _ms(op, H), _ms(op, D)
    if M != Md:
        raise _Fail("MS(H') = MS(H)", (M, Md))


def _ev_finite(op, H):
    M = _ms(op, H)
    if not M.is_finite:
        raise _Fail("MS(H) is finite", (M,))


def _ev_idempotent(op, H):
    M = _ms(op, H)
    if not op.accepts(M):
        raise Skip("MS(H) outside the operator's domain")
    MM = op.fn(M)
    if MM != M:
        raise _Fail("MS(MS(H)) = MS(H)", (M, MM))


def _gen_increasing(op, S, corpus, rng, aux):
    T = _other(corpus, rng)
    # move T so its hull meets the hull of S
    T = translate(T, S.inf + (S.sup - S.inf) * Fraction(rng.randint(0, 4), 4) - T.inf)
    if rng.random() < 0.5:
        inner = combine(S, T, "intersect")
        if not inner.is_empty:
            return inner, S
    return S, _union(S, T)


def _ev_increasing(op, H, K):
    if not H.issubset(K):
        raise Skip("precondition H ⊆ K fails")
    M, Mk = _ms(op, H), _ms(op, K)
    if not M.issubset(Mk):
        raise _Fail("MS(H) ⊆ MS(K)", (M, Mk))


def _gen_f_increasing(op, S, corpus, rng, aux):
    if not S.is_finite or S.is_empty:
        raise Skip("f-increasing is checked on finite sets only")
    pts = S.points()
    bumped = [p + Fraction(rng.randint(0, 4), rng.randint(1, 4)) for p in pts]
    return S, IntervalSet.of_points(*bumped)


def _ev_f_increasing(op, H, K):
    if not (H.is_finite and K.is_finite):
        raise Skip("f-increasing is checked on finite sets only")
    if not finite_leq(H, K):
        raise Skip("precondition H <= K fails")
    M, Mk = _ms(op, H), _ms(op, K)
    if not (M.is_finite and Mk.is_finite):
        raise Skip("a mean-set value is infinite")
    if not finite_leq(M, Mk):
        raise _Fail("MS(H) <= MS(K)", (M, Mk))


def _make_finite_order(cap):
    def ev(op, H):
        if not op.accepts(H):
            raise Skip("input outside the operator's domain")
        try:
            rep = iterate(op, H, n_max=cap)
        except IterationError:
            raise Skip("an iterate left the operator's domain") from None
        if rep.fixpoint_index is None:
            sizes = ",".join(str(len(t.components)) for t in rep.trajectory)
            raise _Fail(f"MS^(n+1)(H) = MS^(n)(H) for some n <= {cap}", (rep.trajectory[-1],),
                        f"component counts {sizes}")
    return ev


_TABLE = {
    PropertyId.INTERNAL: (_gen_single, _ev_internal),
    PropertyId.STRONG_INTERNAL: (_gen_single, _ev_strong_internal),
    PropertyId.MONOTONE: (_gen_monotone, _ev_monotone),
    PropertyId.STRONG_MONOTONE: (_gen_strong_monotone, _ev_strong_monotone),
    PropertyId.MEAN_MONOTONE: (_gen_mean_monotone, _ev_mean_monotone),
    PropertyId.TRANSLATION_INVARIANT: (_gen_translation, _ev_translation),
    PropertyId.SYMMETRIC: (_gen_single, _ev_symmetric),
    PropertyId.REFLECTION_INVARIANT: (_gen_reflection, _ev_reflection),
    PropertyId.HOMOGENEOUS: (_gen_homogeneous, _ev_homogeneous),
    PropertyId.FINITE_INDEPENDENT: (_gen_finite_independent, _ev_finite_independent),
    PropertyId.CONVEX: (_gen_convex, _ev_convex),
    PropertyId.CLOSED_PROP: (_gen_single, _ev_closed),
    PropertyId.ACCUMULATED: (_gen_single, _ev_accumulated),
    PropertyId.FINITE_VALUED: (_gen_single, _ev_finite),
    PropertyId.IDEMPOTENT: (_gen_single, _ev_idempotent),
    PropertyId.INCREASING: (_gen_increasing, _ev_increasing),
    PropertyId.F_INCREASING: (_gen_f_increasing, _ev_f_increasing),
}


def evaluate(op: MeanSetOperator, prop, inputs, cap: int = DEFAULT_CAP):
    """Decide one case: ``None`` if the clause holds, else a :class:`Violation`.

    Raises :class:`Skip` for inapplicable cases.
    """
    prop, pcap = parse_property(prop)
    if prop is PropertyId.FINITE_ORDER:
        ev = _make_finite_order(pcap or cap)
    else:
        ev = _TABLE[prop][1]
    inputs = tuple(inputs)
    if not op.accepts(inputs[0]):
        raise Skip("input outside the operator's domain")
    try:
        ev(op, *inputs)
    except _Fail as f:
        return Violation(inputs, f.outputs, f.clause, f.detail)
    return None


def _case_seed(seed, prop, rnd, i):
    return f"{seed}:{prop.value}:{rnd}:{i}"


def check(op: MeanSetOperator, prop, corpus, aux: Optional[Aux] = None) -> CheckReport:
    """Run ``prop`` against ``op`` over ``corpus``; deterministic for a fixed ``aux.seed``.

    Corpus sets outside the domain of ``op`` are counted as skipped.
    """
    aux = aux or Aux()
    prop, pcap = parse_property(prop)
    cap = pcap or aux.cap
    rep = CheckReport(prop, op.name)
    gen = _TABLE[prop][0] if prop is not PropertyId.FINITE_ORDER else _gen_single
    attempts = 0

    def run(inputs):
        nonlocal attempts
        attempts += 1
        try:
            v = evaluate(op, prop, inputs, cap)
        except Skip as s:
            rep.skipped += 1
            rep.skip_reasons[str(s)] += 1
            return
        rep.cases_run += 1
        if v is not None:
            rep.violations.append(v)

    def done():
        if aux.stop_at_first and rep.violations:
            return True
        return aux.budget is not None and attempts >= aux.budget

    for case in aux.cases:
        if done():
            return rep
        run(case)
    if not aux.generate:
        return rep
    corpus = list(corpus)
    for rnd in range(aux.rounds):
        for i, S in enumerate(corpus):
            if done():
                return rep
            rng = random.Random(_case_seed(aux.seed, prop, rnd, i))
            try:
                if not op.accepts(S):
                    raise Skip("input outside the operator's domain")
                inputs = gen(op, S, corpus, rng, aux)
            except Skip as s:
                attempts += 1
                rep.skipped += 1
                rep.skip_reasons[str(s)] += 1
                continue
            run(inputs)
    return rep


__all__ = [
    "Aux", "CheckReport", "DEFAULT_CAP", "PropertyId", "Skip", "Violation", "check",
    "evaluate", "finite_leq", "parse_property",
]
