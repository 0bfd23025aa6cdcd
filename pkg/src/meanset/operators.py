"""Mean-set operators as first-class values: wrapping, composition, iteration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import core
from .errors import CompositionError, DomainError, IterationError
from .exactset import EMPTY, IntervalSet, combine, measure, topo


def _nonempty(S: IntervalSet) -> bool:
    return not S.is_empty


def _any(S: IntervalSet) -> bool:
    return True


def _nonempty_open(S: IntervalSet) -> bool:
    return not S.is_empty and S.is_open


def _positive_measure(S: IntervalSet) -> bool:
    return measure(S) > 0


@dataclass(frozen=True)
class MeanSetOperator:
    """A named map on IntervalSets together with its domain predicate."""

    name: str
    fn: Callable[[IntervalSet], IntervalSet] = field(repr=False)
    domain: Callable[[IntervalSet], bool] = field(default=_nonempty, repr=False)

    def accepts(self, S: IntervalSet) -> bool:
        return bool(self.domain(S))

    def __call__(self, S: IntervalSet) -> IntervalSet:
        if not self.domain(S):
            raise DomainError(f"{S} is outside the domain of {self.name}")
        return self.fn(S)

    apply = __call__


identity = MeanSetOperator("id", lambda S: S, _any)


def topo_operator(kind: str) -> MeanSetOperator:
    if kind not in ("interior", "closure", "derived"):
        raise ValueError(f"unknown topological operator {kind!r}")
    return MeanSetOperator(kind, lambda S: topo(S, kind))


def aa_operator() -> MeanSetOperator:
    return MeanSetOperator("ms_aa", core.ms_aa)


def aas_operator() -> MeanSetOperator:
    return MeanSetOperator("ms_aas", core.ms_aas)


def hf_operator() -> MeanSetOperator:
    return MeanSetOperator("ms_hf", core.ms_hf, _positive_measure)


def middle_third_operator() -> MeanSetOperator:
    return MeanSetOperator("middle_third", core.middle_third, _nonempty_open)


def max_interval_operator() -> MeanSetOperator:
    return MeanSetOperator("max_interval", core.max_interval, _nonempty_open)


def compose(outer: MeanSetOperator, inner: MeanSetOperator) -> MeanSetOperator:
    """``(outer ∘ inner)(S) = outer(inner(S))`` on the domain of ``inner``."""
    if outer is identity:
        return inner
    if inner is identity:
        return outer

    def fn(S):
        mid = inner(S)
        if not outer.accepts(mid):
            raise CompositionError(
                f"{inner.name}({S}) = {mid} is outside the domain of {outer.name}",
                stage=outer.name,
            )
        return outer.fn(mid)

    return MeanSetOperator(f"{outer.name}∘{inner.name}", fn, inner.domain)


def _pointwise(op1, op2, kind, sym):
    def fn(S):
        return combine(op1(S), op2(S), kind)

    return MeanSetOperator(
        f"({op1.name}{sym}{op2.name})", fn, lambda S: op1.accepts(S) and op2.accepts(S)
    )


def op_union(op1: MeanSetOperator, op2: MeanSetOperator) -> MeanSetOperator:
    return _pointwise(op1, op2, "union", "∪")


def op_intersection(op1: MeanSetOperator, op2: MeanSetOperator) -> MeanSetOperator:
    return _pointwise(op1, op2, "intersect", "∩")


@dataclass(frozen=True)
class IterationReport:
    trajectory: tuple
    fixpoint_index: Optional[int]
    truncated_union: IntervalSet
    max_gap: object

    @property
    def steps(self) -> int:
        return len(self.trajectory) - 1


def iterate(op: MeanSetOperator, S: IntervalSet, n_max: int = 64) -> IterationReport:
    """Apply ``op`` up to ``n_max`` times, stopping at the first fixpoint.

    ``fixpoint_index`` is the first k with ``trajectory[k+1] == trajectory[k]``.
    The returned union of all iterates stands in for the infinite union.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    traj = [S]
    fix = None
    for i in range(n_max):
        cur = traj[-1]
        if not op.accepts(cur):
            raise IterationError(f"iterate {i} = {cur} left the domain of {op.name}", index=i)
        nxt = op.fn(cur)
        traj.append(nxt)
        if nxt == cur:
            fix = i
            break
    union = EMPTY
    for t in traj:
        union = combine(union, t, "union")
    return IterationReport(tuple(traj), fix, union, core.max_gap(union))


@dataclass
class InvertibilityReport:
    operator: str
    cases: int
    bound_violations: list
    injectivity_violations: list

    @property
    def ok(self) -> bool:
        return not self.bound_violations and not self.injectivity_violations


def invertibility_check(op: MeanSetOperator, corpus) -> InvertibilityReport:
    """Test the two group-membership conditions on ``corpus``.

    An operator is invertible under composition iff it is injective and
    preserves both inf and sup of every set.
    """
    seen = {}
    bounds, inj = [], []
    cases = 0
    for S in corpus:
        if not op.accepts(S):
            continue
        cases += 1
        out = op(S)
        if out.is_empty or out.inf != S.inf or out.sup != S.sup:
            bounds.append((S, out))
        prev = seen.get(out)
        if prev is not None and prev != S:
            inj.append((prev, S, out))
        else:
            seen[out] = S
    return InvertibilityReport(op.name, cases, bounds, inj)
