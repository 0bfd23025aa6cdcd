"""Exact approximating-sequence mean-sets of ladder descriptors.

Everything here works on the finite geometry of the derived set: which
ladder limits are accumulated from the left and from the right of a point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import DomainError
from ..exactset import EMPTY, Interval, IntervalSet, combine

from .descriptor import ABOVE, BELOW, CountableDesc, Ladder


class ExactModeUnsupported(DomainError):
    """Raised when an exact computation needs a finite derived set."""


@dataclass(frozen=True)
class DerivedSet:
    """``H'`` of a descriptor.

    ``points`` holds ``H'`` when it is finite. Otherwise ``desc`` describes it
    as a descriptor one level shallower and ``second`` is its own derived set.
    ``extremes`` is ``(a1, a2, a3, a4)`` with ``a1 = min H'``,
    ``a2 = inf(H' - {a1})``, ``a3 = sup(H' - {a4})``, ``a4 = max H'``, or
    ``None`` when ``H'`` has fewer than two points.
    """

    points: Optional[IntervalSet]
    desc: Optional[CountableDesc]
    second: IntervalSet
    extremes: Optional[tuple]

    @property
    def is_finite(self) -> bool:
        return self.points is not None

    @property
    def minimum(self) -> Fraction:
        return self.extremes[0] if self.extremes else self.points.inf

    @property
    def maximum(self) -> Fraction:
        return self.extremes[3] if self.extremes else self.points.sup


def derived_set(D: CountableDesc) -> DerivedSet:
    limits = [L.limit for L in D.ladders] + [d.limit for d in D.double_ladders]
    P = IntervalSet.of_points(*limits)
    pts = P.points()
    if not D.double_ladders:
        ext = None
        if len(pts) >= 2:
            ext = (pts[0], pts[1], pts[-2], pts[-1])
        return DerivedSet(P, None, EMPTY, ext)

    sub = tuple(Ladder(d.limit, ABOVE, d.outer) for d in D.double_ladders)
    inner = CountableDesc(sub, (), P)
    second = IntervalSet.of_points(*(d.limit for d in D.double_ladders))
    a1 = pts[0]
    # H' - {a1} still accumulates at a1 when a1 is a double-ladder limit
    a2 = a1 if a1 in second else pts[1]
    cand = set(pts)
    for d in D.double_ladders:
        cand.update((d.limit + d.outer, d.limit + d.outer / 2))
    a4 = max(cand)
    a3 = max(cand - {a4})
    return DerivedSet(None, inner, second, (a1, a2, a3, a4))


def accumulation_sides(D: CountableDesc, p) -> tuple:
    """``(from_left, from_right)``: whether ``H`` accumulates at ``p`` from each side."""
    left = any(L.direction == BELOW and L.limit == p for L in D.ladders)
    right = any(L.direction == ABOVE and L.limit == p for L in D.ladders)
    for d in D.double_ladders:
        if d.limit == p:
            right = True
        else:
            n = d.outer / (p - d.limit) if p > d.limit else None
            if n is not None and n.denominator == 1:
                right = True
    return left, right


def ms_a(D: CountableDesc) -> IntervalSet:
    """Limits of averages over all approximating sequences: ``[liminf H, limsup H]``."""
    Hd = derived_set(D)
    return IntervalSet.closed(Hd.minimum, Hd.maximum)


def ms_as(D: CountableDesc) -> IntervalSet:
    """Limits of averages over balanced approximating sequences.

    An extreme point of ``H'`` accumulated from both sides is itself a limit
    (balance at that point, both halves averaging to it), so it replaces the
    midpoint of the two outermost derived points on that end. A minimum that
    is only a limit of derived points from the right is approached but not attained.
    """
    Hd = derived_set(D)
    if Hd.extremes is None:
        (a,) = Hd.points.points()
        left, right = accumulation_sides(D, a)
        return IntervalSet.of_points(a) if left and right else EMPTY
    a1, a2, a3, a4 = Hd.extremes
    l1, r1 = accumulation_sides(D, a1)
    l4, r4 = accumulation_sides(D, a4)
    hi = a4 if (l4 and r4) else (a3 + a4) / 2
    if l1 and r1:
        return IntervalSet.closed(a1, hi)
    if a1 in Hd.second:
        return IntervalSet([Interval(a1, hi, False, True)])
    return IntervalSet.closed((a1 + a2) / 2, hi)


# -- per-point side statistics -------------------------------------------------


def side_limits(D: CountableDesc, x):
    """Accumulation points of ``H ∩ (-inf, x]`` and of ``H ∩ [x, inf)`` (depth 1).

    A ladder from above with limit ``a`` accumulates on the left half-line iff
    ``x > a`` and on the right one iff ``x <= a``; a ladder from below mirrors this.
    """
    if D.double_ladders:
        raise ExactModeUnsupported("exact mode unsupported: the derived set is infinite")
    lo, hi = set(), set()
    for L in D.ladders:
        if L.direction == ABOVE:
            (lo if x > L.limit else hi).add(L.limit)
        else:
            (hi if x < L.limit else lo).add(L.limit)
    return sorted(lo), sorted(hi)


def _window(D: CountableDesc, x):
    lo, hi = side_limits(D, x)
    if not lo or not hi:
        return None
    return (lo[0] + hi[0]) / 2, (lo[-1] + hi[-1]) / 2


def _atoms(D: CountableDesc):
    lim = sorted({L.limit for L in D.ladders})
    for a in lim:
        yield Interval.point(a), a
    for a, b in zip(lim, lim[1:]):
        yield Interval.open(a, b), (a + b) / 2


def balanced_windows(D: CountableDesc):
    """Per atom of the partition induced by ``H'``: the atom and its window of balanced limits."""
    out = []
    for atom, rep in _atoms(D):
        w = _window(D, rep)
        if w is not None:
            out.append((atom, IntervalSet.closed(*w)))
    return out


def ms_as_by_atoms(D: CountableDesc) -> IntervalSet:
    """``ms_as`` as the union of balanced windows over every balance point (depth 1)."""
    parts = [w for _, w in balanced_windows(D)]
    return IntervalSet([c for w in parts for c in w.components])


def ms_axs(D: CountableDesc) -> IntervalSet:
    """Points ``x`` that are limits of averages of ``x``-balanced approximating sequences.

    ``x`` qualifies iff ``2x`` lies between the sums of the smallest and of the
    largest accumulation points of the two closed half-lines at ``x``. The
    condition is constant on each atom of the partition by ``H'``.
    """
    if D.double_ladders:
        raise ExactModeUnsupported(
            "exact mode unsupported for an infinite derived set; use balanced_oracle"
        )
    pieces = []
    for atom, window in balanced_windows(D):
        pieces.append(combine(IntervalSet([atom]), window, "intersect"))
    return IntervalSet([c for p in pieces for c in p.components])


def lemma_witness(D: CountableDesc, x):
    """``(x1, x2)`` with ``x = (x1 + x2)/2``, ``x1``/``x2`` between the extreme
    accumulation points of the left/right half-lines at ``x``; ``None`` if none exist."""
    lo, hi = side_limits(D, x)
    if not lo or not hi:
        return None
    x1 = max(lo[0], 2 * x - hi[-1])
    if x1 > min(lo[-1], 2 * x - hi[0]):
        return None
    return x1, 2 * x - x1
