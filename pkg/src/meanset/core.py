"""Mean-sets built from pairwise midpoints and from Lebesgue halves.

``ms_aa`` is the set of all midpoints of a set, ``ms_aas`` the midpoints of
distinct pairs. ``g_function`` measures, for each centre ``z``, how much of the
set is mirrored onto itself through ``z``; ``ms_hf`` is the set of points that
split the mass of the set into equal halves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exactset import (
    Interval,
    IntervalSet,
    avg,
    combine,
    measure,
    minkowski,
    rat,
    reflect,
    restrict,
    scale,
)
from .piecewise import PiecewiseLinear

HALF = Fraction(1, 2)


def _require_nonempty(S: IntervalSet, what: str):
    if S.is_empty:
        raise DomainError(f"{what} is undefined on the empty set")


def ms_aa(S: IntervalSet) -> IntervalSet:
    """All midpoints ``(x + y)/2`` with ``x, y`` in ``S``."""
    _require_nonempty(S, "ms_aa")
    return scale(minkowski(S, S), HALF)


def _self_mirror_points(S: IntervalSet):
    # Only isolated points and closed endpoints of S can be midpoints of the
    # diagonal pair alone; interior points always have an off-diagonal pair.
    for c in S.components:
        if c.lo_closed:
            yield c.lo
        if c.hi_closed and c.hi != c.lo:
            yield c.hi


def ms_aas(S: IntervalSet) -> IntervalSet:
    """Midpoints ``(x + y)/2`` with ``x != y`` in ``S``."""
    full = ms_aa(S)
    lonely = [
        p for p in _self_mirror_points(S)
        if combine(S, reflect(S, p), "intersect") == IntervalSet.of_points(p)
    ]
    if not lonely:
        return full
    return combine(full, IntervalSet.of_points(*lonely), "diff")


# -- the mirror-mass function g ------------------------------------------------


def _overlap(a: Interval, lo, hi) -> Fraction:
    return max(Fraction(0), min(a.hi, hi) - max(a.lo, lo))


def _mirror_mass(comps, z) -> Fraction:
    # sum over component pairs of |I_i ∩ (2z - I_j)|, halved
    z2 = 2 * z
    total = Fraction(0)
    for a in comps:
        for b in comps:
            total += _overlap(a, z2 - b.hi, z2 - b.lo)
    return total / 2


def g_function(S: IntervalSet) -> PiecewiseLinear:
    """``g(z)``: measure of the points of ``S`` at or below ``z`` mirrored into ``S`` through ``z``.

    Linear between consecutive midpoints of endpoint pairs; each segment's
    coefficients come from two interior evaluations.
    """
    comps = [c for c in S.components if c.lo < c.hi]
    if not comps:
        return PiecewiseLinear.zero()
    ends = sorted({e for c in comps for e in (c.lo, c.hi)})
    bps = sorted({(u + v) / 2 for i, u in enumerate(ends) for v in ends[i:]})
    segs = []
    for lo, hi in zip(bps, bps[1:]):
        w = (hi - lo) / 3
        z1, z2 = lo + w, lo + 2 * w
        v1, v2 = _mirror_mass(comps, z1), _mirror_mass(comps, z2)
        slope = (v2 - v1) / (z2 - z1)
        segs.append((slope, v1 - slope * z1))
    return PiecewiseLinear(tuple(bps), tuple(segs))


def g_direct(S: IntervalSet, z) -> Fraction:
    """``g(z)`` straight from the set algebra: half the measure of ``S ∩ T_z(S)``."""
    return measure(combine(S, reflect(S, rat(z)), "intersect")) / 2


def g_argmax(S: IntervalSet):
    """Maximum of ``g`` over ``ms_aa(S)`` and the set where it is attained.

    With positive measure this is the maximum over the whole line. For a
    measure-zero set ``g`` vanishes and every point of ``ms_aa(S)`` is a maximizer.
    """
    _require_nonempty(S, "g_argmax")
    if measure(S) == 0:
        return Fraction(0), ms_aa(S)
    return g_function(S).maximum()


def z_sets(S: IntervalSet, z):
    """``(z-, z+)``: points of ``S`` below/above ``z`` whose mirror through ``z`` is in ``S``."""
    z = rat(z)
    both = combine(S, reflect(S, z), "intersect")
    return restrict(both, z, "minus"), restrict(both, z, "plus")


# -- half-measure mean-set -----------------------------------------------------


def ms_hf(S: IntervalSet) -> IntervalSet:
    """Points ``x`` with equal mass of ``S`` on either side; a closed interval."""
    total = measure(S)
    if total == 0:
        raise DomainError("ms_hf needs a set of positive measure")
    half = total / 2
    comps = [c for c in S.components if c.lo < c.hi]
    acc = Fraction(0)
    for i, c in enumerate(comps):
        nxt = acc + c.length
        if nxt > half:
            return IntervalSet.of_points(c.lo + (half - acc))
        if nxt == half:
            # half < total so a later component with mass exists
            return IntervalSet.closed(c.hi, comps[i + 1].lo)
        acc = nxt
    raise AssertionError("unreachable: cumulative mass never reached half")


@dataclass(frozen=True)
class HfAvgTest:
    """Outcome of comparing the average of ``ms_hf(S)`` with the average of ``S``.

    ``lhs = Avg(S ∩ [b, inf)) - b`` and ``rhs = a - Avg(S ∩ (-inf, a])`` where
    ``ms_hf(S) = [a, b]``; the averages agree exactly when ``lhs == rhs``.
    """

    equal: bool
    lhs: Fraction
    rhs: Fraction
    avg_lower: Fraction
    avg_upper: Fraction
    avg_hf: Fraction
    avg_set: Fraction


def hf_avg_test(S: IntervalSet) -> HfAvgTest:
    hf = ms_hf(S)
    a, b = hf.inf, hf.sup
    lower = avg(restrict(S, a, "minus"))
    upper = avg(restrict(S, b, "plus"))
    lhs, rhs = upper - b, a - lower
    return HfAvgTest(lhs == rhs, lhs, rhs, lower, upper, (a + b) / 2, avg(S))


# -- constructed examples on open sets -----------------------------------------


def _require_open(S: IntervalSet, what: str):
    if S.is_empty or not S.is_open:
        raise DomainError(f"{what} is defined on nonempty open sets only")


def middle_third(S: IntervalSet) -> IntervalSet:
    """Remove the closed middle third of every component."""
    _require_open(S, "middle_third")
    parts = []
    for c in S.components:
        w = c.length / 3
        parts.append(Interval.open(c.lo, c.lo + w))
        parts.append(Interval.open(c.hi - w, c.hi))
    return IntervalSet(parts)


def max_interval(S: IntervalSet) -> IntervalSet:
    """Keep the longest components; if there are several, drop the leftmost one."""
    _require_open(S, "max_interval")
    m = max(c.length for c in S.components)
    longest = [c for c in S.components if c.length == m]
    if len(longest) == 1:
        return IntervalSet._canonical(longest)
    return IntervalSet._canonical(longest[1:])


def max_gap(S: IntervalSet) -> Fraction:
    """Largest distance between consecutive components (0 for a single component)."""
    c = S.components
    return max((b.lo - a.hi for a, b in zip(c, c[1:])), default=Fraction(0))
