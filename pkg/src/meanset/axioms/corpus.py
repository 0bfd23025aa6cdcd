"""Deterministic random corpora of bounded interval sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from ..exactset import Interval, IntervalSet, combine, reflect


@dataclass(frozen=True)
class CorpusProfile:
    """Shape of generated sets.

    ``open_fraction`` and ``point_fraction`` select disjoint kinds (fully open
    sets, finite point sets); the rest are mixed unions of intervals with
    random endpoint flags and, if ``include_points``, isolated points. Any kind
    is made exactly symmetric with probability ``symmetric_fraction``.
    """

    max_components: int = 4
    endpoint_range: tuple = (-10, 10)
    max_denominator: int = 4
    include_points: bool = True
    symmetric_fraction: float = 0.2
    open_fraction: float = 0.1
    point_fraction: float = 0.1

    def __post_init__(self):
        if self.max_components < 1:
            raise ValueError("max_components must be at least 1")
        lo, hi = self.endpoint_range
        if not lo < hi:
            raise ValueError("endpoint_range must be an increasing pair")
        if self.max_denominator < 1:
            raise ValueError("max_denominator must be at least 1")
        for name in ("symmetric_fraction", "open_fraction", "point_fraction"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.open_fraction + self.point_fraction > 1:
            raise ValueError("open_fraction + point_fraction must not exceed 1")


DEFAULT_PROFILE = CorpusProfile()


def as_profile(profile) -> CorpusProfile:
    if profile is None:
        return DEFAULT_PROFILE
    if isinstance(profile, CorpusProfile):
        return profile
    return replace(DEFAULT_PROFILE, **dict(profile))


def random_rat(rng: random.Random, lo, hi, max_den: int) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(int(lo * d), int(hi * d)), d)


def _distinct(rng, k, lo, hi, max_den):
    vals = set()
    tries = 0
    while len(vals) < k and tries < 20 * k:
        vals.add(random_rat(rng, lo, hi, max_den))
        tries += 1
    return sorted(vals)


def _intervals(rng, prof: CorpusProfile, lo, hi, kind: str) -> IntervalSet:
    k = rng.randint(1, prof.max_components)
    if kind == "points":
        return IntervalSet.of_points(*_distinct(rng, k, lo, hi, prof.max_denominator))
    ends = _distinct(rng, 2 * k, lo, hi, prof.max_denominator)
    parts = []
    for i in range(0, len(ends) - 1, 2):
        a, b = ends[i], ends[i + 1]
        if kind == "open":
            parts.append(Interval.open(a, b))
            continue
        # the first component always carries mass
        if i > 0 and prof.include_points and rng.random() < 0.25:
            parts.append(Interval.point(a if rng.random() < 0.5 else b))
        else:
            parts.append(Interval(a, b, rng.random() < 0.6, rng.random() < 0.6))
    if not parts:
        # too few distinct endpoints drawn; fall back to a unit interval
        a = Fraction(lo)
        parts.append(Interval.open(a, a + 1) if kind == "open" else Interval.closed(a, a + 1))
    return IntervalSet(parts)


def _one(rng: random.Random, prof: CorpusProfile) -> IntervalSet:
    lo, hi = prof.endpoint_range
    r = rng.random()
    kind = "open" if r < prof.open_fraction else (
        "points" if r < prof.open_fraction + prof.point_fraction else "mixed")
    if rng.random() >= prof.symmetric_fraction:
        return _intervals(rng, prof, lo, hi, kind)
    # reflect a random half through a center at or beyond its supremum,
    # no further out than keeps the mirror image inside the range
    mid = Fraction(lo + hi, 2)
    half = _intervals(rng, prof, lo, mid, kind)
    room = (hi + half.inf) / 2 - half.sup
    step = Fraction(rng.randint(0, 2 * prof.max_denominator), 2 * prof.max_denominator)
    c = half.sup + min(step, room)
    return combine(half, reflect(half, c), "union")


def gen_corpus(seed: int, count: int, profile=None) -> list:
    """``count`` normalized bounded sets, reproducible for a fixed ``seed``."""
    if count <= 0:
        raise ValueError("count must be positive")
    prof = as_profile(profile)
    rng = random.Random(seed)
    return [_one(rng, prof) for _ in range(count)]


__all__ = ["CorpusProfile", "DEFAULT_PROFILE", "as_profile", "gen_corpus", "random_rat"]
