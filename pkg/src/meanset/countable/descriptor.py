"""Symbolic bounded countable sets: finitely many points plus convergent ladders."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import ParseError
from ..exactset import EMPTY, Interval, IntervalSet, format_rat, format_set, rat

ABOVE, BELOW = "above", "below"


@dataclass(frozen=True)
class Ladder:
    """The points ``limit + scale/n`` (above) or ``limit - scale/n`` (below), n >= 1."""

    limit: Fraction
    direction: str
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "limit", rat(self.limit))
        object.__setattr__(self, "scale", rat(self.scale))
        if self.direction in ("+", ABOVE):
            object.__setattr__(self, "direction", ABOVE)
        elif self.direction in ("-", BELOW):
            object.__setattr__(self, "direction", BELOW)
        else:
            raise ValueError(f"direction must be above/below, not {self.direction!r}")
        if self.scale <= 0:
            raise ValueError("ladder scale must be positive")

    @property
    def sign(self) -> int:
        return 1 if self.direction == ABOVE else -1

    def point(self, n: int) -> Fraction:
        return self.limit + self.sign * self.scale / n

    def index_of(self, p) -> Optional[int]:
        d = (p - self.limit) * self.sign
        if d <= 0:
            return None
        n = self.scale / d
        return int(n) if n.denominator == 1 else None

    def hull(self):
        """``(lo, hi, lo_closed, hi_closed)`` of the convex hull of the points."""
        if self.direction == ABOVE:
            return self.limit, self.limit + self.scale, False, True
        return self.limit - self.scale, self.limit, True, False


@dataclass(frozen=True)
class DoubleLadder:
    """The points ``limit + outer/n + inner/k`` for n, k >= 1."""

    limit: Fraction
    outer: Fraction = Fraction(1)
    inner: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("limit", "outer", "inner"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.outer <= 0 or self.inner <= 0:
            raise ValueError("double ladder scales must be positive")

    def point(self, n: int, k: int) -> Fraction:
        return self.limit + self.outer / n + self.inner / k

    def contains(self, p) -> bool:
        d = p - self.limit
        if d <= 0:
            return False
        # at least one of outer/n, inner/k is >= d/2
        for n in range(1, math.floor(2 * self.outer / d) + 1):
            r = d - self.outer / n
            if r > 0 and (self.inner / r).denominator == 1:
                return True
        for k in range(1, math.floor(2 * self.inner / d) + 1):
            r = d - self.inner / k
            if r > 0 and (self.outer / r).denominator == 1:
                return True
        return False

    def inner_ladder(self, n: int) -> Ladder:
        return Ladder(self.limit + self.outer / n, ABOVE, self.inner)

    def hull(self):
        return self.limit, self.limit + self.outer + self.inner, False, True


def _hulls_overlap(h1, h2) -> bool:
    return max(h1[0], h2[0]) < min(h1[1], h2[1])


def _ladder_overlap(a: Ladder, b: Ladder):
    """Indices of ``a`` whose point also lies on ``b`` (finite when limits differ)."""
    if a.limit == b.limit:
        if a.direction == b.direction:
            raise ValueError(f"ladders {a} and {b} share limit and side; they overlap infinitely")
        return set()
    delta = abs(a.limit - b.limit) / 2
    hits = set()
    for n in range(1, math.floor(a.scale / delta) + 1):
        if b.index_of(a.point(n)) is not None:
            hits.add(n)
    for m in range(1, math.floor(b.scale / delta) + 1):
        n = a.index_of(b.point(m))
        if n is not None:
            hits.add(n)
    return hits


def ladder_exclusions(ladders, extra_points: IntervalSet):
    """For each ladder, the indices already covered by an earlier ladder or an extra point."""
    pts = extra_points.points() if not extra_points.is_empty else []
    out = []
    for j, L in enumerate(ladders):
        ex = set()
        for p in pts:
            n = L.index_of(p)
            if n is not None:
                ex.add(n)
        for i in range(j):
            ex |= _ladder_overlap(L, ladders[i])
        out.append(frozenset(ex))
    return tuple(out)


@dataclass(frozen=True)
class CountableDesc:
    """A bounded countably infinite set: ladders ∪ double ladders ∪ finitely many points.

    Ladders sharing a limit and a side are rejected (they coincide infinitely
    often); double ladders must not overlap the hull of any other cluster.
    Finite coincidences between ladders are allowed and tracked in
    :attr:`exclusions`.
    """

    ladders: tuple = ()
    double_ladders: tuple = ()
    extra_points: IntervalSet = EMPTY
    exclusions: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ladders", tuple(self.ladders))
        object.__setattr__(self, "double_ladders", tuple(self.double_ladders))
        if not self.ladders and not self.double_ladders:
            raise ValueError("a countable descriptor needs at least one ladder")
        if not self.extra_points.is_finite:
            raise ValueError("extra_points must be a finite point set")
        clusters = list(self.ladders) + list(self.double_ladders)
        for i, d in enumerate(self.double_ladders):
            for other in clusters:
                if other is d:
                    continue
                if _hulls_overlap(d.hull(), other.hull()):
                    raise ValueError(f"double ladder {d} overlaps the hull of {other}")
        object.__setattr__(self, "exclusions", ladder_exclusions(self.ladders, self.extra_points))

    @property
    def depth(self) -> int:
        return 2 if self.double_ladders else 1

    def contains(self, p) -> bool:
        p = rat(p)
        if p in self.extra_points:
            return True
        if any(L.index_of(p) is not None for L in self.ladders):
            return True
        return any(d.contains(p) for d in self.double_ladders)

    def __str__(self):
        return format_desc(self)


def ladder(limit, direction, scale=1) -> Ladder:
    return Ladder(rat(limit), direction, rat(scale))


def dladder(limit, outer=1, inner=1) -> DoubleLadder:
    return DoubleLadder(rat(limit), rat(outer), rat(inner))


def desc(*parts, points=()) -> CountableDesc:
    """Convenience constructor from a mix of ladders, double ladders and points."""
    lad = [p for p in parts if isinstance(p, Ladder)]
    dl = [p for p in parts if isinstance(p, DoubleLadder)]
    return CountableDesc(tuple(lad), tuple(dl), IntervalSet.of_points(*points))


# -- enumeration ---------------------------------------------------------------


def diagonal_pairs(count: int):
    """First ``count`` pairs (n, k) in the order (1,1), (1,2), (2,1), (1,3), (2,2), ..."""
    out = []
    s = 2
    while len(out) < count:
        for n in range(1, s):
            out.append((n, s - n))
            if len(out) == count:
                break
        s += 1
    return out


def enumerate_desc(D: CountableDesc, n: int) -> IntervalSet:
    """The n-th member of the standard approximating sequence of ``D``.

    Takes every extra point, the first ``n`` points of each ladder and the first
    ``n`` diagonal points of each double ladder, so the sets increase with ``n``
    and exhaust ``D``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    pts = [Interval.point(L.point(i)) for L in D.ladders for i in range(1, n + 1)]
    pairs = diagonal_pairs(n) if D.double_ladders else []
    pts += [Interval.point(d.point(a, b)) for d in D.double_ladders for a, b in pairs]
    return IntervalSet(list(D.extra_points.components) + pts)


# -- text and JSON forms -------------------------------------------------------


def format_desc(D: CountableDesc) -> str:
    terms = [
        f"ladder({format_rat(L.limit)},{'+' if L.direction == ABOVE else '-'},{format_rat(L.scale)})"
        for L in D.ladders
    ]
    terms += [
        f"dladder({format_rat(d.limit)},{format_rat(d.outer)},{format_rat(d.inner)})"
        for d in D.double_ladders
    ]
    if not D.extra_points.is_empty:
        terms.append("points" + format_set(D.extra_points))
    return " U ".join(terms)


_DESC_TERM = re.compile(
    r"\s*(?:(?P<kind>ladder|dladder)\s*\((?P<args>[^)]*)\)|points\s*\{(?P<pts>[^}]*)\})\s*"
)


def parse_desc(text: str) -> CountableDesc:
    """Parse ``ladder(l,+|-,s)``, ``dladder(l,o,i)`` and ``points{...}`` joined by ``U``."""
    pos = 0
    lad, dls, pts = [], [], []
    n = len(text)
    expect_term = True
    while True:
        if expect_term:
            m = _DESC_TERM.match(text, pos)
            if not m:
                raise ParseError("expected ladder(...), dladder(...) or points{...}", pos, text)
            try:
                if m.group("kind") == "ladder":
                    args = [a.strip() for a in m.group("args").split(",")]
                    if len(args) != 3 or args[1] not in ("+", "-"):
                        raise ParseError("ladder takes (limit, +|-, scale)", m.start(), text)
                    lad.append(Ladder(rat(args[0]), args[1], rat(args[2])))
                elif m.group("kind") == "dladder":
                    args = [a.strip() for a in m.group("args").split(",")]
                    if len(args) != 3:
                        raise ParseError("dladder takes (limit, outer, inner)", m.start(), text)
                    dls.append(DoubleLadder(*(rat(a) for a in args)))
                else:
                    body = m.group("pts").strip()
                    if body:
                        pts.extend(rat(a.strip()) for a in body.split(","))
            except ParseError as e:
                if e.position is None:
                    raise ParseError(str(e), m.start(), text) from None
                raise
            except ValueError as e:
                raise ParseError(str(e), m.start(), text) from None
            pos = m.end()
            expect_term = False
            continue
        if pos >= n:
            break
        if text[pos] != "U":
            raise ParseError(f"expected 'U', found {text[pos]!r}", pos, text)
        pos += 1
        expect_term = True
    try:
        return CountableDesc(tuple(lad), tuple(dls), IntervalSet.of_points(*pts))
    except ValueError as e:
        raise ParseError(str(e), 0, text) from None


def desc_to_json(D: CountableDesc) -> dict:
    return {
        "ladders": [
            {"limit": format_rat(L.limit), "direction": L.direction, "scale": format_rat(L.scale)}
            for L in D.ladders
        ],
        "double_ladders": [
            {"limit": format_rat(d.limit), "outer": format_rat(d.outer), "inner": format_rat(d.inner)}
            for d in D.double_ladders
        ],
        "extra_points": [format_rat(p) for p in (D.extra_points.points() if D.extra_points else [])],
    }


def desc_from_json(obj) -> CountableDesc:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return CountableDesc(
        tuple(Ladder(rat(L["limit"]), L["direction"], rat(L["scale"])) for L in obj.get("ladders", [])),
        tuple(DoubleLadder(rat(d["limit"]), rat(d["outer"]), rat(d["inner"]))
              for d in obj.get("double_ladders", [])),
        IntervalSet.of_points(*(rat(p) for p in obj.get("extra_points", []))),
    )
