"""Exact bounded subsets of the real line.

A set is a finite union of intervals with rational endpoints, each end open
or closed. Degenerate intervals are isolated points. Every :class:`IntervalSet`
is kept in canonical form, so two sets are equal as point sets exactly when
their component tuples are equal.

All arithmetic is done with :class:`fractions.Fraction`; floats are rejected
at the boundary.
"""

from __future__ import annotations

import bisect
import json
import re
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional

from .errors import DomainError, ParseError

Rat = Fraction

__all__ = [
    "Rat",
    "rat",
    "Interval",
    "IntervalSet",
    "BoundsStats",
    "normalize",
    "measure",
    "avg",
    "bounds_stats",
    "topo",
    "transform",
    "combine",
    "restrict",
    "symmetry_center",
    "reflect",
    "translate",
    "scale",
    "parse_set",
    "format_set",
    "format_rat",
    "set_to_json",
    "set_from_json",
    "EMPTY",
]


def rat(x) -> Fraction:
    """Coerce ``x`` to an exact rational. Accepts ints, Fractions and "p/q" strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return _parse_rat_text(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def _parse_rat_text(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(x: Fraction) -> str:
    return str(x)


_IntervalBase = namedtuple("_IntervalBase", "lo hi lo_closed hi_closed")


class Interval(_IntervalBase):
    """A bounded interval; ``lo == hi`` (both ends closed) is a point.

    Reversed bounds are swapped together with their flags, so
    ``Interval(2, 0)`` is ``[0, 2]``.
    """

    __slots__ = ()

    def __new__(cls, lo, hi, lo_closed=True, hi_closed=True):
        lo, hi = rat(lo), rat(hi)
        if lo > hi:
            lo, hi = hi, lo
            lo_closed, hi_closed = hi_closed, lo_closed
        if lo == hi and not (lo_closed and hi_closed):
            raise ValueError("degenerate interval must be closed on both ends")
        return super().__new__(cls, lo, hi, bool(lo_closed), bool(hi_closed))

    @classmethod
    def point(cls, x) -> "Interval":
        x = rat(x)
        return cls._make((x, x, True, True))

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo:
            return self.lo_closed
        if x == self.hi:
            return self.hi_closed
        return True

    def __repr__(self):
        return _format_interval(self)


def _iv(lo, hi, lc, hc) -> Optional[Interval]:
    """Build an interval from already-ordered rationals; None if empty."""
    if lo > hi:
        return None
    if lo == hi:
        if lc and hc:
            return Interval._make((lo, lo, True, True))
        return None
    return Interval._make((lo, hi, lc, hc))


def _merge(parts: Iterable[Interval]) -> tuple:
    out = []
    for iv in sorted(parts, key=lambda i: (i.lo, not i.lo_closed)):
        if not out:
            out.append(iv)
            continue
        cur = out[-1]
        if iv.lo < cur.hi or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed)):
            lc = cur.lo_closed or (iv.lo == cur.lo and iv.lo_closed)
            if iv.hi > cur.hi:
                hi, hc = iv.hi, iv.hi_closed
            elif iv.hi == cur.hi:
                hi, hc = cur.hi, cur.hi_closed or iv.hi_closed
            else:
                hi, hc = cur.hi, cur.hi_closed
            out[-1] = Interval._make((cur.lo, hi, lc, hc))
        else:
            out.append(iv)
    return tuple(out)


class IntervalSet:
    """Canonical finite union of disjoint maximal intervals and isolated points."""

    __slots__ = ("components", "_los", "_hash")

    def __init__(self, parts: Iterable = ()):
        ivs = []
        for p in parts:
            if isinstance(p, Interval):
                ivs.append(p)
            elif isinstance(p, tuple) and len(p) in (2, 4):
                ivs.append(Interval(*p))
            else:
                ivs.append(Interval.point(p))
        self._set(_merge(ivs))

    def _set(self, comps):
        self.components = comps
        self._los = None
        self._hash = None

    @classmethod
    def _canonical(cls, comps) -> "IntervalSet":
        obj = cls.__new__(cls)
        obj._set(tuple(comps))
        return obj

    @classmethod
    def of_points(cls, *xs) -> "IntervalSet":
        return cls(Interval.point(x) for x in xs)

    @classmethod
    def closed(cls, lo, hi) -> "IntervalSet":
        return cls([Interval(lo, hi, True, True)])

    @classmethod
    def open(cls, lo, hi) -> "IntervalSet":
        return cls([Interval(lo, hi, False, False)])

    # -- structure --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __repr__(self):
        return f"IntervalSet({format_set(self)!r})"

    def __str__(self):
        return format_set(self)

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_finite(self) -> bool:
        return all(c.lo == c.hi for c in self.components)

    @property
    def is_open(self) -> bool:
        return all(c.lo < c.hi and not c.lo_closed and not c.hi_closed for c in self.components)

    @property
    def inf(self) -> Fraction:
        if not self.components:
            raise DomainError("inf of the empty set")
        return self.components[0].lo

    @property
    def sup(self) -> Fraction:
        if not self.components:
            raise DomainError("sup of the empty set")
        return self.components[-1].hi

    def points(self) -> list:
        """Sorted list of points of a finite set."""
        if not self.is_finite:
            raise DomainError("set is not finite")
        return [c.lo for c in self.components]

    def __contains__(self, x) -> bool:
        if self._los is None:
            self._los = [c.lo for c in self.components]
        i = bisect.bisect_right(self._los, x) - 1
        return i >= 0 and self.components[i].contains(x)

    def issubset(self, other: "IntervalSet") -> bool:
        return combine(self, other, "diff").is_empty

    # operator sugar
    def __or__(self, other):
        return combine(self, other, "union")

    def __and__(self, other):
        return combine(self, other, "intersect")

    def __sub__(self, other):
        return combine(self, other, "diff")

    def __xor__(self, other):
        return combine(self, other, "symdiff")

    def __le__(self, other):
        return self.issubset(other)


EMPTY = IntervalSet._canonical(())


@dataclass(frozen=True)
class BoundsStats:
    inf: Fraction
    sup: Fraction
    liminf: Optional[Fraction] = None
    limsup: Optional[Fraction] = None


# -- construction / measure ---------------------------------------------------


def normalize(raw: Iterable) -> IntervalSet:
    """Canonical set equal, as a point set, to the union of ``raw``."""
    return IntervalSet(raw)


def measure(S: IntervalSet) -> Fraction:
    return sum((c.hi - c.lo for c in S.components), Fraction(0))


def avg(S: IntervalSet) -> Fraction:
    """Average of ``S``: Lebesgue average if it has mass, else the mean of its points."""
    if S.is_empty:
        raise DomainError("average of the empty set")
    m = measure(S)
    if m > 0:
        moment = sum(((c.hi * c.hi - c.lo * c.lo) for c in S.components), Fraction(0))
        return moment / (2 * m)
    # measure zero in this representation means finitely many points
    pts = S.points()
    return sum(pts, Fraction(0)) / len(pts)


def bounds_stats(S: IntervalSet) -> BoundsStats:
    if S.is_empty:
        raise DomainError("bounds of the empty set")
    d = topo(S, "derived")
    if d.is_empty:
        return BoundsStats(S.inf, S.sup)
    return BoundsStats(S.inf, S.sup, d.inf, d.sup)


def topo(S: IntervalSet, kind: str) -> IntervalSet:
    """``closure``, ``interior`` or ``derived`` (accumulation points) of ``S``."""
    if kind == "closure":
        return IntervalSet(Interval._make((c.lo, c.hi, True, True)) for c in S.components)
    if kind == "interior":
        return IntervalSet._canonical(
            Interval._make((c.lo, c.hi, False, False)) for c in S.components if c.lo < c.hi
        )
    if kind == "derived":
        # isolated points never accumulate
        return IntervalSet(
            Interval._make((c.lo, c.hi, True, True)) for c in S.components if c.lo < c.hi
        )
    raise ValueError(f"unknown topological operator {kind!r}")


# -- affine maps ----------------------------------------------------------------


def translate(S: IntervalSet, x) -> IntervalSet:
    x = rat(x)
    return IntervalSet._canonical(
        Interval._make((c.lo + x, c.hi + x, c.lo_closed, c.hi_closed)) for c in S.components
    )


def scale(S: IntervalSet, alpha) -> IntervalSet:
    alpha = rat(alpha)
    if alpha == 0:
        raise DomainError("scale factor must be nonzero")
    if alpha > 0:
        return IntervalSet._canonical(
            Interval._make((c.lo * alpha, c.hi * alpha, c.lo_closed, c.hi_closed))
            for c in S.components
        )
    return IntervalSet._canonical(
        Interval._make((c.hi * alpha, c.lo * alpha, c.hi_closed, c.lo_closed))
        for c in reversed(S.components)
    )


def reflect(S: IntervalSet, s) -> IntervalSet:
    """Image of ``S`` under ``x -> 2s - x``."""
    s2 = 2 * rat(s)
    return IntervalSet._canonical(
        Interval._make((s2 - c.hi, s2 - c.lo, c.hi_closed, c.lo_closed))
        for c in reversed(S.components)
    )


def transform(S: IntervalSet, kind: str, value) -> IntervalSet:
    if kind == "translate":
        return translate(S, value)
    if kind == "scale":
        return scale(S, value)
    if kind == "reflect":
        return reflect(S, value)
    raise ValueError(f"unknown transform {kind!r}")


# -- boolean algebra and Minkowski sum ----------------------------------------

_PREDICATES = {
    "union": lambda a, b: a or b,
    "intersect": lambda a, b: a and b,
    "diff": lambda a, b: a and not b,
    "symdiff": lambda a, b: a != b,
}


def _boolean(S: IntervalSet, T: IntervalSet, pred) -> IntervalSet:
    # membership is constant on each endpoint and on each open gap between endpoints
    pts = sorted({e for c in S.components for e in (c.lo, c.hi)}
                 | {e for c in T.components for e in (c.lo, c.hi)})
    parts = []
    for i, p in enumerate(pts):
        if pred(p in S, p in T):
            parts.append(Interval._make((p, p, True, True)))
        if i + 1 < len(pts):
            q = pts[i + 1]
            mid = (p + q) / 2
            if pred(mid in S, mid in T):
                parts.append(Interval._make((p, q, False, False)))
    return IntervalSet(parts)


def minkowski(S: IntervalSet, T: IntervalSet) -> IntervalSet:
    """``{p + q : p in S, q in T}``; an end is attained iff both summands attain theirs."""
    parts = [
        Interval._make((a.lo + b.lo, a.hi + b.hi, a.lo_closed and b.lo_closed,
                        a.hi_closed and b.hi_closed))
        for a in S.components
        for b in T.components
    ]
    return IntervalSet(parts)


def combine(S: IntervalSet, T: IntervalSet, kind: str) -> IntervalSet:
    if kind == "minkowski":
        return minkowski(S, T)
    if kind == "union":
        if S.is_empty:
            return T
        if T.is_empty:
            return S
        return IntervalSet(S.components + T.components)
    try:
        pred = _PREDICATES[kind]
    except KeyError:
        raise ValueError(f"unknown set operation {kind!r}") from None
    return _boolean(S, T, pred)


def restrict(S: IntervalSet, y, side: str) -> IntervalSet:
    """``S ∩ (-inf, y]`` for ``side='minus'``, ``S ∩ [y, +inf)`` for ``'plus'``."""
    y = rat(y)
    out = []
    if side == "minus":
        for c in S.components:
            if c.hi <= y:
                out.append(c)
            elif c.lo < y:
                out.append(Interval._make((c.lo, y, c.lo_closed, True)))
            elif c.lo == y and c.lo_closed:
                out.append(Interval._make((y, y, True, True)))
    elif side == "plus":
        for c in S.components:
            if c.lo >= y:
                out.append(c)
            elif c.hi > y:
                out.append(Interval._make((y, c.hi, True, c.hi_closed)))
            elif c.hi == y and c.hi_closed:
                out.append(Interval._make((y, y, True, True)))
    else:
        raise ValueError(f"side must be 'minus' or 'plus', not {side!r}")
    return IntervalSet._canonical(out)


def symmetry_center(S: IntervalSet) -> Optional[Fraction]:
    """The center ``s`` with ``T_s(S) == S``, or None if ``S`` is not symmetric."""
    if S.is_empty:
        raise DomainError("symmetry center of the empty set")
    s = (S.inf + S.sup) / 2
    return s if reflect(S, s) == S else None


# -- text and JSON forms -------------------------------------------------------


def _format_interval(c: Interval) -> str:
    if c.lo == c.hi:
        return "{" + format_rat(c.lo) + "}"
    return "{}{},{}{}".format(
        "[" if c.lo_closed else "(",
        format_rat(c.lo),
        format_rat(c.hi),
        "]" if c.hi_closed else ")",
    )


def format_set(S: IntervalSet) -> str:
    """Canonical text form; consecutive isolated points share one brace group."""
    if S.is_empty:
        return "{}"
    terms = []
    run = []
    for c in S.components:
        if c.lo == c.hi:
            run.append(format_rat(c.lo))
            continue
        if run:
            terms.append("{" + ",".join(run) + "}")
            run = []
        terms.append(_format_interval(c))
    if run:
        terms.append("{" + ",".join(run) + "}")
    return " U ".join(terms)


_TOKEN_RE = re.compile(r"\s*(?:(?P<rat>[+-]?\d+(?:/\d+)?)|(?P<sym>[\[\](){},U]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start("rat") if m.group("rat") else m.start("sym")
        toks.append((m.group("rat") or m.group("sym"), start, bool(m.group("rat"))))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def pos(self):
        t = self.peek()
        return t[1] if t else len(self.text)

    def expect_sym(self, *syms):
        t = self.peek()
        if t is None or t[2] or t[0] not in syms:
            found = "end of input" if t is None else repr(t[0])
            raise ParseError(f"expected {' or '.join(map(repr, syms))}, found {found}",
                             self.pos(), self.text)
        self.i += 1
        return t[0]

    def rat(self):
        t = self.peek()
        if t is None or not t[2]:
            found = "end of input" if t is None else repr(t[0])
            raise ParseError(f"expected a rational, found {found}", self.pos(), self.text)
        self.i += 1
        try:
            return _parse_rat_text(t[0])
        except ParseError as e:
            raise ParseError(str(e), t[1], self.text) from None

    def term(self):
        t = self.peek()
        if t is None:
            raise ParseError("expected a term, found end of input", self.pos(), self.text)
        if t[0] == "{" and not t[2]:
            self.i += 1
            nxt = self.peek()
            if nxt is not None and nxt[0] == "}" and not nxt[2]:
                self.i += 1
                return []
            pts = [Interval.point(self.rat())]
            while self.expect_sym(",", "}") == ",":
                pts.append(Interval.point(self.rat()))
            return pts
        opener = self.expect_sym("[", "(")
        lo = self.rat()
        self.expect_sym(",")
        hi = self.rat()
        closer = self.expect_sym("]", ")")
        lc, hc = opener == "[", closer == "]"
        if lo > hi:
            lo, hi, lc, hc = hi, lo, hc, lc
        if lo == hi and not (lc and hc):
            return []
        return [Interval._make((lo, hi, lc, hc))]

    def expr(self):
        parts = self.term()
        while self.peek() is not None:
            self.expect_sym("U")
            parts.extend(self.term())
        return IntervalSet(parts)


def parse_set(expr: str) -> IntervalSet:
    """Parse ``term ('U' term)*`` where a term is an interval or a brace point set.

    ``{}`` denotes the empty set. Reversed bounds are swapped.
    """
    return _Parser(expr).expr()


def set_to_json(S: IntervalSet) -> dict:
    return {
        "components": [
            {
                "lo": format_rat(c.lo),
                "hi": format_rat(c.hi),
                "lo_closed": c.lo_closed,
                "hi_closed": c.hi_closed,
            }
            for c in S.components
        ]
    }


def set_from_json(obj) -> IntervalSet:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        comps = obj["components"]
        return IntervalSet(
            Interval(rat(c["lo"]), rat(c["hi"]), bool(c["lo_closed"]), bool(c["hi_closed"]))
            for c in comps
        )
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed set JSON: {e}") from None
