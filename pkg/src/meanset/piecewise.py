"""Exact continuous piecewise-linear functions with compact support."""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from fractions import Fraction

from .exactset import Interval, IntervalSet, format_rat, rat

ZERO = Fraction(0)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Linear on each ``[b_k, b_{k+1}]``, identically 0 outside ``[b_0, b_last]``.

    ``segments[k]`` is ``(slope, intercept)`` on the k-th gap.
    """

    breakpoints: tuple
    segments: tuple

    def __post_init__(self):
        if self.breakpoints and len(self.segments) != len(self.breakpoints) - 1:
            raise ValueError("need exactly one segment per pair of consecutive breakpoints")

    @classmethod
    def zero(cls) -> "PiecewiseLinear":
        return cls((), ())

    def __call__(self, z) -> Fraction:
        z = rat(z)
        b = self.breakpoints
        if len(b) < 2 or z < b[0] or z > b[-1]:
            return ZERO
        k = min(bisect.bisect_right(b, z) - 1, len(self.segments) - 1)
        slope, icpt = self.segments[k]
        return slope * z + icpt

    def left_value(self, k: int) -> Fraction:
        """Value at breakpoint k from the segment on its left (0 for k = 0)."""
        if k == 0:
            return ZERO
        slope, icpt = self.segments[k - 1]
        return slope * self.breakpoints[k] + icpt

    def right_value(self, k: int) -> Fraction:
        """Value at breakpoint k from the segment on its right (0 for the last)."""
        if k == len(self.breakpoints) - 1:
            return ZERO
        slope, icpt = self.segments[k]
        return slope * self.breakpoints[k] + icpt

    def is_continuous(self) -> bool:
        return all(self.left_value(k) == self.right_value(k) for k in range(len(self.breakpoints)))

    def values(self) -> list:
        return [self(b) for b in self.breakpoints]

    def maximum(self):
        """``(max value, IntervalSet of all maximizers)``; defined when support is nonempty."""
        if len(self.breakpoints) < 2:
            raise ValueError("the zero function attains its maximum everywhere")
        vals = self.values()
        top = max(vals)
        parts = [Interval.point(b) for b, v in zip(self.breakpoints, vals) if v == top]
        for k in range(len(self.segments)):
            if vals[k] == top and vals[k + 1] == top:
                parts.append(Interval(self.breakpoints[k], self.breakpoints[k + 1]))
        return top, IntervalSet(parts)

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rat(b) for b in self.breakpoints],
            "segments": [
                {"slope": format_rat(s), "intercept": format_rat(c)} for s, c in self.segments
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "PiecewiseLinear":
        if isinstance(obj, str):
            obj = json.loads(obj)
        bps = tuple(rat(b) for b in obj["breakpoints"])
        segs = tuple((rat(s["slope"]), rat(s["intercept"])) for s in obj["segments"])
        return cls(bps, segs)

    def to_tsv(self) -> str:
        """Rows ``z, g(z), z decimal, g decimal`` at every breakpoint."""
        lines = ["z\tg\tz_decimal\tg_decimal"]
        for b in self.breakpoints:
            v = self(b)
            lines.append(f"{format_rat(b)}\t{format_rat(v)}\t{_dec(b)}\t{_dec(v)}")
        return "\n".join(lines) + "\n"


def _dec(x: Fraction) -> str:
    return f"{float(x):.12g}"
