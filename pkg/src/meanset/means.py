"""Two-variable ordinary means and the mean-sets generated from them.

This is the only module that evaluates in floating point: geometric and
power means, roots of ``f(c) = K(f(a), f(b))`` for transcendental ``f`` and
compound-mean limits are irrational in general. Whenever the inputs are
exact rationals and the value is rational, the exact value is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, MeansetError
from .exactset import Interval, IntervalSet

DEFAULT_TOL = 1e-12
DEFAULT_GRID = 1024


@dataclass(frozen=True)
class OrdinaryMean:
    """A symmetric two-argument mean ``K(a, b)``.

    ``kind`` is one of ``arithmetic``, ``geometric``, ``harmonic``, ``power``
    (with exponent ``p``) or ``custom`` (with ``func``).
    """

    kind: str
    p: Optional[Fraction] = None
    func: Optional[Callable] = field(default=None, compare=False, repr=False)
    strict_internal: bool = True
    continuous: bool = True
    label: Optional[str] = None

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == "power":
            return f"power:{self.p}"
        return self.kind

    @property
    def positive_only(self) -> bool:
        return self.kind in ("geometric", "harmonic") or (self.kind == "power" and self.p != 1)

    def __call__(self, a, b):
        return eval_mean(self, a, b)


ARITHMETIC = OrdinaryMean("arithmetic")
GEOMETRIC = OrdinaryMean("geometric")
HARMONIC = OrdinaryMean("harmonic")


def power_mean(p) -> OrdinaryMean:
    p = Fraction(p)
    if p == 0:
        return GEOMETRIC
    return OrdinaryMean("power", p=p)


def custom_mean(func, name="custom", strict_internal=True, continuous=True) -> OrdinaryMean:
    return OrdinaryMean("custom", func=func, strict_internal=strict_internal,
                        continuous=continuous, label=name)


def mean_from_name(spec: str) -> OrdinaryMean:
    """``arithmetic``, ``geometric``, ``harmonic`` or ``power:p`` (p rational)."""
    spec = spec.strip()
    if spec == "arithmetic":
        return ARITHMETIC
    if spec == "geometric":
        return GEOMETRIC
    if spec == "harmonic":
        return HARMONIC
    if spec.startswith("power:"):
        try:
            return power_mean(Fraction(spec[len("power:"):]))
        except (ValueError, ZeroDivisionError):
            pass
    raise ValueError(f"unknown mean {spec!r}; expected arithmetic|geometric|harmonic|power:p")


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    num, den = q.numerator, q.denominator
    rn, rd = _iroot(num, k), _iroot(den, k)
    if rn ** k == num and rd ** k == den:
        return Fraction(rn, rd)
    return None


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in xs)


def eval_mean(K: OrdinaryMean, a, b):
    """``K(a, b)``; exact when both arguments are rational and the value is rational."""
    if a > b:
        a, b = b, a
    if K.positive_only and a <= 0:
        raise DomainError(f"{K.name} mean needs positive arguments, got {a}, {b}")
    exact = _is_exact(a, b)
    if exact:
        a, b = Fraction(a), Fraction(b)
    kind = K.kind
    if kind == "power":
        if K.p == 1:
            kind = "arithmetic"
        elif K.p == -1:
            kind = "harmonic"
    if kind == "arithmetic":
        return (a + b) / 2
    if kind == "harmonic":
        return 2 * a * b / (a + b)
    if kind == "geometric":
        if exact:
            r = _exact_root(a * b, 2)
            if r is not None:
                return r
        return math.sqrt(float(a)) * math.sqrt(float(b))
    if kind == "power":
        p = K.p
        if exact and p.denominator == 1:
            n = int(p)
            s = (a ** n + b ** n) / 2
            r = _exact_root(s, abs(n))
            if r is not None:
                return r if n > 0 else 1 / r
        pf = float(p)
        fa, fb = float(a), float(b)
        return ((fa ** pf + fb ** pf) / 2) ** (1 / pf)
    if kind == "custom":
        return K.func(a, b)
    raise ValueError(f"unknown mean kind {K.kind!r}")


def _as_rat(v) -> Fraction:
    # floats are embedded at their exact binary value
    return v if isinstance(v, Fraction) else Fraction(v)


def ms_aa_K(K: OrdinaryMean, H: IntervalSet) -> IntervalSet:
    """``{K(a, b) : a, b in H}`` for a finite nonempty point set ``H``."""
    if H.is_empty or not H.is_finite:
        raise DomainError("ms_aa_K is defined on finite nonempty point sets")
    pts = H.points()
    vals = {_as_rat(eval_mean(K, x, y)) for i, x in enumerate(pts) for y in pts[i:]}
    return IntervalSet(Interval.point(v) for v in vals)


# -- K^f root sets -------------------------------------------------------------

F_CATALOG = {
    "identity": lambda x: x,
    "square": lambda x: x * x,
    "sin": np.sin,
    "exp": np.exp,
}


@dataclass(frozen=True)
class RootInterval:
    lo: float
    hi: float
    kind: str  # "bracketed" (sign change) or "suspected" (near-zero grid value)

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2


def _resolve_f(f):
    if callable(f):
        return f
    try:
        return F_CATALOG[f]
    except KeyError:
        raise ValueError(f"unknown function {f!r}; catalog: {', '.join(F_CATALOG)}") from None


def k_f_roots(K: OrdinaryMean, f, a, b, tol: float = DEFAULT_TOL, grid: int = DEFAULT_GRID):
    """Enclose every ``c`` in ``[a, b]`` with ``f(c) = K(f(a), f(b))``.

    Sign changes on a uniform grid are refined by bisection to width ``tol``;
    grid values within ``tol`` of the target without a sign change are reported
    as suspected (possibly tangential) roots.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, b = float(a), float(b)
    if not a < b:
        raise DomainError("k_f_roots needs a < b")
    fn = _resolve_f(f)
    try:
        fa, fb = float(fn(np.float64(a))), float(fn(np.float64(b)))
        target = float(eval_mean(K, fa, fb))
        xs = np.linspace(a, b, grid + 1)
        hs = np.asarray(fn(xs), dtype=float) - target
    except (ArithmeticError, ValueError, TypeError) as e:
        raise MeansetError(f"evaluation of f failed: {e}") from e
    if not np.all(np.isfinite(hs)):
        raise MeansetError("f is not finite on the grid")

    def h(x):
        return float(fn(np.float64(x))) - target

    found = []
    for i in range(grid):
        h0, h1 = hs[i], hs[i + 1]
        if h0 == 0.0:
            found.append(RootInterval(xs[i], xs[i], "bracketed"))
        elif h0 * h1 < 0:
            lo, hi, hlo = xs[i], xs[i + 1], h0
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                hm = h(mid)
                if hm == 0.0:
                    lo = hi = mid
                    break
                if (hm < 0) == (hlo < 0):
                    lo, hlo = mid, hm
                else:
                    hi = mid
            found.append(RootInterval(lo, hi, "bracketed"))
    if hs[grid] == 0.0:
        found.append(RootInterval(xs[grid], xs[grid], "bracketed"))
    for i in np.flatnonzero(np.abs(hs) < tol):
        x = xs[i]
        if not any(r.lo - tol <= x <= r.hi + tol for r in found):
            found.append(RootInterval(x, x, "suspected"))
    found.sort(key=lambda r: r.lo)
    merged = []
    for r in found:
        if merged and r.lo <= merged[-1].hi + tol:
            prev = merged[-1]
            kind = "bracketed" if "bracketed" in (prev.kind, r.kind) else "suspected"
            merged[-1] = RootInterval(prev.lo, max(prev.hi, r.hi), kind)
        else:
            merged.append(r)
    if not merged:
        raise MeansetError("no root isolated; refine the grid")
    return merged


# -- neighbour iteration -------------------------------------------------------


def kbar_step(K: OrdinaryMean, H) -> list:
    """Means of consecutive points of the sorted finite set ``H``."""
    pts = sorted(set(H.points() if isinstance(H, IntervalSet) else H))
    if len(pts) < 2:
        raise DomainError("kbar_step needs at least two points")
    return [eval_mean(K, x, y) for x, y in zip(pts, pts[1:])]


@dataclass(frozen=True)
class KbarResult:
    points: tuple
    max_gap: object


def kbar_iterate(K: OrdinaryMean, a, b, n: int) -> KbarResult:
    """Accumulated neighbour-mean refinement of ``{a, b}`` after ``n`` rounds."""
    if not K.strict_internal or not K.continuous:
        raise DomainError("kbar_iterate needs a strictly internal continuous mean")
    if n < 1:
        raise ValueError("n must be at least 1")
    if not a < b:
        raise DomainError("kbar_iterate needs a < b")
    pts = sorted({a, b, eval_mean(K, a, b)})
    for _ in range(n - 1):
        pts = sorted(set(pts) | set(kbar_step(K, pts)))
    gap = max(y - x for x, y in zip(pts, pts[1:]))
    return KbarResult(tuple(pts), gap)


# -- compound means ------------------------------------------------------------


@dataclass(frozen=True)
class CompoundTrace:
    pairs: tuple
    limit_estimate: float
    converged: bool
    error_bound: float

    @property
    def steps(self) -> int:
        return len(self.pairs) - 1


def compound(K1: OrdinaryMean, K2: OrdinaryMean, a, b, tol: float = DEFAULT_TOL,
             n_max: int = 200) -> CompoundTrace:
    """Iterate ``a <- K1(a, b), b <- K2(a, b)`` until ``b - a <= tol``.

    ``K1 <= K2`` is checked on every visited pair, allowing a few ulps of
    rounding slack.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    x, y = float(a), float(b)
    if not x < y:
        raise DomainError("compound needs a < b")
    pairs = [(x, y)]
    for step in range(1, n_max + 1):
        if y - x <= tol:
            break
        nx, ny = float(eval_mean(K1, x, y)), float(eval_mean(K2, x, y))
        if nx > ny:
            if nx - ny > 4 * math.ulp(max(abs(nx), abs(ny))):
                raise DomainError(
                    f"ordering violated at step {step}: {K1.name}={nx!r} > {K2.name}={ny!r}"
                )
            nx = ny
        if (nx, ny) == (x, y):
            break
        x, y = nx, ny
        pairs.append((x, y))
    gap = y - x
    return CompoundTrace(tuple(pairs), 0.5 * (x + y), gap <= tol, 0.5 * gap)
