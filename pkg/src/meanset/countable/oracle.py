"""Brute-force construction of x-balanced approximating sequences.

Each ladder, seen from ``x``, is a finite pool of points on the wrong side of
``x`` followed by an infinite monotone stream on the other side. The pools are
spent first; afterwards every step adds one element below ``x`` and one above,
chosen greedily so that the running deviation ``sum(h - x)`` stays as close to
zero as possible. At power-of-two steps the least recently used stream on each
side is taken instead, so every element is eventually used and the prefixes
exhaust the set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .._accel import njit
from ..errors import DomainError
from ..exactset import rat
from .descriptor import ABOVE, CountableDesc, ladder_exclusions

SRC_POOL_LO, SRC_POOL_HI, SRC_X = -1, -2, -3
MAX_POOL = 1_000_000


class BalanceError(DomainError):
    """No x-balanced approximating sequence exists (one side of x is finite)."""


@njit
def _peek(j, nxt, exp, ex_flat, ex_off):
    # advance stream j past excluded indices and return its next index
    n = nxt[j]
    p = exp[j]
    end = ex_off[j + 1]
    while p < end and ex_flat[p] <= n:
        if ex_flat[p] == n:
            n += 1
        p += 1
    nxt[j] = n
    exp[j] = p
    return n


@njit
def greedy_kernel(lim, sgn, scl, side, start, ex_flat, ex_off, pool_lo, pool_hi,
                  x, steps, with_x):
    """Greedy x-balanced prefix; see the module docstring.

    Returns per chosen element its value, source (stream id or a negative pool
    code), source index and side (0 below, 1 above, 2 the point x), plus the
    running mean after every step.
    """
    k = lim.shape[0]
    total = 2 * steps + with_x
    vals = np.empty(total)
    src = np.empty(total, np.int64)
    sidx = np.empty(total, np.int64)
    sides = np.empty(total, np.int8)
    means = np.empty(steps)
    nxt = start.copy()
    exp = ex_off[:k].copy()
    last = np.full(k, -1, np.int64)
    dev = 0.0
    pos = 0
    if with_x == 1:
        vals[0] = x
        src[0] = -3
        sidx[0] = 0
        sides[0] = 2
        pos = 1
    pl = 0
    ph = 0
    for s in range(1, steps + 1):
        forced = (s & (s - 1)) == 0
        mean = x + dev / max(pos, 1)
        # lower side
        jb = -1
        vb = 0.0
        if pl < pool_lo.shape[0]:
            vb = pool_lo[pl]
        # upper side
        ja = -1
        va = 0.0
        if ph < pool_hi.shape[0]:
            va = pool_hi[ph]
        need_b = pl >= pool_lo.shape[0]
        need_a = ph >= pool_hi.shape[0]
        if forced:
            if need_b:
                for j in range(k):
                    if side[j] == 0 and (jb < 0 or last[j] < last[jb]):
                        jb = j
                n = _peek(jb, nxt, exp, ex_flat, ex_off)
                vb = lim[jb] + sgn[jb] * scl[jb] / n
            if need_a:
                for j in range(k):
                    if side[j] == 1 and (ja < 0 or last[j] < last[ja]):
                        ja = j
                n = _peek(ja, nxt, exp, ex_flat, ex_off)
                va = lim[ja] + sgn[ja] * scl[ja] / n
        elif need_b or need_a:
            best = np.inf
            spread = -1.0
            for b in range(k):
                if need_b and side[b] != 0:
                    continue
                if not need_b and b > 0:
                    break
                if need_b:
                    n = _peek(b, nxt, exp, ex_flat, ex_off)
                    cb = lim[b] + sgn[b] * scl[b] / n
                    lb = abs(lim[b] - mean)
                else:
                    cb = vb
                    lb = 0.0
                for a in range(k):
                    if need_a and side[a] != 1:
                        continue
                    if not need_a and a > 0:
                        break
                    if need_a:
                        n = _peek(a, nxt, exp, ex_flat, ex_off)
                        ca = lim[a] + sgn[a] * scl[a] / n
                        la = abs(lim[a] - mean)
                    else:
                        ca = va
                        la = 0.0
                    cost = abs(dev + (cb - x) + (ca - x))
                    if cost < best or (cost == best and lb + la > spread):
                        best = cost
                        spread = lb + la
                        if need_b:
                            jb = b
                            vb = cb
                        if need_a:
                            ja = a
                            va = ca
        # commit lower
        vals[pos] = vb
        sides[pos] = 0
        if jb >= 0:
            src[pos] = jb
            sidx[pos] = nxt[jb]
            nxt[jb] += 1
            last[jb] = s
        else:
            src[pos] = -1
            sidx[pos] = pl
            pl += 1
        pos += 1
        # commit upper
        vals[pos] = va
        sides[pos] = 1
        if ja >= 0:
            src[pos] = ja
            sidx[pos] = nxt[ja]
            nxt[ja] += 1
            last[ja] = s
        else:
            src[pos] = -2
            sidx[pos] = ph
            ph += 1
        pos += 1
        dev += (vb - x) + (va - x)
        means[s - 1] = x + dev / pos
    return vals, src, sidx, sides, means


@dataclass(frozen=True)
class BalancedTrace:
    x: Fraction
    chosen: np.ndarray
    running_means: np.ndarray
    counts_ok: bool
    converged: bool
    final_error: float
    sources: np.ndarray
    indices: np.ndarray
    sides: np.ndarray
    truncated: bool
    _streams: tuple
    _pools: tuple

    def exact_value(self, i: int) -> Fraction:
        s, n = int(self.sources[i]), int(self.indices[i])
        if s == SRC_X:
            return self.x
        if s == SRC_POOL_LO:
            return self._pools[0][n]
        if s == SRC_POOL_HI:
            return self._pools[1][n]
        return self._streams[s].point(n)

    def exact_values(self, count=None) -> list:
        m = len(self.chosen) if count is None else min(count, len(self.chosen))
        return [self.exact_value(i) for i in range(m)]


def _expand(D: CountableDesc, dl_depth: int):
    ladders = list(D.ladders)
    for d in D.double_ladders:
        ladders.extend(d.inner_ladder(n) for n in range(1, dl_depth + 1))
    ex = D.exclusions if not D.double_ladders else ladder_exclusions(ladders, D.extra_points)
    return ladders, ex


def _split(L, x, excluded):
    """``(stream side, first stream index, wrong-side pool indices, index equal to x)``."""
    d = (x - L.limit) * L.sign
    if d <= 0:
        # every point lies on the far side of the limit from x
        return (1 if L.direction == ABOVE else 0), 1, [], None
    cut = L.scale / d
    if cut > MAX_POOL:
        raise DomainError(f"x={x} is too close to the limit of {L}; pool too large")
    first = math.floor(cut) + 1
    eq = int(cut) if cut.denominator == 1 and int(cut) not in excluded else None
    pool = [n for n in range(1, math.ceil(cut)) if n not in excluded]
    return (0 if L.direction == ABOVE else 1), first, pool, eq


@dataclass(frozen=True)
class KernelInput:
    """Float arrays for :func:`greedy_kernel` plus the exact sources they came from."""

    args: tuple
    ladders: tuple
    pools: tuple
    with_x: bool


def kernel_input(D: CountableDesc, x, steps: int, dl_depth: int = 16) -> KernelInput:
    x = rat(x)
    ladders, excl = _expand(D, dl_depth)
    pool_lo, pool_hi = [], []
    with_x = D.contains(x)
    lim, sgn, scl, side, start, ex_flat, ex_off = [], [], [], [], [], [], [0]
    for L, ex in zip(ladders, excl):
        s, first, pool, _ = _split(L, x, ex)
        for n in pool:
            (pool_lo if s == 1 else pool_hi).append(L.point(n))
        lim.append(float(L.limit))
        sgn.append(float(L.sign))
        scl.append(float(L.scale))
        side.append(s)
        start.append(first)
        bad = sorted(n for n in ex if n >= first)
        ex_flat.extend(bad)
        ex_off.append(len(ex_flat))
    for p in (D.extra_points.points() if not D.extra_points.is_empty else []):
        if p < x:
            pool_lo.append(p)
        elif p > x:
            pool_hi.append(p)
    if 0 not in side or 1 not in side:
        which = "below" if 0 not in side else "above"
        raise BalanceError(f"H has only finitely many points {which} x={x}; no x-balanced sequence")
    pool_lo.sort()
    pool_hi.sort()
    args = (
        np.array(lim), np.array(sgn), np.array(scl), np.array(side, np.int64),
        np.array(start, np.int64), np.array(ex_flat, np.int64), np.array(ex_off, np.int64),
        np.array([float(p) for p in pool_lo]), np.array([float(p) for p in pool_hi]),
        float(x), int(steps), int(with_x),
    )
    return KernelInput(args, tuple(ladders), (tuple(pool_lo), tuple(pool_hi)), with_x)


def balanced_oracle(D: CountableDesc, x, steps: int = 100_000, tol: float = 1e-3,
                    dl_depth: int = 16) -> BalancedTrace:
    """Greedily build an ``x``-balanced approximating prefix of ``D`` and follow its mean.

    A point equal to ``x`` is taken first and counts on both sides. Double
    ladders are truncated to their first ``dl_depth`` inner ladders
    (``truncated`` is then set). Success is evidence for ``x`` lying in
    ``ms_axs``; failure is inconclusive.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if not tol > 0:
        raise ValueError("tol must be positive")
    x = rat(x)
    inp = kernel_input(D, x, steps, dl_depth)
    vals, src, sidx, sides, means = greedy_kernel(*inp.args)
    lo_count = np.cumsum((sides == 0) | (sides == 2))
    hi_count = np.cumsum((sides == 1) | (sides == 2))
    ends = np.arange(int(inp.with_x) + 1, len(sides), 2)
    counts_ok = bool(np.all(lo_count[ends] == hi_count[ends]))
    err = float(abs(means[-1] - float(x)))
    return BalancedTrace(
        x, vals, means, counts_ok, err <= tol, err, src, sidx, sides,
        bool(D.double_ladders), inp.ladders, inp.pools,
    )
