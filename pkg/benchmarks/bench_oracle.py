"""Time the greedy balancing kernel: compiled versus plain Python.

    python3 benchmarks/bench_oracle.py [--steps N] [--repeat R]
"""

import argparse
import time
from fractions import Fraction

from meanset import _accel
from meanset.countable import kernel_input, oracle, parse_desc

CASES = [
    ("ladder(0,+,1) U ladder(1,-,1) U ladder(5,+,1)", Fraction(27, 10)),
    ("ladder(0,+,1) U dladder(1,1,1)", Fraction(1)),
]


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    kern = oracle.greedy_kernel
    print(f"numba available: {_accel.HAVE_NUMBA}")
    print("descriptor\tx\tsteps\tcompiled_s\tpython_s\tspeedup")
    for text, x in CASES:
        args = kernel_input(parse_desc(text), x, a.steps).args
        kern(*args)  # warm up / compile
        fast = best_of(kern, args, a.repeat)
        slow = best_of(kern.py_func, args, 1)
        print(f"{text}\t{x}\t{a.steps}\t{fast:.4f}\t{slow:.4f}\t{slow / fast:.1f}x")


if __name__ == "__main__":
    main()
