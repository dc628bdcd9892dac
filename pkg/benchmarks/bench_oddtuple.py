"""Benchmark: compiled odd-tuple kernel vs the pure-Python fallback.

Times the exhaustive algorithm-vs-oracle sweep on growing grids with both
implementations (the pure path is capped at grids it can finish quickly)
and single-run primitives on random dimension functions.

Usage: python benchmarks/bench_oddtuple.py [--full]
"""

import argparse
import random
import sys
import time

from fanlab.polymat import DimFunction, core
from fanlab.polymat import _fallback

try:
    from fanlab.polymat import _speedups
except ImportError:
    _speedups = None


def time_sweep(impl, n, bmax):
    start = time.time()
    summary = impl.sweep_grid(n, bmax)
    return time.time() - start, summary


def bench_sweeps(full):
    grids = [(2, 14), (3, 10), (3, 14)]
    if full:
        grids += [(4, 8), (4, 10)]
    print(f"{'grid':>12} {'functions':>10} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for n, bmax in grids:
        t_pure, s_pure = time_sweep(_fallback, n, bmax)
        if _speedups is not None:
            t_fast, s_fast = time_sweep(_speedups, n, bmax)
            assert (s_pure.functions, s_pure.oracle_empty, s_pure.compat_runs) \
                == (s_fast.functions, s_fast.oracle_empty, s_fast.compat_runs)
            ratio = t_pure / t_fast if t_fast > 0 else float("inf")
            print(f"{f'N={n},b<={bmax}':>12} {s_pure.functions:>10} "
                  f"{t_pure:>9.2f}s {t_fast:>9.2f}s {ratio:>7.0f}x")
        else:
            print(f"{f'N={n},b<={bmax}':>12} {s_pure.functions:>10} "
                  f"{t_pure:>9.2f}s {'-':>10} {'-':>8}")
    if full and _speedups is not None:
        t_fast, s_fast = time_sweep(_speedups, 4, 14)
        print(f"{'N=4,b<=14':>12} {s_fast.functions:>10} {'-':>10} "
              f"{t_fast:>9.2f}s {'-':>8}")


def bench_single_runs():
    rng = random.Random(0)
    cases = []
    while len(cases) < 2000:
        n = rng.randint(2, 4)
        values = [0] * (1 << n)
        base = rng.randint(n, 12)
        for m in range(1, 1 << n):
            bits = bin(m).count("1")
            values[m] = min(base, bits * rng.randint(1, 3) + rng.randint(0, 2))
        b = DimFunction(n, tuple(values))
        rep = core.check_submodular(b)
        if not rep.passed or (b.total - n) % 2 != 0:
            continue
        perm = tuple(rng.sample(range(1, n + 1), n))
        cases.append((n, tuple(values), perm))

    start = time.time()
    for n, values, perm in cases:
        _fallback.run_odd_tuple(n, values, perm)
        _fallback.brute_force(n, values)
    t_pure = time.time() - start

    if _speedups is not None:
        start = time.time()
        for n, values, perm in cases:
            _speedups.run_odd_tuple(n, values, perm)
            _speedups.brute_force(n, values)
        t_fast = time.time() - start
        for n, values, perm in cases[:200]:
            assert _speedups.run_odd_tuple(n, values, perm) \
                == _fallback.run_odd_tuple(n, values, perm)
        print(f"\n{len(cases)} single runs: pure {t_pure:.2f}s, "
              f"compiled {t_fast:.2f}s ({t_pure / max(t_fast, 1e-9):.0f}x)")
    else:
        print(f"\n{len(cases)} single runs: pure {t_pure:.2f}s (no extension built)")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true",
                        help="include the N = 4 grids (slower)")
    args = parser.parse_args()
    if _speedups is None:
        print("compiled extension not built; timing the pure path only\n")
    bench_sweeps(args.full)
    bench_single_runs()


if __name__ == "__main__":
    sys.exit(main())
