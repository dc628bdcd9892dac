"""Exhaustive grids of dimension functions and the algorithm-vs-oracle sweep.

Enumerates all monotone submodular integer functions with b_A >= |A| and
b_[N] <= bmax (restricted to b_[N] = N mod 2, the algorithm's standing
assumption), up to relabelling symmetry, and verifies on each one that

  (a) every compatible odd-tuple-algorithm output lies in the brute-force
      oracle list, and
  (b) whenever the oracle is empty, all N! permutation runs are flagged
      incompatible.

The converse of (b) (oracle nonempty implies some permutation succeeds) is
recorded as a statistic, never asserted.  The sweep is driven by the
selected kernel (compiled when available); this module also provides the
pure reference enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import core
from .core import DimFunction


def _mask_order(n):
    return sorted(range(1, 1 << n), key=lambda m: (bin(m).count("1"), m))


def _relabel_tables(n):
    """For each permutation of [n], the mask-relabelling table."""
    tables = []
    for perm in itertools.permutations(range(n)):
        table = [0] * (1 << n)
        for m in range(1 << n):
            mm = 0
            for i in range(n):
                if m >> i & 1:
                    mm |= 1 << perm[i]
            table[m] = mm
        tables.append(table)
    return tables


def is_canonical(n, values, order=None, tables=None):
    """Lexicographically minimal among relabellings, over (popcount, mask) order."""
    order = order or _mask_order(n)
    tables = tables or _relabel_tables(n)
    for table in tables:
        for m in order:
            v, w = values[m], values[table[m]]
            if v < w:
                break
            if v > w:
                return False
    return True


def enumerate_dim_functions(n, bmax, canonical_only=True):
    """Yield value arrays (length 2**n) in deterministic order.

    Constraints: monotone, locally submodular, b_A >= |A|, b_A <= bmax,
    and b_[N] = N (mod 2).
    """
    if n < 1:
        raise ValueError("n must be positive")
    order = _mask_order(n)
    tables = _relabel_tables(n) if canonical_only else None
    full = (1 << n) - 1
    values = [0] * (1 << n)

    pair_bounds = []
    for m in order:
        bits = [i for i in range(n) if m >> i & 1]
        pairs = [(m ^ (1 << i), m ^ (1 << j), m ^ (1 << i) ^ (1 << j))
                 for i, j in itertools.combinations(bits, 2)]
        subs = [m ^ (1 << i) for i in bits]
        pair_bounds.append((m, len(bits), subs, pairs))

    def rec(idx):
        if idx == len(order):
            if (values[full] - n) % 2 != 0:
                return
            if canonical_only and not is_canonical(n, values, order, tables):
                return
            yield tuple(values)
            return
        m, size, subs, pairs = pair_bounds[idx]
        lo = size
        for s in subs:
            lo = max(lo, values[s])
        if size == 1 and m > 1:
            lo = max(lo, values[m >> 1])  # ascending singletons (symmetry pruning)
        hi = bmax
        for a, b, c in pairs:
            hi = min(hi, values[a] + values[b] - values[c])
        for v in range(lo, hi + 1):
            values[m] = v
            yield from rec(idx + 1)
        values[m] = 0

    yield from rec(0)


@dataclass
class GridSummary:
    n: int
    bmax: int
    functions: int
    oracle_empty: int
    compat_runs: int
    violations_a: tuple
    violations_b: tuple
    converse_failures: int

    @property
    def passed(self):
        return not self.violations_a and not self.violations_b


def verify_function(b):
    """Checks (a) and (b) for one dimension function; pure reference path."""
    n = b.n
    oracle = set(core.brute_force_odd_tuples(b))
    compat = 0
    va = []
    for perm in itertools.permutations(range(1, n + 1)):
        a, trace = core.odd_tuple_algorithm(b, perm)
        report = core.check_output_compat(b, a, trace)
        if report.compatible:
            compat += 1
            if a not in oracle:
                va.append((tuple(b.values), perm, a))
    vb = []
    if not oracle and compat > 0:
        vb.append((tuple(b.values), compat))
    converse = 1 if (oracle and compat == 0) else 0
    return len(oracle), compat, va, vb, converse


def verify_grid(n, bmax, use_kernel=True, progress=None):
    """Sweep the full grid; uses the compiled kernel when selected."""
    from . import kernel

    if use_kernel and kernel.IMPLEMENTATION == "compiled":
        return kernel.sweep_grid(n, bmax)
    functions = 0
    oracle_empty = 0
    compat_total = 0
    va = []
    vb = []
    converse = 0
    for values in enumerate_dim_functions(n, bmax):
        functions += 1
        b = DimFunction(n, values)
        osize, compat, a_viol, b_viol, conv = verify_function(b)
        if osize == 0:
            oracle_empty += 1
        compat_total += compat
        va.extend(a_viol)
        vb.extend(b_viol)
        converse += conv
        if progress and functions % 1000 == 0:
            progress(functions)
    return GridSummary(n, bmax, functions, oracle_empty, compat_total,
                       tuple(va), tuple(vb), converse)
