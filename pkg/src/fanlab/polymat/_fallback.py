"""Pure-Python implementations of the kernel surface.

Thin wrappers around the reference code in ``core`` and ``grid``; selected
at import time when the compiled extension is unavailable or disabled.
"""

from __future__ import annotations

from . import core
from .core import DimFunction

IMPLEMENTATION = "pure"


def run_odd_tuple(n, values, perm):
    b = DimFunction(n, tuple(values))
    try:
        a, _ = core.odd_tuple_algorithm(b, tuple(perm))
    except core.PolymatError:
        return None
    return a


def region_violation(n, values, a):
    b = DimFunction(n, tuple(values))
    ok, witness = core.in_nonzero_region(b, tuple(a))
    if ok:
        return -1
    return core.mask_of(witness)


def brute_force(n, values):
    b = DimFunction(n, tuple(values))
    return list(core.brute_force_odd_tuples(b))


def sweep_grid(n, bmax):
    from . import grid

    return grid.verify_grid(n, bmax, use_kernel=False)
