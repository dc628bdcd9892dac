"""Kernel selection: compiled extension when available, pure otherwise.

Set FANLAB_PURE=1 to force the pure path.  The selected module exposes
``run_odd_tuple``, ``region_violation``, ``brute_force`` and ``sweep_grid``
with identical semantics on both paths.
"""

from __future__ import annotations

import os

if os.environ.get("FANLAB_PURE") == "1":
    from . import _fallback as _impl
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        from . import _fallback as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
run_odd_tuple = _impl.run_odd_tuple
region_violation = _impl.region_violation
brute_force = _impl.brute_force
sweep_grid = _impl.sweep_grid
