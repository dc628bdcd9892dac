"""Worker-pool helper for the embarrassingly parallel enumeration loops.

FANLAB_THREADS selects the pool size (default 1).  Results are always
merged in input order, so reports are byte-identical at any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count():
    raw = os.environ.get("FANLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FANLAB_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise ValueError(f"FANLAB_THREADS must be positive, got {n}")
    return n


def map_ordered(fn, items):
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
