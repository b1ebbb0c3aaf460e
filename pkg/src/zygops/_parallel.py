"""Thread-pool helper honoring the ZYGOPS_THREADS cap.

Grid/batch evaluations reduce by max (associative, commutative) and results
are collected in submission order, so the outcome never depends on
scheduling.  ZYGOPS_THREADS=0 or unset picks a size automatically; 1 runs
inline.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("ZYGOPS_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def parallel_map(fn, items) -> list:
    """Ordered map over items, threaded when it pays off."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
