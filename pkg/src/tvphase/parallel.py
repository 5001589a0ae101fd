"""Task-level parallelism with thread-count-independent results.

The env var TVPT_THREADS caps the worker pool (default 1).  Tasks must be pure
functions of their index-derived seeds; results are always collected in index
order, so the reduction is identical for any thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("TVPT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """Map fn over items, preserving input order in the result list."""
    items = list(items)
    workers = min(thread_count(), len(items)) if items else 1
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
