"""Order-preserving process-pool map used by the sweep and proof grids."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, List, Optional

JOBS_ENV = "KOHLAB_JOBS"


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from None
    if jobs < 1:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}")
    return jobs


def pimap(fn: Callable, items: Iterable, jobs: Optional[int] = None, chunksize: int = 1) -> Iterator:
    """Lazy, order-preserving variant of :func:`pmap`."""
    items = list(items)
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or len(items) <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, items, chunksize=chunksize)


def pmap(fn: Callable, items: Iterable, jobs: Optional[int] = None, chunksize: int = 8) -> List:
    """``list(map(fn, items))``, spread over ``jobs`` worker processes.

    Output order always matches input order.  ``fn`` must be picklable.
    """
    items = list(items)
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
