"""Order-preserving parallel map.

mpmath keeps its working precision in process-global state, so workers are
forked processes rather than threads.  Results always come back in input
order, which keeps every report independent of the worker count.
"""
from __future__ import annotations

import math
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    items = list(items)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    methods = multiprocessing.get_all_start_methods()
    # fork lets children inherit tables already built by the parent
    ctx = multiprocessing.get_context("fork" if "fork" in methods else None)
    workers = min(workers, len(items))
    chunk = math.ceil(len(items) / workers)
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
