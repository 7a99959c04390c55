"""Order-preserving process-pool map used by the level tower and the suites."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: int | None) -> int:
    """Explicit value wins; otherwise ``LATCOH_THREADS``; otherwise 1."""
    if workers is None:
        env = os.environ.get("LATCOH_THREADS", "").strip()
        workers = int(env) if env.isdigit() else 1
    return max(1, int(workers))


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int | None = 1) -> list[R]:
    """``[fn(x) for x in items]``, optionally fanned out over processes.

    Results come back in input order, so output never depends on scheduling.
    """
    items = list(items)
    workers = resolve_workers(workers)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
