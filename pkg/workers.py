from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

import settings

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], *, workers: int = 1) -> list[R]:
    """
    Map fn over items, results in input order whatever the worker count.

    fn and every item must be picklable when workers > 1.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(
        max_workers=workers, initializer=settings.apply_bounds, initargs=(settings.current_bounds(),)
    ) as pool:
        return list(pool.map(fn, items))


def chunked(values: list[T], parts: int) -> list[list[T]]:
    """Split values into at most `parts` contiguous runs, preserving order."""
    if not values:
        return []
    parts = max(1, min(parts, len(values)))
    step = -(-len(values) // parts)
    return [values[k : k + step] for k in range(0, len(values), step)]
