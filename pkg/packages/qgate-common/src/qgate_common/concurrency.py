"""Ordered fan-out of independent jobs over a thread pool."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    """Pool size from QGATE_WORKERS (default 1, sequential).

    Raises:
        ValueError: QGATE_WORKERS is not a positive integer.
    """
    raw = os.getenv("QGATE_WORKERS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"Invalid QGATE_WORKERS: {raw}. Must be a positive integer") from None
    if workers < 1:
        raise ValueError(f"Invalid QGATE_WORKERS: {raw}. Must be a positive integer")
    return workers


def map_ordered(func: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Apply ``func`` to every item and return results in input order.

    ``workers=1`` runs inline; the first exception raised by a job propagates.
    """
    items = list(items)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug(f"Running {len(items)} jobs on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
