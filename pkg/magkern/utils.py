"""Module for evaluating independent grid points in worker processes."""
__all__ = ["parallel_map"]


# standard library
from logging import getLogger
from multiprocessing import Pool
from typing import Callable, Iterable, List, TypeVar


# type hints
T = TypeVar("T")
R = TypeVar("R")


# module logger
logger = getLogger(__name__)


# main functions
def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Apply a function to items, optionally in worker processes.

    Results are returned in the order of ``items`` for any ``jobs``.
    The function must be picklable (defined at module top level)
    when ``jobs > 1``.

    Args:
        func: Function to apply.
        items: Items to apply the function to.
        jobs: Number of worker processes. 1 runs serially.

    Returns:
        List of results.

    """
    items = list(items)

    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug("mapping %d items over %d processes", len(items), jobs)

    with Pool(processes=min(jobs, len(items))) as pool:
        return pool.map(func, items)
