from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from . import env

T = TypeVar("T")
R = TypeVar("R")

_default_threads = env.THREADS


def set_default_threads(threads: int) -> None:
    """Set the worker count used when callers do not pass one (the CLI's --threads)."""
    global _default_threads
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    _default_threads = threads


def fan_out(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """Map fn over items, possibly on a thread pool.

    Results always come back in input order, and each item is computed by the
    same code path, so the output does not depend on the worker count.
    """
    items = list(items)
    workers = threads or _default_threads
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
