"""Worker pools"""

from concurrent.futures import ThreadPoolExecutor
import psutil

__all__ = [
    'default_workers',
    'parallel_map',
]


def default_workers():
    """Default number of worker threads (one per physical CPU)"""
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def parallel_map(func, items, workers=None):
    """Apply a function to each item, preserving order

    A single worker runs everything in the calling thread.
    """
    items = list(items)
    workers = workers or default_workers()
    if workers == 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
