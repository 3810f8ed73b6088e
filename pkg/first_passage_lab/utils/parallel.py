"""Fan-out of independent computations over a worker pool."""
import asyncio
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

# Default parallelism that can be overridden through the environment
DEFAULT_THREADS = int(os.getenv("FPL_THREADS", str(os.cpu_count() or 1)))

R = TypeVar("R")


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        threads = DEFAULT_THREADS
    return max(1, threads)


async def gather_in_pool(
    func: Callable[..., R],
    arg_tuples: Sequence[Tuple[Any, ...]],
    threads: Optional[int] = None
) -> List[R]:
    """Run ``func(*args)`` for every argument tuple concurrently.

    Results come back in the order of ``arg_tuples`` regardless of scheduling,
    which keeps every caller's output deterministic.

    Args:
        func: A pure function
        arg_tuples: One tuple of positional arguments per call
        threads: Worker count (default: FPL_THREADS or the number of cores)

    Returns:
        The results, aligned with ``arg_tuples``
    """
    workers = resolve_threads(threads)
    if workers == 1 or len(arg_tuples) <= 1:
        return [func(*args) for args in arg_tuples]

    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        tasks = [loop.run_in_executor(executor, func, *args) for args in arg_tuples]
        return list(await asyncio.gather(*tasks))


def run_parallel(
    func: Callable[..., R],
    arg_tuples: Sequence[Tuple[Any, ...]],
    threads: Optional[int] = None
) -> List[R]:
    """Synchronous wrapper around ``gather_in_pool``."""
    return asyncio.run(gather_in_pool(func, arg_tuples, threads=threads))
