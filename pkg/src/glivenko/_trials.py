from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

from .errors import DomainError

T = TypeVar("T")


def map_trials(fn: Callable[[int], T], trials: int, threads: int = 1) -> list[T]:
    """Evaluate ``fn(0) .. fn(trials - 1)``; results are in trial order whatever ``threads`` is."""
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    if threads == 1 or trials < 2:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))
