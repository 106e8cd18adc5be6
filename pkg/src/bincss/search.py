"""Deterministic min-merge over independent enumeration chunks."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor

DEFAULT_BUDGET = 10**9


def chunked_min(fn: Callable, args: Sequence[tuple], workers: int = 1):
    """Apply ``fn`` to every argument tuple and return the smallest non-None result.

    Results must be totally ordered keys such as ``(error, tiebreak...)``, so the
    merged minimum does not depend on ``workers`` or completion order.
    """
    if workers <= 1 or len(args) <= 1:
        results = [fn(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, *zip(*args)))
    results = [r for r in results if r is not None]
    return min(results) if results else None
