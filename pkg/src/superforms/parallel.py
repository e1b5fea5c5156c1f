"""Cell scheduling over a process pool; results always come back in input order."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

ENV_THREADS = "SUPERFORM_THREADS"

_default_workers = 1


def set_default_workers(width: int) -> None:
    global _default_workers
    if width < 1:
        raise ValueError("worker count must be positive")
    _default_workers = width


def resolve_workers(explicit: int | None = None, configured: int | None = None) -> int:
    """Flag beats environment beats config file; default 1."""
    if explicit is not None:
        width = explicit
    elif os.environ.get(ENV_THREADS):
        try:
            width = int(os.environ[ENV_THREADS])
        except ValueError:
            raise ValueError(f"{ENV_THREADS} must be an integer") from None
    elif configured is not None:
        width = configured
    else:
        width = 1
    if width < 1:
        raise ValueError("worker count must be positive")
    return width


def map_cells(fn: Callable, cells: Iterable, workers: int | None = None) -> list:
    """``[fn(*cell) for cell in cells]``, possibly in worker processes.

    ``fn`` must be a module-level function.  The pool only changes where the
    work happens, never the order or content of the results.
    """
    cells: Sequence = list(cells)
    width = _default_workers if workers is None else workers
    if width <= 1 or len(cells) <= 1:
        return [fn(*cell) for cell in cells]
    from .linalg import component_cap

    with ProcessPoolExecutor(max_workers=min(width, len(cells)), initializer=_init, initargs=(component_cap(),)) as ex:
        futures = [ex.submit(fn, *cell) for cell in cells]
        return [f.result() for f in futures]


def _init(cap: int) -> None:
    from .linalg import set_component_cap

    set_component_cap(cap)
