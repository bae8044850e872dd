"""Bounded process pool with a keyed, order-independent merge."""

from __future__ import annotations

import multiprocessing as mp
import os
from concurrent.futures import FIRST_EXCEPTION, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Sequence


def default_width() -> int:
    return os.cpu_count() or 1


class TaskError(RuntimeError):
    """A task raised; ``key`` names the failing item."""

    def __init__(self, key, cause: BaseException):
        super().__init__(f"task for key {key!r} failed: {cause!r}")
        self.key = key
        self.cause = cause


@dataclass
class TaskBatch:
    items: Sequence[Hashable]
    width: int = 1
    chunking: int | None = None
    executed: int = field(default=0, init=False)

    def chunks(self) -> list[list]:
        items = list(self.items)
        if not items:
            return []
        size = self.chunking or max(1, -(-len(items) // (self.width * 4)))
        return [items[k:k + size] for k in range(0, len(items), size)]


_shared: Any = None


def _init(shared):
    global _shared
    _shared = shared


def _run_chunk(func, keys):
    out = []
    for k in keys:
        try:
            out.append((k, func(_shared, k)))
        except Exception as exc:       # surfaced to the caller with its key
            return out, (k, exc)
    return out, None


def map_rows(batch: TaskBatch, func: Callable[[Any, Hashable], Any], shared: Any = None) -> dict:
    """``{k: func(shared, k) for k in batch.items}`` evaluated on ``batch.width`` processes.

    ``func`` must be a picklable module-level function and pure in
    ``(shared, key)``.  Contiguous static chunks; the result is merged by key,
    so completion order never shows.  The first failure cancels the batch and
    raises :class:`TaskError`.
    """
    chunks = batch.chunks()
    if not chunks:
        return {}
    results: dict = {}
    if batch.width <= 1 or len(chunks) == 1:
        for ch in chunks:
            for k in ch:
                try:
                    results[k] = func(shared, k)
                except Exception as exc:
                    raise TaskError(k, exc) from exc
                batch.executed += 1
        return results

    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
    with ProcessPoolExecutor(max_workers=min(batch.width, len(chunks)), mp_context=ctx,
                             initializer=_init, initargs=(shared,)) as pool:
        futures = [pool.submit(_run_chunk, func, ch) for ch in chunks]
        pending = set(futures)
        failure = None
        while pending and failure is None:
            done, pending = wait(pending, return_when=FIRST_EXCEPTION)
            for f in done:
                out, err = f.result()
                if err is not None:
                    failure = err
                    break
                for k, v in out:
                    results[k] = v
                batch.executed += len(out)
        if failure is not None:
            for f in pending:
                f.cancel()
            key, exc = failure
            raise TaskError(key, exc) from exc
    return {k: results[k] for k in batch.items}
