"""Background worker pool over concurrent.futures.

Batched work (one Fredholm determinant per k, one oracle per k, one limit
orbit per scale) is independent, so it fans out to a thread pool. Workers
receive a WorkContext that provides:
- Cancellation checking via check_cancelled()
- Progress reporting via progress(percent, message)

Results always come back in submission order, so parallel runs produce the
same output as serial ones.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass

from .constants import DEFAULT_WORKERS


class WorkCancelled(Exception):
    """Raised by background work to indicate a cooperative cancellation."""


@dataclass(frozen=True)
class WorkContext:
    """Context passed to background tasks for progress and cancellation checks."""

    is_cancelled: Callable[[], bool]
    report_progress: Callable[[int, str], None]

    def check_cancelled(self) -> None:
        if self.is_cancelled():
            raise WorkCancelled()

    def progress(self, percent: int, message: str = "") -> None:
        self.report_progress(max(0, min(100, int(percent))), message)


@dataclass
class WorkRequest[T]:
    """Bundle a callable (receives WorkContext) with an optional progress callback."""

    fn: Callable[[WorkContext], T]
    label: str = ""
    on_progress: Callable[[int, str], None] | None = None


class WorkerPool:
    """Small wrapper around ThreadPoolExecutor with ordered results."""

    def __init__(self, max_workers: int = DEFAULT_WORKERS) -> None:
        self.max_workers = max(1, max_workers)
        self._cancelled = threading.Event()
        self.log = logging.getLogger(__name__)

    def cancel(self) -> None:
        self._cancelled.set()

    def _context(self, req: WorkRequest[object]) -> WorkContext:
        def report(percent: int, message: str) -> None:
            if req.on_progress is not None:
                req.on_progress(percent, message)
            else:
                self.log.debug("%s: %d%% %s", req.label, percent, message)

        return WorkContext(self._cancelled.is_set, report)

    def run[T](self, requests: Sequence[WorkRequest[T]]) -> list[T]:
        """Execute requests and return their results in submission order.

        The first failure cancels the remaining work and is re-raised.
        """
        if self.max_workers == 1 or len(requests) <= 1:
            results: list[T] = []
            for req in requests:
                ctx = self._context(req)  # type: ignore[arg-type]
                ctx.check_cancelled()
                results.append(req.fn(ctx))
            return results

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures: list[Future[T]] = [
                executor.submit(req.fn, self._context(req))  # type: ignore[arg-type]
                for req in requests
            ]
            try:
                return [f.result() for f in futures]
            except BaseException:
                self.cancel()
                for f in futures:
                    f.cancel()
                self.log.debug("Worker batch aborted after a failure")
                raise

    def map[S, T](self, fn: Callable[[S], T], items: Iterable[S], label: str = "") -> list[T]:
        """Apply fn to each item in parallel, keeping item order."""
        batch = list(items)
        total = len(batch)

        def make(index: int, item: S) -> WorkRequest[T]:
            def task(ctx: WorkContext) -> T:
                ctx.check_cancelled()
                result = fn(item)
                ctx.progress((index + 1) * 100 // max(total, 1), f"{label} item {index}")
                return result

            return WorkRequest(fn=task, label=label)

        return self.run([make(i, item) for i, item in enumerate(batch)])
