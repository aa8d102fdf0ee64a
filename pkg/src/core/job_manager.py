"""
Job Manager for partdist.
Runs chunked computations (enumeration oracles, Monte Carlo streams) on a
thread pool and reduces the partial results in chunk order.
"""

import itertools
import logging
import threading
from concurrent.futures import Future, ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")
A = TypeVar("A")


def chunked(iterable: Iterable[T], size: int) -> Iterator[List[T]]:
    """Split an iterable lazily into lists of at most ``size`` items."""
    if size < 1:
        raise ValueError("Chunk size must be at least 1")
    iterator = iter(iterable)
    while True:
        chunk = list(itertools.islice(iterator, size))
        if not chunk:
            return
        yield chunk


class JobManager:
    """
    Manages chunked map/reduce jobs.

    Results are combined in the order the chunks were produced, whatever the
    number of workers, so exact sums and seeded samples do not depend on it.
    """

    def __init__(self) -> None:
        """Initialize the job manager."""
        self._progress_callback: Optional[Callable[[float, str], None]] = None
        self._lock = threading.Lock()
        self._is_running = False
        self._cancel_requested = False

    def set_progress_callback(self, callback: Callable[[float, str], None]) -> None:
        """Set callback for progress updates (called from the reducing thread)."""
        self._progress_callback = callback

    @property
    def is_running(self) -> bool:
        """Check if a job is currently running."""
        return self._is_running

    def map_reduce(
        self,
        func: Callable[[T], R],
        chunks: Iterable[T],
        combine: Callable[[A, R], A],
        initial: A,
        workers: int = 1,
        total_chunks: Optional[int] = None,
    ) -> A:
        """
        Apply ``func`` to every chunk and fold the results with ``combine``.

        Args:
            func: Work for one chunk.
            chunks: Chunks, consumed lazily.
            combine: Folds one partial result into the accumulator.
            initial: Starting accumulator.
            workers: Thread count; 1 runs inline in the calling thread.
            total_chunks: Optional chunk count, used only for progress percentages.

        Returns:
            The accumulator after every chunk has been folded in.

        Raises:
            InterruptedError: If cancel_job() was called while running.
        """
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        with self._lock:
            if self._is_running:
                logger.warning("A job is already running")
                raise RuntimeError("A job is already running")
            self._is_running = True
            self._cancel_requested = False
        try:
            if workers == 1:
                return self._run_inline(func, chunks, combine, initial, total_chunks)
            return self._run_pooled(func, chunks, combine, initial, workers, total_chunks)
        finally:
            self._is_running = False

    def _run_inline(self, func, chunks, combine, accumulator, total_chunks):
        for index, chunk in enumerate(chunks):
            self._check_cancelled()
            accumulator = combine(accumulator, func(chunk))
            self._chunk_done(index, total_chunks)
        return accumulator

    def _run_pooled(self, func, chunks, combine, accumulator, workers, total_chunks):
        # A bounded window of in-flight chunks keeps lazy enumerations lazy.
        window = workers * 2
        pending: List[Future] = []
        done_count = 0
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="partdist") as pool:
            try:
                for chunk in chunks:
                    self._check_cancelled()
                    pending.append(pool.submit(func, chunk))
                    if len(pending) >= window:
                        accumulator = combine(accumulator, pending.pop(0).result())
                        self._chunk_done(done_count, total_chunks)
                        done_count += 1
                while pending:
                    self._check_cancelled()
                    accumulator = combine(accumulator, pending.pop(0).result())
                    self._chunk_done(done_count, total_chunks)
                    done_count += 1
            except BaseException:
                for future in pending:
                    future.cancel()
                raise
        return accumulator

    def _chunk_done(self, index: int, total_chunks: Optional[int]) -> None:
        logger.debug(f"Chunk {index + 1} reduced")
        if total_chunks:
            self.update_progress(100.0 * (index + 1) / total_chunks, f"Chunk {index + 1}/{total_chunks}")

    def _check_cancelled(self) -> None:
        """Raise InterruptedError if the current job has been cancelled."""
        if self._cancel_requested:
            raise InterruptedError("Job was cancelled")

    def cancel_job(self) -> None:
        """
        Request cancellation of the current job.
        Checked between chunks; a chunk already running finishes first.
        """
        self._cancel_requested = True
        logger.warning("Cancellation requested")

    def is_cancelled(self) -> bool:
        """Check if cancellation has been requested."""
        return self._cancel_requested

    def update_progress(self, value: float, status: Optional[str] = None) -> None:
        """
        Update progress.

        Args:
            value: Progress value (0-100).
            status: Optional status message.
        """
        if self._progress_callback:
            self._progress_callback(value, status or "")
