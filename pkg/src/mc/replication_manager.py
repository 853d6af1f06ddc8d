import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from src.errors import NumericFailure

logger = logging.getLogger(__name__)


def resolve_threads(threads: int) -> int:
    """
    0 means one worker per CPU.
    """
    if threads < 0:
        raise ValueError(f'threads must be >= 0, got {threads}')
    return threads or (os.cpu_count() or 1)


class ReplicationManager:
    """
    Runs independent replications on a thread pool and returns their results
    in replication order, whatever the completion order.
    """

    def __init__(self, threads: int = 1, chunk_size: int = 256):
        self.threads = resolve_threads(threads)
        self.chunk_size = chunk_size

    def run(self, task: Callable[[int], float], count: int) -> np.ndarray:
        """
        Evaluate task(i) for i = 1 .. count; entry i-1 of the result holds task(i).
        """
        chunks = [range(start, min(start + self.chunk_size, count + 1))
                  for start in range(1, count + 1, self.chunk_size)]

        if self.threads == 1:
            parts = [self._run_with_error_handling(task, chunk) for chunk in chunks]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts = list(pool.map(lambda chunk: self._run_with_error_handling(task, chunk), chunks))

        logger.debug(f"Ran {count} replications on {self.threads} thread(s)")
        return np.concatenate(parts) if parts else np.empty(0)

    def _run_with_error_handling(self, task: Callable[[int], float], chunk: range) -> np.ndarray:
        """
        Run one chunk; any failure aborts the whole study.
        """
        try:
            return np.array([task(i) for i in chunk], dtype=float)
        except Exception as e:
            logger.error(f"Replications {chunk.start}..{chunk.stop - 1} failed: {e}")
            raise NumericFailure(f'Replication failure in {chunk.start}..{chunk.stop - 1}: {e}') from e
