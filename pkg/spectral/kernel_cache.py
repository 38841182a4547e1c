"""
Kernel table cache for the dual-quaternion Fourier transform
Keeps cos(2πk/M) / sin(2πk/M) tables per transform length with hit statistics
"""

import logging
import threading
from collections import OrderedDict
from typing import Any, Dict, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class KernelCache:
    def __init__(self, max_entries: int = 32):
        """
        Initialize an LRU cache of kernel tables

        Args:
            max_entries: Number of distinct transform lengths kept in memory
        """
        self.max_entries = max_entries
        self._tables: "OrderedDict[int, Tuple[np.ndarray, np.ndarray]]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get_tables(self, length: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Get the cosine and sine tables for a transform length

        Args:
            length: Transform length M

        Returns:
            (cos, sin) read-only arrays of length M, entry k holding the value at 2πk/M
        """
        with self._lock:
            tables = self._tables.get(length)
            if tables is not None:
                self._tables.move_to_end(length)
                self.hits += 1
                return tables

            self.misses += 1
            angles = 2.0 * np.pi * np.arange(length, dtype=np.float64) / length
            cos_table = np.cos(angles)
            sin_table = np.sin(angles)
            cos_table.setflags(write=False)
            sin_table.setflags(write=False)
            tables = (cos_table, sin_table)
            self._tables[length] = tables
            if len(self._tables) > self.max_entries:
                evicted, _ = self._tables.popitem(last=False)
                logger.debug(f"Evicted kernel tables for M={evicted}")
            logger.debug(f"Built kernel tables for M={length}")
            return tables

    def clear(self) -> None:
        with self._lock:
            self._tables.clear()
            self.hits = 0
            self.misses = 0
        logger.info("Kernel cache cleared")

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics"""
        with self._lock:
            lookups = self.hits + self.misses
            return {
                "cached_lengths": list(self._tables.keys()),
                "entries": len(self._tables),
                "max_entries": self.max_entries,
                "hits": self.hits,
                "misses": self.misses,
                "hit_rate": round(self.hits / lookups, 3) if lookups else 0.0,
            }


kernel_cache = KernelCache()
