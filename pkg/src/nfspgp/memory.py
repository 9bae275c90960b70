"""Replay stores: a circular transition buffer and a reservoir behavior store."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np


@dataclass(frozen=True)
class Transition:
    s: Any
    a: int
    r: float
    s_next: Any
    terminal: bool


@dataclass(frozen=True)
class BehaviorTuple:
    s: Any
    a: int


class CircularBuffer:
    """FIFO ring: keeps the most recent `capacity` items."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._ring: list = []
        self._pos = 0
        self.insert_count = 0

    def push(self, item: Any) -> None:
        if len(self._ring) < self.capacity:
            self._ring.append(item)
        else:
            self._ring[self._pos] = item
            self._pos = (self._pos + 1) % self.capacity
        self.insert_count += 1

    def __len__(self) -> int:
        return len(self._ring)

    @property
    def raw(self) -> list:
        """Slot storage in arbitrary order; fine for uniform sampling."""
        return self._ring

    def items(self) -> list:
        """Contents in insertion order, oldest first."""
        return self._ring[self._pos :] + self._ring[: self._pos]

    def sample(self, k: int, rng: np.random.Generator) -> list:
        return sample_batch(self, k, rng)


class ReservoirBuffer:
    """Uniform fixed-size sample over an unbounded stream.

    Once full, item n replaces a uniformly random slot with probability
    capacity/n, so every stream position is retained with equal probability.
    """

    def __init__(self, capacity: int, seed: int = 0):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._items: list = []
        self.insert_count = 0
        self._rng = np.random.default_rng(seed)

    def insert(self, item: Any) -> None:
        self.insert_count += 1
        if len(self._items) < self.capacity:
            self._items.append(item)
            return
        j = int(self._rng.random() * self.insert_count)
        if j < self.capacity:
            self._items[j] = item

    def extend(self, items: Sequence[Any]) -> None:
        """Bulk insert; draws match repeated insert() on the same RNG state."""
        items = list(items)
        fill = min(max(0, self.capacity - len(self._items)), len(items))
        for i in range(fill):
            self.insert_count += 1
            self._items.append(items[i])
        rest = items[fill:]
        if not rest:
            return
        counts = self.insert_count + 1 + np.arange(len(rest), dtype=np.float64)
        slots = (self._rng.random(len(rest)) * counts).astype(np.int64)
        self.insert_count += len(rest)
        buf = self._items
        cap = self.capacity
        for item, j in zip(rest, slots):
            if j < cap:
                buf[j] = item

    def __len__(self) -> int:
        return len(self._items)

    @property
    def raw(self) -> list:
        return self._items

    def items(self) -> list:
        return list(self._items)

    def sample(self, k: int, rng: np.random.Generator) -> list:
        return sample_batch(self, k, rng)


def sample_batch(buffer, k: int, rng: np.random.Generator) -> list:
    """k items drawn uniformly with replacement from the buffer's contents."""
    n = len(buffer)
    if n == 0:
        raise ValueError("cannot sample from an empty buffer")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return []
    raw = buffer.raw
    idx = rng.integers(0, n, size=k)
    return [raw[i] for i in idx]
