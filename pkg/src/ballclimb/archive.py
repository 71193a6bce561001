"""External archive of mutually non-dominated solutions (all objectives maximized)."""

from __future__ import annotations

import threading
from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Sequence
from enum import Enum
from pathlib import Path

import numpy as np


class InsertResult(Enum):
    ADDED = "added"
    DOMINATED = "dominated"
    DUPLICATE = "duplicate"


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a >= b`` everywhere and ``a > b`` somewhere."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    strict = False
    for ai, bi in zip(a, b):
        if ai < bi:
            return False
        if ai > bi:
            strict = True
    return strict


class NonDominatedArchive:
    """Archive of mutually non-dominated objective vectors and their solutions.

    For d=2 the entries are kept as a staircase sorted by the first
    objective, so inserts cost O(log n) comparisons plus a list splice.
    Other dimensions use a linear scan vectorized over an int64 buffer.
    Duplicates of an existing objective vector keep the first-seen solution.
    ``insert`` is guarded by a lock so one archive can be shared by threads.
    """

    def __init__(self, d: int):
        if d < 1:
            raise ValueError(f"need d >= 1, got {d}")
        self.d = d
        self._values = np.empty((16, d), dtype=np.int64)
        self._size = 0
        self._solutions: list[bytes | None] = []
        # d=2 staircase: first objective ascending, second strictly descending
        self._xs: list[int] = []
        self._neg_ys: list[int] = []
        self.inserted = 0
        self.rejected = 0
        self.removed = 0
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._xs) if self.d == 2 else self._size

    def __call__(self, objv: Sequence[int], bits: Sequence[int] | bytes | None = None) -> InsertResult:
        return self.insert(objv, bits)

    def insert(self, objv: Sequence[int], bits: Sequence[int] | bytes | None = None) -> InsertResult:
        if len(objv) != self.d:
            raise ValueError(f"objective vector has {len(objv)} components, expected {self.d}")
        with self._lock:
            self.inserted += 1
            if self.d == 2:
                result = self._insert2(int(objv[0]), int(objv[1]), bits)
            else:
                result = self._insert_scan(objv, bits)
            if result is not InsertResult.ADDED:
                self.rejected += 1
            return result

    def _insert2(self, a: int, b: int, bits) -> InsertResult:
        xs, neg_ys = self._xs, self._neg_ys
        i = bisect_left(xs, a)
        # among entries with first objective >= a, entry i has the largest second one
        if i < len(xs) and -neg_ys[i] >= b:
            return InsertResult.DUPLICATE if xs[i] == a and -neg_ys[i] == b else InsertResult.DOMINATED
        hi = bisect_right(xs, a)
        lo = bisect_left(neg_ys, -b, 0, hi)
        self.removed += hi - lo
        xs[lo:hi] = [a]
        neg_ys[lo:hi] = [-b]
        self._solutions[lo:hi] = [None if bits is None else bytes(bits)]
        return InsertResult.ADDED

    def _insert_scan(self, objv: Sequence[int], bits) -> InsertResult:
        v = np.asarray(objv, dtype=np.int64)
        cur = self._values[: self._size]
        ge = (cur >= v).all(axis=1)
        if ge.any():
            eq = ge & (cur == v).all(axis=1)
            return InsertResult.DUPLICATE if eq.any() else InsertResult.DOMINATED
        keep = ~((v >= cur).all(axis=1))
        if not keep.all():
            kept = int(keep.sum())
            self.removed += self._size - kept
            self._values[:kept] = cur[keep]
            self._solutions = [s for s, k in zip(self._solutions, keep.tolist()) if k]
            self._size = kept
        if self._size == len(self._values):
            grown = np.empty((2 * len(self._values), self.d), dtype=np.int64)
            grown[: self._size] = self._values[: self._size]
            self._values = grown
        self._values[self._size] = v
        self._solutions.append(None if bits is None else bytes(bits))
        self._size += 1
        return InsertResult.ADDED

    def objectives(self) -> list[tuple[int, ...]]:
        if self.d == 2:
            return [(a, -nb) for a, nb in zip(self._xs, self._neg_ys)]
        return [tuple(row) for row in self._values[: self._size].tolist()]

    def entries(self) -> list[tuple[tuple[int, ...], bytes | None]]:
        return list(zip(self.objectives(), self._solutions))

    def front(self) -> list[tuple[int, ...]]:
        return sorted(self.objectives())

    def merge(self, other: NonDominatedArchive) -> None:
        for objv, bits in other.entries():
            self.insert(objv, bits)


def non_dominated(points: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
    """Distinct points not dominated by any other point (quadratic reference filter)."""
    pts = {tuple(p) for p in points}
    return {p for p in pts if not any(dominates(q, p) for q in pts)}


def format_front(points: Iterable[Sequence[int]]) -> str:
    return "".join("\t".join(map(str, p)) + "\n" for p in sorted(tuple(p) for p in points))


def write_front(points: Iterable[Sequence[int]], path: str | Path) -> None:
    try:
        Path(path).write_text(format_front(points))
    except OSError as exc:
        raise OSError(f"cannot write front to {path}: {exc}") from exc


def read_front(path: str | Path) -> list[tuple[int, ...]]:
    points = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            points.append(tuple(int(tok) for tok in line.split("\t")))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected tab-separated integers, got {line!r}") from None
    dims = {len(p) for p in points}
    if len(dims) > 1:
        raise ValueError(f"{path}: rows have differing dimensions {sorted(dims)}")
    return points
