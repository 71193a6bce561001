"""Empirical attainment surfaces for bi-objective maximization fronts."""

from __future__ import annotations

import math
from bisect import bisect_left
from collections.abc import Sequence

from .archive import non_dominated

Point = tuple[int, int]


def _suffix_best(front: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    """Sorted first coordinates and, per position, the best second coordinate at or beyond it."""
    pts = sorted((int(p[0]), int(p[1])) for p in front)
    xs = [p[0] for p in pts]
    best = [0] * len(pts)
    running = -math.inf
    for i in range(len(pts) - 1, -1, -1):
        running = max(running, pts[i][1])
        best[i] = running
    return xs, best


def attainment_surface(fronts: Sequence[Sequence[Sequence[int]]], level: float = 0.5) -> list[Point]:
    """Maximal points attained by at least ``ceil(level * runs)`` of the fronts.

    A run attains ``z`` when some point of its front is ``>= z`` in both
    objectives. For each candidate first coordinate ``a`` the best attained
    second coordinate is the h-th largest per-run maximum over points with
    first coordinate ``>= a``.
    """
    if not fronts:
        raise ValueError("need at least one front")
    for front in fronts:
        for p in front:
            if len(p) != 2:
                raise ValueError(f"attainment surfaces need d=2, got a point of dimension {len(p)}")
    if not 0 < level <= 1:
        raise ValueError(f"level must be in (0, 1], got {level}")
    need = max(1, math.ceil(level * len(fronts) - 1e-12))
    tables = [_suffix_best(front) for front in fronts]
    candidates = sorted({int(p[0]) for front in fronts for p in front})
    points = []
    for a in candidates:
        reach = []
        for xs, best in tables:
            i = bisect_left(xs, a)
            if i < len(xs):
                reach.append(best[i])
        if len(reach) >= need:
            reach.sort(reverse=True)
            points.append((a, reach[need - 1]))
    return sorted(non_dominated(points))


def eas50(fronts: Sequence[Sequence[Sequence[int]]], d: int = 2) -> list[Point]:
    if d != 2:
        raise ValueError(f"attainment surfaces are only supported for d=2, got d={d}")
    return attainment_surface(fronts, 0.5)


def weakly_dominated_fraction(better: Sequence[Sequence[int]], worse: Sequence[Sequence[int]]) -> float:
    """Share of ``worse`` points that some ``better`` point weakly dominates."""
    if not worse:
        return 1.0
    hits = sum(1 for z in worse if any(p[0] >= z[0] and p[1] >= z[1] for p in better))
    return hits / len(worse)
