"""Exhaustive reference implementations for tests.

Nothing here calls into the score store, move enumeration or the
landscape's own evaluators: objective values are recomputed straight from
the subfunction tables so a bug on the production side cannot cancel out.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .landscape import CoOccurrenceGraph, VectorMkLandscape

MAX_BALL_N = 24
MAX_ENUM_N = 20


def _evaluate(f: VectorMkLandscape, x: Sequence[int]) -> tuple[int, ...]:
    totals = [0] * f.d
    for sf in f.subfunctions:
        pos = 0
        for bit, var in enumerate(sf.mask):
            pos += (1 if x[var] else 0) * 2**bit
        totals[sf.objective] += sf.table[pos]
    return tuple(totals)


def _flipped(x: Sequence[int], v: Sequence[int]) -> list[int]:
    y = [1 if b else 0 for b in x]
    for var in v:
        y[var] = 1 - y[var]
    return y


def _check_n(n: int, limit: int) -> None:
    if n > limit:
        raise ValueError(f"exhaustive oracle refuses n={n} (limit {limit})")


@dataclass
class BallScan:
    center: tuple[int, ...]
    radius: int
    deltas: dict[tuple[int, ...], tuple[int, ...]]


def ball_scan(f: VectorMkLandscape, x: Sequence[int], r: int) -> BallScan:
    """Objective delta of every move flipping 1..r variables."""
    _check_n(f.n, MAX_BALL_N)
    fx = _evaluate(f, x)
    deltas = {}
    for size in range(1, r + 1):
        for v in combinations(range(f.n), size):
            fy = _evaluate(f, _flipped(x, v))
            deltas[v] = tuple(a - b for a, b in zip(fy, fx))
    return BallScan(tuple(int(b) for b in x), r, deltas)


def brute_scores(f: VectorMkLandscape, x: Sequence[int], r: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    return ball_scan(f, x, r).deltas


def _strictly_better(delta: Sequence[int]) -> bool:
    return all(s >= 0 for s in delta) and any(s > 0 for s in delta)


def brute_local_optimum(f: VectorMkLandscape, x: Sequence[int], r: int) -> bool:
    """True iff no solution within Hamming distance r dominates ``x``."""
    return not any(_strictly_better(s) for s in brute_scores(f, x, r).values())


def brute_w_improvable(f: VectorMkLandscape, x: Sequence[int], r: int, w: Sequence[float]) -> bool:
    """True iff some ball member ``y`` has ``w . (f(y) - f(x)) > 0``.

    ``w`` is used as given; pass integer weights for an exact answer.
    """
    return any(sum(wi * si for wi, si in zip(w, s)) > 0 for s in brute_scores(f, x, r).values())


def all_objectives(f: VectorMkLandscape) -> np.ndarray:
    """Objective vectors of all 2^n solutions; row ``j`` is the solution with bits of ``j``."""
    _check_n(f.n, MAX_ENUM_N)
    codes = np.arange(1 << f.n, dtype=np.int64)
    out = np.zeros((len(codes), f.d), dtype=np.int64)
    for sf in f.subfunctions:
        pos = np.zeros(len(codes), dtype=np.int64)
        for bit, var in enumerate(sf.mask):
            pos += ((codes >> var) & 1) * 2**bit
        out[:, sf.objective] += np.asarray(sf.table, dtype=np.int64)[pos]
    return out


def brute_pareto(f: VectorMkLandscape) -> set[tuple[int, ...]]:
    """Exact Pareto front by enumerating the whole search space."""
    # descending lexicographic order: a dominator always precedes what it dominates
    values = np.unique(all_objectives(f), axis=0)[::-1]
    kept = np.empty((0, f.d), dtype=np.int64)
    for row in values:
        if not (kept >= row).all(axis=1).any():
            kept = np.vstack([kept, row])
    return {tuple(int(a) for a in row) for row in kept}


def _connected(subset: Sequence[int], G: CoOccurrenceGraph) -> bool:
    members = set(subset)
    seen = {subset[0]}
    frontier = [subset[0]]
    while frontier:
        a = frontier.pop()
        for b in members:
            if b not in seen and G.has_edge(a, b):
                seen.add(b)
                frontier.append(b)
    return len(seen) == len(members)


def brute_connected_subsets(G: CoOccurrenceGraph, r: int) -> set[tuple[int, ...]]:
    _check_n(G.n, MAX_ENUM_N)
    return {
        subset
        for size in range(1, r + 1)
        for subset in combinations(range(G.n), size)
        if _connected(subset, G)
    }


def brute_components(v: Sequence[int], G: CoOccurrenceGraph) -> list[tuple[int, ...]]:
    """Connected components of ``G[v]`` via repeated pairwise merging."""
    groups = [{a} for a in v]
    merged = True
    while merged:
        merged = False
        for i, j in combinations(range(len(groups)), 2):
            if any(G.has_edge(a, b) for a in groups[i] for b in groups[j]):
                groups[i] |= groups.pop(j)
                merged = True
                break
    return sorted(tuple(sorted(g)) for g in groups)
