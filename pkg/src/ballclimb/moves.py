"""Move basis: connected variable sets of bounded size and their incidence."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .landscape import CoOccurrenceGraph, VectorMkLandscape


def iter_connected_subsets(G: CoOccurrenceGraph, r: int) -> Iterator[tuple[int, ...]]:
    """Yield every vertex set of size 1..r inducing a connected subgraph, once each.

    Each set is grown from its smallest vertex (the root). A candidate is
    only added to the extension set when it exceeds the root and is not
    already adjacent to the current set, so no set is reachable twice.
    """
    if r < 1:
        raise ValueError(f"radius must be >= 1, got {r}")
    adj = G.adjacency

    def extend(current: list[int], in_closed: set[int], ext: list[int], root: int) -> Iterator[tuple[int, ...]]:
        yield tuple(sorted(current))
        if len(current) == r:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_ext = list(ext)
            added = []
            for u in adj[w]:
                if u > root and u not in in_closed:
                    new_ext.append(u)
                    added.append(u)
            in_closed.update(added)
            current.append(w)
            yield from extend(current, in_closed, new_ext, root)
            current.pop()
            in_closed.difference_update(added)

    for root in range(G.n):
        # in_closed: the current set plus every vertex adjacent to it
        closed = {root, *adj[root]}
        yield from extend([root], closed, [u for u in reversed(adj[root]) if u > root], root)


@dataclass(eq=False)
class MoveIndex:
    """The move basis plus the incidence lists the score store needs.

    ``moves[id]`` is a sorted tuple of variables. For every subfunction
    ``s``, ``sub_moves[s]`` / ``sub_local[s]`` list the moves touching its
    mask and the table-index bits each move flips. ``move_subs`` /
    ``move_local`` hold the same pairs grouped by move.
    """

    r: int
    moves: list[tuple[int, ...]]
    var_moves: list[list[int]]
    sub_moves: list[list[int]]
    sub_local: list[list[int]]
    move_subs: list[list[int]]
    move_local: list[list[int]]
    pair_move: np.ndarray = field(repr=False)
    pair_sub: np.ndarray = field(repr=False)
    pair_local: np.ndarray = field(repr=False)
    _ids: dict[tuple[int, ...], int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def sizes(self) -> list[int]:
        return [len(m) for m in self.moves]

    def id_of(self, vars: Iterable[int]) -> int:
        if self._ids is None:
            self._ids = {m: i for i, m in enumerate(self.moves)}
        key = tuple(sorted(vars))
        try:
            return self._ids[key]
        except KeyError:
            raise KeyError(f"{key} is not in the move basis") from None

    def __contains__(self, vars: Iterable[int]) -> bool:
        try:
            self.id_of(vars)
        except KeyError:
            return False
        return True


def enumerate_moves(G: CoOccurrenceGraph, r: int, f: VectorMkLandscape | None = None) -> MoveIndex:
    """Build the move basis of radius ``r`` over ``G``.

    Moves are ordered by size, then lexicographically. Subfunction incidence
    needs the landscape; when ``f`` is omitted those lists are empty.
    """
    moves = sorted(iter_connected_subsets(G, r), key=lambda m: (len(m), m))
    num = len(moves)
    var_moves: list[list[int]] = [[] for _ in range(G.n)]
    for mid, mv in enumerate(moves):
        for var in mv:
            var_moves[var].append(mid)

    if f is None:
        empty = np.zeros(0, dtype=np.int64)
        return MoveIndex(r, moves, var_moves, [], [], [[] for _ in moves], [[] for _ in moves], empty, empty, empty)
    if f.n != G.n:
        raise ValueError(f"graph has {G.n} vertices but landscape has {f.n} variables")

    # (move, var) pairs
    sizes = np.fromiter((len(m) for m in moves), dtype=np.int64, count=num)
    mv_move = np.repeat(np.arange(num, dtype=np.int64), sizes)
    mv_var = np.fromiter((v for m in moves for v in m), dtype=np.int64, count=int(sizes.sum()))

    # expand to (move, var, sub) triples through the variable -> subfunction lists
    vs_count = np.fromiter((len(s) for s in f.var_subs), dtype=np.int64, count=f.n)
    vs_ptr = np.concatenate([[0], np.cumsum(vs_count)])
    vs_ids = np.fromiter((s for subs in f.var_subs for s in subs), dtype=np.int64, count=int(vs_ptr[-1]))
    reps = vs_count[mv_var]
    t_move = np.repeat(mv_move, reps)
    t_var = np.repeat(mv_var, reps)
    starts = np.repeat(vs_ptr[mv_var], reps)
    within = np.arange(len(t_move)) - np.repeat(np.cumsum(reps) - reps, reps)
    t_sub = vs_ids[starts + within]

    masks, weights, _, _ = f.packed()
    hit = masks[t_sub] == t_var[:, None]
    # padding slots carry weight 0, so a stray match on variable 0 adds nothing
    t_bit = (hit * weights[t_sub]).sum(axis=1)

    num_subs = f.num_subfunctions
    key = t_move * num_subs + t_sub
    ukey, inverse = np.unique(key, return_inverse=True)
    local = np.zeros(len(ukey), dtype=np.int64)
    np.add.at(local, inverse, t_bit)
    pair_move = ukey // num_subs
    pair_sub = ukey % num_subs

    move_subs, move_local = _split(pair_move, pair_sub, local, num)
    order = np.lexsort((pair_move, pair_sub))
    sub_moves, sub_local = _split(pair_sub[order], pair_move[order], local[order], num_subs)

    return MoveIndex(
        r, moves, var_moves, sub_moves, sub_local, move_subs, move_local, pair_move, pair_sub, local
    )


def _split(group: np.ndarray, a: np.ndarray, b: np.ndarray, num_groups: int) -> tuple[list[list[int]], list[list[int]]]:
    """Split ``a``/``b`` (already sorted by ``group``) into per-group Python lists."""
    bounds = np.searchsorted(group, np.arange(num_groups + 1))
    a_list = a.tolist()
    b_list = b.tolist()
    bl = bounds.tolist()
    return (
        [a_list[bl[g] : bl[g + 1]] for g in range(num_groups)],
        [b_list[bl[g] : bl[g + 1]] for g in range(num_groups)],
    )


def build_move_index(f: VectorMkLandscape, r: int, G: CoOccurrenceGraph | None = None) -> MoveIndex:
    from .landscape import build_cooccurrence_graph

    if G is None:
        G = build_cooccurrence_graph(f)
    return enumerate_moves(G, r, f)


def decompose(v: Sequence[int], G: CoOccurrenceGraph) -> list[tuple[int, ...]]:
    """Connected components of ``G[v]``, each sorted, ordered by smallest vertex."""
    remaining = set(v)
    if len(remaining) != len(v):
        raise ValueError(f"move {tuple(v)} repeats a variable")
    parts = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = [start]
        stack = [start]
        while stack:
            a = stack.pop()
            for b in G.adjacency[a]:
                if b in remaining:
                    remaining.discard(b)
                    comp.append(b)
                    stack.append(b)
        parts.append(tuple(sorted(comp)))
    return parts


def adjacent_move_count(N: int, K: int, r: int) -> int:
    """Closed-form basis size for adjacent MNK instances with r <= N/K."""
    if K == 1:
        return N * r
    return N * (K**r - 1) // (K - 1)
