"""Vector Mk Landscapes: representation, evaluation, generation and file I/O.

A landscape has ``d`` objectives. Objective ``i`` is the sum of ``m_i``
subfunctions, each a dense lookup table over at most ``k`` variables. The
table index of an assignment is ``sum(x[mask[j]] << j)``, with the mask
sorted ascending.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import numpy.typing as npt

FORMAT_HEADER = "vector-mk-landscape 1"


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed."""

    def __init__(self, message: str, path: str | Path | None = None, lineno: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.lineno = lineno


@dataclass(frozen=True)
class Subfunction:
    objective: int
    index: int
    mask: tuple[int, ...]
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.mask) != sorted(set(self.mask)):
            raise ValueError(f"mask must be strictly increasing, got {self.mask}")
        if len(self.table) != 1 << len(self.mask):
            raise ValueError(
                f"table length {len(self.table)} != 2^{len(self.mask)} for mask {self.mask}"
            )

    def local_index(self, x: Sequence[int]) -> int:
        """Table position of the projection of ``x`` onto the mask."""
        idx = 0
        for j, var in enumerate(self.mask):
            if x[var]:
                idx |= 1 << j
        return idx

    def __call__(self, x: Sequence[int]) -> int:
        return self.table[self.local_index(x)]


@dataclass(frozen=True, eq=False)
class CoOccurrenceGraph:
    """Variable co-occurrence graph; ``adjacency[j]`` is sorted."""

    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def degree(self, var: int) -> int:
        return len(self.adjacency[var])

    def has_edge(self, a: int, b: int) -> bool:
        nbrs = self.adjacency[a]
        i = bisect_left(nbrs, b)
        return i < len(nbrs) and nbrs[i] == b

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, nbrs in enumerate(self.adjacency) for b in nbrs if a < b]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoOccurrenceGraph) and self.adjacency == other.adjacency


@dataclass(eq=False)
class VectorMkLandscape:
    """A d-objective pseudo-Boolean function built from k-bounded subfunctions.

    Subfunctions are stored objective-major; position in ``subfunctions`` is
    the global subfunction id used by the move index and score store.
    Instances are treated as immutable after construction.
    """

    n: int
    d: int
    k: int
    q: int
    subfunctions: tuple[Subfunction, ...]
    var_subs: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.subfunctions = tuple(self.subfunctions)
        if self.n < 1 or self.d < 1 or self.k < 0 or self.q < 1:
            raise ValueError(f"invalid sizes n={self.n} d={self.d} k={self.k} q={self.q}")
        expected = [0] * self.d
        var_subs: list[list[int]] = [[] for _ in range(self.n)]
        last_objective = 0
        for sid, sf in enumerate(self.subfunctions):
            if not 0 <= sf.objective < self.d:
                raise ValueError(f"subfunction {sid}: objective {sf.objective} outside [0, {self.d})")
            if sf.objective < last_objective:
                raise ValueError("subfunctions must be grouped by objective")
            last_objective = sf.objective
            if sf.index != expected[sf.objective]:
                raise ValueError(
                    f"subfunction {sid}: local index {sf.index}, expected {expected[sf.objective]}"
                )
            expected[sf.objective] += 1
            if len(sf.mask) > self.k:
                raise ValueError(f"subfunction {sid}: mask size {len(sf.mask)} exceeds k={self.k}")
            if sf.mask and (sf.mask[0] < 0 or sf.mask[-1] >= self.n):
                raise ValueError(f"subfunction {sid}: mask {sf.mask} outside [0, {self.n})")
            if min(sf.table) < 0 or max(sf.table) >= self.q:
                raise ValueError(f"subfunction {sid}: table value out of range [0, {self.q})")
            for var in sf.mask:
                var_subs[var].append(sid)
        missing = [j for j, subs in enumerate(var_subs) if not subs]
        if missing:
            raise ValueError(f"variables {missing[:10]} appear in no subfunction")
        self.var_subs = tuple(tuple(s) for s in var_subs)
        self.m = tuple(expected)
        self._offsets = tuple(int(o) for o in np.concatenate([[0], np.cumsum(expected)]))
        self._packed: tuple[np.ndarray, ...] | None = None

    @property
    def c(self) -> int:
        """Largest number of subfunctions any single variable appears in."""
        return max(len(s) for s in self.var_subs)

    @property
    def num_subfunctions(self) -> int:
        return len(self.subfunctions)

    def sub_id(self, i: int, l: int) -> int:
        if not 0 <= i < self.d or not 0 <= l < self.m[i]:
            raise IndexError(f"no subfunction ({i}, {l})")
        return self._offsets[i] + l

    def objective_slice(self, i: int) -> slice:
        return slice(self._offsets[i], self._offsets[i + 1])

    def _check(self, x: Sequence[int]) -> None:
        if len(x) != self.n:
            raise ValueError(f"solution has length {len(x)}, expected {self.n}")

    def evaluate(self, x: Sequence[int]) -> tuple[int, ...]:
        self._check(x)
        totals = [0] * self.d
        for sf in self.subfunctions:
            totals[sf.objective] += sf(x)
        return tuple(totals)

    def evaluate_sub(self, i: int, l: int, x: Sequence[int]) -> int:
        self._check(x)
        return self.subfunctions[self.sub_id(i, l)](x)

    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Padded arrays ``(masks, bit_weights, tables, objective_of)`` for vectorized use.

        Padding mask slots point at variable 0 with bit weight 0, so they never
        contribute to a table index.
        """
        if self._packed is None:
            num = len(self.subfunctions)
            width = max(1, self.k)
            masks = np.zeros((num, width), dtype=np.int64)
            weights = np.zeros((num, width), dtype=np.int64)
            tables = np.zeros((num, 1 << width), dtype=np.int64)
            objective_of = np.empty(num, dtype=np.int64)
            for sid, sf in enumerate(self.subfunctions):
                size = len(sf.mask)
                masks[sid, :size] = sf.mask
                weights[sid, :size] = 1 << np.arange(size)
                tables[sid, : len(sf.table)] = sf.table
                objective_of[sid] = sf.objective
            self._packed = (masks, weights, tables, objective_of)
        return self._packed  # type: ignore[return-value]

    def sub_indices(self, x: Sequence[int] | np.ndarray) -> np.ndarray:
        """Current table index of every subfunction for solution ``x``."""
        self._check(x)
        masks, weights, _, _ = self.packed()
        xa = np.asarray(x, dtype=np.int64)
        return (xa[masks] * weights).sum(axis=1)

    def evaluate_many(self, xs: npt.ArrayLike) -> np.ndarray:
        """Evaluate a batch of solutions (rows), returning a ``(B, d)`` int array."""
        xs = np.atleast_2d(np.asarray(xs, dtype=np.int64))
        if xs.shape[1] != self.n:
            raise ValueError(f"solutions have length {xs.shape[1]}, expected {self.n}")
        masks, weights, tables, objective_of = self.packed()
        idx = (xs[:, masks] * weights).sum(axis=2)
        values = tables[np.arange(len(masks)), idx]
        out = np.zeros((xs.shape[0], self.d), dtype=np.int64)
        for i in range(self.d):
            out[:, i] = values[:, self.objective_slice(i)].sum(axis=1)
        return out

    def structurally_equal(self, other: VectorMkLandscape) -> bool:
        return (self.n, self.d, self.k, self.q, self.subfunctions) == (
            other.n,
            other.d,
            other.k,
            other.q,
            other.subfunctions,
        )

    __eq__ = structurally_equal  # type: ignore[assignment]
    __hash__ = None  # type: ignore[assignment]


def from_tables(
    n: int,
    q: int,
    objectives: Sequence[Iterable[tuple[Sequence[int], Sequence[int]]]],
    k: int | None = None,
) -> VectorMkLandscape:
    """Build a landscape from ``objectives[i] = [(mask, table), ...]``.

    Masks may be given in any order; tables are indexed against the mask
    as written, so an unsorted mask is re-sorted and its table permuted.
    """
    subs = []
    for i, items in enumerate(objectives):
        for l, (mask, table) in enumerate(items):
            mask = list(mask)
            order = sorted(range(len(mask)), key=mask.__getitem__)
            sorted_mask = tuple(mask[j] for j in order)
            permuted = [0] * len(table)
            for idx, value in enumerate(table):
                new_idx = 0
                for new_pos, old_pos in enumerate(order):
                    if idx >> old_pos & 1:
                        new_idx |= 1 << new_pos
                permuted[new_idx] = int(value)
            subs.append(Subfunction(i, l, sorted_mask, tuple(permuted)))
    if k is None:
        k = max((len(s.mask) for s in subs), default=0)
    return VectorMkLandscape(n=n, d=len(objectives), k=k, q=q, subfunctions=tuple(subs))


def generate_adjacent_mnk(
    N: int, K: int, d: int, q: int, seed: int, model: str = "adjacent"
) -> VectorMkLandscape:
    """Random MNKq landscape with ``N`` subfunctions per objective.

    In the adjacent model subfunction ``l`` reads variables ``l..l+K``
    (mod ``N``). The ``"random"`` model reads ``l`` plus ``K`` distinct
    random others; it carries no constant-time guarantee.
    """
    if N <= K or K < 0:
        raise ValueError(f"need N > K >= 0, got N={N} K={K}")
    if d < 1:
        raise ValueError(f"need d >= 1, got d={d}")
    if q < 2:
        raise ValueError(f"need q >= 2, got q={q}")
    if model not in ("adjacent", "random"):
        raise ValueError(f"unknown interaction model {model!r}")
    rng = np.random.default_rng(seed)
    tables = rng.integers(0, q, size=(d, N, 1 << (K + 1)), dtype=np.int64)
    if model == "adjacent":
        vars_of = [[(l + j) % N for j in range(K + 1)] for l in range(N)]
    else:
        vars_of = []
        for l in range(N):
            others = rng.choice(np.delete(np.arange(N), l), size=K, replace=False)
            vars_of.append([l, *others.tolist()])
    objectives = []
    for i in range(d):
        objectives.append([(vars_of[l], tables[i, l].tolist()) for l in range(N)])
    return from_tables(N, q, objectives, k=K + 1)


def build_cooccurrence_graph(f: VectorMkLandscape) -> CoOccurrenceGraph:
    nbrs: list[set[int]] = [set() for _ in range(f.n)]
    for sf in f.subfunctions:
        for a in sf.mask:
            nbrs[a].update(sf.mask)
    for a in range(f.n):
        nbrs[a].discard(a)
    return CoOccurrenceGraph(tuple(tuple(sorted(s)) for s in nbrs))


def save_instance(f: VectorMkLandscape, path: str | Path) -> None:
    """Write ``f`` in the line-oriented text format.

    Layout::

        vector-mk-landscape 1
        n=<n> d=<d> k=<k> q=<q>
        s <objective> <index> | <mask vars...> | <table values...>
    """
    lines = [FORMAT_HEADER, f"n={f.n} d={f.d} k={f.k} q={f.q}"]
    for sf in f.subfunctions:
        mask = " ".join(map(str, sf.mask))
        table = " ".join(map(str, sf.table))
        lines.append(f"s {sf.objective} {sf.index} | {mask} | {table}")
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write instance to {path}: {exc}") from exc


def _ints(text: str, what: str, path: str | Path, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise InstanceFormatError(f"non-integer in {what}: {text.strip()!r}", path, lineno) from None


def load_instance(path: str | Path) -> VectorMkLandscape:
    lines = Path(path).read_text().splitlines()
    body = [(no, ln.strip()) for no, ln in enumerate(lines, 1) if ln.strip() and not ln.lstrip().startswith("#")]
    if not body or body[0][1] != FORMAT_HEADER:
        raise InstanceFormatError(f"missing header {FORMAT_HEADER!r}", path, body[0][0] if body else None)
    if len(body) < 2:
        raise InstanceFormatError("missing size line", path, None)
    lineno, size_line = body[1]
    header: dict[str, int] = {}
    for tok in size_line.split():
        key, sep, value = tok.partition("=")
        if not sep or key not in ("n", "d", "k", "q"):
            raise InstanceFormatError(f"bad size field {tok!r}", path, lineno)
        header[key] = _ints(value, f"field {key}", path, lineno)[0]
    absent = {"n", "d", "k", "q"} - header.keys()
    if absent:
        raise InstanceFormatError(f"size line lacks {sorted(absent)}", path, lineno)

    subs = []
    for lineno, line in body[2:]:
        parts = line.split("|")
        if len(parts) != 3 or not parts[0].startswith("s "):
            raise InstanceFormatError("expected 's <obj> <idx> | <mask> | <table>'", path, lineno)
        ids = _ints(parts[0][2:], "subfunction id", path, lineno)
        if len(ids) != 2:
            raise InstanceFormatError("subfunction id needs objective and index", path, lineno)
        mask = _ints(parts[1], "mask", path, lineno)
        table = _ints(parts[2], "table", path, lineno)
        if len(table) != 1 << len(mask):
            raise InstanceFormatError(
                f"table has {len(table)} entries, mask of size {len(mask)} needs {1 << len(mask)}",
                path,
                lineno,
            )
        bad = [v for v in table if not 0 <= v < header["q"]]
        if bad:
            raise ValueError(f"{path}:{lineno}: table value {bad[0]} out of range [0, {header['q']})")
        try:
            subs.append(Subfunction(ids[0], ids[1], tuple(mask), tuple(table)))
        except ValueError as exc:
            raise InstanceFormatError(str(exc), path, lineno) from None
    return VectorMkLandscape(
        n=header["n"], d=header["d"], k=header["k"], q=header["q"], subfunctions=tuple(subs)
    )
