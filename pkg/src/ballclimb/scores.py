"""Vector score store with constant-time incremental updates and move buckets."""

from __future__ import annotations

import random
from collections.abc import Sequence
from enum import IntEnum

import numpy as np

from .landscape import VectorMkLandscape
from .moves import MoveIndex

# w is snapped to multiples of 2^-WEIGHT_BITS so w-scores are exact integers
WEIGHT_BITS = 30


class Bucket(IntEnum):
    STRONG = 0
    W_IMPROVING = 1
    REST = 2


def integer_weights(w: Sequence[float]) -> list[int]:
    """Snap a strictly positive weight vector to positive integers."""
    if len(w) == 0:
        raise ValueError("weight vector is empty")
    out = []
    for wi in w:
        wi = float(wi)
        if not wi > 0 or wi != wi or wi == float("inf"):
            raise ValueError(f"weights must be finite and strictly positive, got {tuple(w)}")
        out.append(max(1, round(wi * (1 << WEIGHT_BITS))))
    return out


def classify_vector(s: Sequence[int], wint: Sequence[int]) -> Bucket:
    if min(s) >= 0 and max(s) > 0:
        return Bucket.STRONG
    if sum(a * b for a, b in zip(s, wint)) > 0:
        return Bucket.W_IMPROVING
    return Bucket.REST


class ScoreStore:
    """Scores ``S_v(x)`` of every move in the basis, for the current solution.

    Scores live in a flat list (``scores[v * d + i]``). Each bucket keeps one
    list per move size so the smallest improving moves are found in O(r);
    ``_pos`` holds each move's slot for O(1) transfers between buckets.
    """

    def __init__(
        self,
        f: VectorMkLandscape,
        index: MoveIndex,
        x: Sequence[int],
        w: Sequence[float] | None = None,
    ):
        if len(x) != f.n:
            raise ValueError(f"solution has length {len(x)}, expected {f.n}")
        self.f = f
        self.index = index
        self.d = f.d
        self.x = bytearray(1 if b else 0 for b in x)
        self._tables = [sf.table for sf in f.subfunctions]
        self._objective = [sf.objective for sf in f.subfunctions]
        self._sizes = index.sizes
        self.set_weights(w if w is not None else [1.0] * f.d, rebucket=False)
        self.recompute()

    # -- construction ------------------------------------------------------

    def set_weights(self, w: Sequence[float], rebucket: bool = True) -> None:
        if len(w) != self.d:
            raise ValueError(f"weight vector has {len(w)} components, expected {self.d}")
        self._wint = integer_weights(w)
        self.weights = tuple(wi / (1 << WEIGHT_BITS) for wi in self._wint)
        if rebucket:
            self.reclassify(self.weights)

    def recompute(self) -> None:
        """Recompute every score from scratch for the current ``x`` (solution-dependent init)."""
        f, index, d = self.f, self.index, self.d
        base = f.sub_indices(self.x)
        _, _, tables, objective_of = f.packed()
        psub = index.pair_sub
        before = tables[psub, base[psub]]
        after = tables[psub, base[psub] ^ index.pair_local]
        flat = np.bincount(
            index.pair_move * d + objective_of[psub],
            weights=(after - before).astype(np.float64),
            minlength=len(index) * d,
        )
        scores = np.rint(flat).astype(np.int64)
        self.scores: list[int] = scores.tolist()
        self._sub_idx: list[int] = base.tolist()
        self.fx = f.evaluate_many(self.x)[0].tolist()
        self._rebuild_buckets(scores.reshape(-1, d))

    def _rebuild_buckets(self, S: np.ndarray) -> None:
        tags = self._vector_tags(S)
        r = self.index.r
        self._tag: list[int] = tags.tolist()
        self._members: list[list[list[int]]] = [[[] for _ in range(r)] for _ in Bucket]
        self._pos: list[int] = [0] * len(self._tag)
        for mid, (tag, size) in enumerate(zip(self._tag, self._sizes)):
            lst = self._members[tag][size - 1]
            self._pos[mid] = len(lst)
            lst.append(mid)

    def _vector_tags(self, S: np.ndarray) -> np.ndarray:
        strong = (S >= 0).all(axis=1) & (S > 0).any(axis=1)
        wsc = _exact_dot(S, self._wint)
        return np.where(strong, Bucket.STRONG, np.where(wsc > 0, Bucket.W_IMPROVING, Bucket.REST))

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._tag)

    def score(self, v: int) -> tuple[int, ...]:
        b = v * self.d
        return tuple(self.scores[b : b + self.d])

    def score_array(self) -> np.ndarray:
        return np.asarray(self.scores, dtype=np.int64).reshape(-1, self.d)

    def w_score(self, v: int) -> float:
        return float(sum(w * s for w, s in zip(self.weights, self.score(v))))

    def exact_w_score(self, v: int) -> int:
        """w-score scaled by 2^WEIGHT_BITS; its sign is exact."""
        return sum(w * s for w, s in zip(self._wint, self.score(v)))

    def classify(self, v: int) -> Bucket:
        return classify_vector(self.score(v), self._wint)

    def bucket_of(self, v: int) -> Bucket:
        return Bucket(self._tag[v])

    def members(self, bucket: Bucket) -> list[int]:
        return [m for lst in self._members[bucket] for m in lst]

    def count(self, bucket: Bucket) -> int:
        return sum(len(lst) for lst in self._members[bucket])

    def has(self, bucket: Bucket) -> bool:
        return any(self._members[bucket])

    def has_w_improving(self) -> bool:
        """True while some stored move has positive w-score (strong moves included)."""
        return self.has(Bucket.STRONG) or self.has(Bucket.W_IMPROVING)

    def sample(self, bucket: Bucket, rng: random.Random) -> int:
        """Uniformly random member among those with the fewest flipped variables."""
        for lst in self._members[bucket]:
            if lst:
                return lst[rng.randrange(len(lst))]
        raise LookupError(f"bucket {bucket.name} is empty")

    def evaluation(self) -> tuple[int, ...]:
        return tuple(self.fx)

    # -- updates -----------------------------------------------------------

    def _retag(self, v: int, tag: int) -> None:
        old = self._tag[v]
        if old == tag:
            return
        size = self._sizes[v] - 1
        lst = self._members[old][size]
        p = self._pos[v]
        last = lst.pop()
        if last != v:
            lst[p] = last
            self._pos[last] = p
        dest = self._members[tag][size]
        self._pos[v] = len(dest)
        dest.append(v)
        self._tag[v] = tag

    def update(self, t: int) -> int:
        """Shift every stored score from ``x`` to ``x xor t``; ``x`` itself is left alone.

        Returns the number of (subfunction, move) pairs visited.
        """
        if not 0 <= t < len(self._tag):
            raise IndexError(f"move id {t} is not in the basis")
        index = self.index
        scores = self.scores
        tables = self._tables
        objective = self._objective
        sub_idx = self._sub_idx
        sub_moves = index.sub_moves
        sub_local = index.sub_local
        d = self.d
        touched = set()
        visited = 0
        for s, tl in zip(index.move_subs[t], index.move_local[t]):
            T = tables[s]
            base = sub_idx[s]
            moved = base ^ tl
            shift = T[base] - T[moved]
            o = objective[s]
            vs = sub_moves[s]
            visited += len(vs)
            for v, vl in zip(vs, sub_local[s]):
                delta = T[moved ^ vl] - T[base ^ vl] + shift
                if delta:
                    scores[v * d + o] += delta
                    touched.add(v)
        wint = self._wint
        for v in touched:
            b = v * d
            sv = scores[b : b + d]
            if min(sv) >= 0 and max(sv) > 0:
                tag = 0
            elif sum(a * w for a, w in zip(sv, wint)) > 0:
                tag = 1
            else:
                tag = 2
            if tag != self._tag[v]:
                self._retag(v, tag)
        return visited

    def flip(self, t: int) -> None:
        """Apply ``x <- x xor t``; must follow ``update(t)``.

        After the update the stored score of ``t`` is ``f(x) - f(x xor t)``,
        so the objective vector moves by its negation.
        """
        b = t * self.d
        fx = self.fx
        for i in range(self.d):
            fx[i] -= self.scores[b + i]
        self._flip_bits(t)

    def _flip_bits(self, t: int) -> None:
        x = self.x
        sub_idx = self._sub_idx
        for s, tl in zip(self.index.move_subs[t], self.index.move_local[t]):
            sub_idx[s] ^= tl
        for var in self.index.moves[t]:
            x[var] ^= 1

    def apply(self, t: int) -> int:
        """Move to ``x xor t``, keeping every score consistent."""
        visited = self.update(t)
        self.flip(t)
        return visited

    def reclassify(self, w_new: Sequence[float]) -> None:
        """Adopt a new weight vector and re-bucket every non-strong move."""
        if len(w_new) != self.d:
            raise ValueError(f"weight vector has {len(w_new)} components, expected {self.d}")
        self._wint = integer_weights(w_new)
        self.weights = tuple(wi / (1 << WEIGHT_BITS) for wi in self._wint)
        tags = self._tag
        candidates = [v for v, tag in enumerate(tags) if tag != Bucket.STRONG]
        if not candidates:
            return
        ids = np.asarray(candidates, dtype=np.int64)
        S = self.score_array()[ids]
        positive = _exact_dot(S, self._wint) > 0
        for v, pos in zip(candidates, positive.tolist()):
            tag = 1 if pos else 2
            if tags[v] != tag:
                self._retag(v, tag)

    def dump(self) -> str:
        """One line per move: variables, score vector and bucket."""
        lines = []
        for mid, mv in enumerate(self.index.moves):
            vars_ = ",".join(map(str, mv))
            sc = " ".join(map(str, self.score(mid)))
            lines.append(f"{vars_}\t{sc}\t{Bucket(self._tag[mid]).name}")
        return "\n".join(lines) + "\n"


def _exact_dot(S: np.ndarray, wint: Sequence[int]) -> np.ndarray:
    """Row-wise ``S @ wint`` without overflow, as Python ints when int64 could wrap."""
    bound = int(np.abs(S).max(initial=0)) * sum(wint)
    if bound < 2**62:
        return S @ np.asarray(wint, dtype=np.int64)
    return np.array([sum(int(a) * b for a, b in zip(row, wint)) for row in S.tolist()], dtype=object)


def compute_scores(
    f: VectorMkLandscape, index: MoveIndex, x: Sequence[int], w: Sequence[float] | None = None
) -> ScoreStore:
    return ScoreStore(f, index, x, w)


def update_scores(store: ScoreStore, t: int) -> int:
    """Update the scores for move ``t``; the caller then flips ``x`` (``store.flip(t)``)."""
    return store.update(t)


def classify(store: ScoreStore, v: int) -> Bucket:
    return store.classify(v)


def reclassify(store: ScoreStore, w_new: Sequence[float]) -> None:
    store.reclassify(w_new)


def w_score(store: ScoreStore, v: int) -> float:
    return store.w_score(v)
