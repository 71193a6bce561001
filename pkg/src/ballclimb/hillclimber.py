"""Multi-objective Hamming-ball hill climber."""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .landscape import VectorMkLandscape
from .moves import MoveIndex
from .scores import Bucket, ScoreStore

# receives (objective vector, solution bits); must copy the bits if it keeps them
ReportSink = Callable[[tuple[int, ...], bytearray], object]


@dataclass
class ClimbResult:
    solution: bytes
    objectives: tuple[int, ...]
    moves: int = 0
    strong_moves: int = 0
    weak_moves: int = 0
    reports: int = 0
    completed: bool = True
    init_seconds: float = 0.0
    loop_seconds: float = 0.0
    pairs_visited: int = 0
    weights: tuple[float, ...] = ()
    trace: list[tuple[bytes, tuple[int, ...]]] | None = field(default=None, repr=False)

    @property
    def mean_move_us(self) -> float:
        return 1e6 * self.loop_seconds / self.moves if self.moves else float("nan")


def select_strong(store: ScoreStore, rng: random.Random) -> int:
    return store.sample(Bucket.STRONG, rng)


def select_w_improving(store: ScoreStore, rng: random.Random) -> int:
    return store.sample(Bucket.W_IMPROVING, rng)


def climb(
    f: VectorMkLandscape,
    index: MoveIndex,
    x0: Sequence[int],
    w: Sequence[float],
    sink: ReportSink | None = None,
    rng: random.Random | None = None,
    deadline: float | None = None,
    trace: bool = False,
    store: ScoreStore | None = None,
    reset: bool = True,
) -> ClimbResult:
    """Climb from ``x0`` until no stored move has a positive w-score.

    Strong improving moves are taken first; otherwise a w-improving move is
    taken after reporting the current solution. The final solution is
    always reported. ``deadline`` is a ``time.perf_counter()`` value checked
    between moves; a climb cut short returns ``completed=False``.

    Passing ``store`` reuses its buffers; its solution and weights are reset
    to ``x0``/``w`` unless ``reset`` is false (the store is already there).
    """
    if rng is None:
        rng = random.Random()
    t0 = time.perf_counter()
    if store is None:
        store = ScoreStore(f, index, x0, w)
    elif reset:
        store.x[:] = bytes(1 if b else 0 for b in x0)
        store.set_weights(w, rebucket=False)
        store.recompute()
    t1 = time.perf_counter()

    emit = sink if sink is not None else (lambda objv, bits: None)
    log = [] if trace else None
    if log is not None:
        log.append((bytes(store.x), tuple(store.fx)))

    members = store._members
    strong_levels = members[Bucket.STRONG]
    weak_levels = members[Bucket.W_IMPROVING]
    moves = strong = reports = visited = 0
    completed = True
    while True:
        if any(strong_levels):
            t = store.sample(Bucket.STRONG, rng)
            strong += 1
        elif any(weak_levels):
            t = store.sample(Bucket.W_IMPROVING, rng)
            emit(tuple(store.fx), store.x)
            reports += 1
        else:
            break
        visited += store.apply(t)
        moves += 1
        if log is not None:
            log.append((bytes(store.x), tuple(store.fx)))
        if deadline is not None and time.perf_counter() >= deadline:
            completed = not store.has_w_improving()
            break
    emit(tuple(store.fx), store.x)
    reports += 1
    t2 = time.perf_counter()
    return ClimbResult(
        solution=bytes(store.x),
        objectives=tuple(store.fx),
        moves=moves,
        strong_moves=strong,
        weak_moves=moves - strong,
        reports=reports,
        completed=completed,
        init_seconds=t1 - t0,
        loop_seconds=t2 - t1,
        pairs_visited=visited,
        weights=store.weights,
        trace=log,
    )
