"""Multi-start hill climbing under a wall-clock budget, with result export."""

from __future__ import annotations

import json
import logging
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .archive import NonDominatedArchive, write_front
from .attainment import eas50
from .hillclimber import climb
from .landscape import VectorMkLandscape, build_cooccurrence_graph, generate_adjacent_mnk
from .moves import MoveIndex, enumerate_moves
from .scores import ScoreStore

log = logging.getLogger(__name__)


@dataclass
class RunConfig:
    N: int
    K: int
    d: int = 2
    q: int = 100
    r: int = 1
    seed: int = 0
    time_limit: float = 60.0
    runs: int = 1
    out: str | None = None
    model: str = "adjacent"
    threads: int = 1
    max_climbs: int | None = None

    def validate(self) -> None:
        problems = []
        if self.N <= self.K or self.K < 0:
            problems.append(f"need N > K >= 0 (N={self.N}, K={self.K})")
        if self.d < 1:
            problems.append(f"need d >= 1 (d={self.d})")
        if self.q < 2:
            problems.append(f"need q >= 2 (q={self.q})")
        if self.r < 1:
            problems.append(f"need r >= 1 (r={self.r})")
        if not self.time_limit > 0:
            problems.append(f"need time limit > 0 (time_limit={self.time_limit})")
        if self.runs < 1:
            problems.append(f"need runs >= 1 (runs={self.runs})")
        if self.threads < 1:
            problems.append(f"need threads >= 1 (threads={self.threads})")
        if self.max_climbs is not None and self.max_climbs < 1:
            problems.append(f"need max_climbs >= 1 (max_climbs={self.max_climbs})")
        if self.model not in ("adjacent", "random"):
            problems.append(f"unknown model {self.model!r}")
        if problems:
            raise ValueError("; ".join(problems))

    def run_seed(self, run: int) -> int:
        return self.seed + run


@dataclass
class RunStats:
    run: int
    seed: int
    moves: int = 0
    strong_moves: int = 0
    weak_moves: int = 0
    reports: int = 0
    climbs: int = 0
    completed_climbs: int = 0
    instance_seconds: float = 0.0
    problem_init_seconds: float = 0.0
    solution_init_seconds: float = 0.0
    loop_seconds: float = 0.0
    archive_seconds: float = 0.0
    mean_move_us: float = float("nan")
    median_move_us: float = float("nan")
    num_moves_in_basis: int = 0
    moves_per_climb: list[int] = field(default_factory=list)
    archive_sizes: list[int] = field(default_factory=list)
    final_solution: str = ""
    final_objectives: tuple[int, ...] = ()
    final_weights: tuple[float, ...] = ()
    final_completed: bool = False

    # never written to front/metadata files; they vary between reruns
    TIMING_KEYS = (
        "instance_seconds",
        "problem_init_seconds",
        "solution_init_seconds",
        "loop_seconds",
        "archive_seconds",
        "mean_move_us",
        "median_move_us",
    )

    def deterministic(self) -> dict:
        """Stats that must repeat exactly for a fixed seed and climb budget."""
        data = asdict(self)
        for key in self.TIMING_KEYS:
            data.pop(key)
        return data


def sample_weight(d: int, rng: np.random.Generator) -> tuple[float, ...]:
    """Uniform draw from the open positive unit simplex."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if d == 1:
        return (1.0,)
    while True:
        w = rng.dirichlet(np.ones(d))
        if (w > 0).all():
            return tuple(float(a) for a in w)


@dataclass
class RunResult:
    archive: NonDominatedArchive
    stats: RunStats


def prepare(config: RunConfig, run: int = 0) -> tuple[VectorMkLandscape, MoveIndex, RunStats]:
    """Generate the run's instance and build its move index (problem-dependent init)."""
    seed = config.run_seed(run)
    stats = RunStats(run=run, seed=seed)
    t0 = time.perf_counter()
    f = generate_adjacent_mnk(config.N, config.K, config.d, config.q, seed, model=config.model)
    t1 = time.perf_counter()
    index = enumerate_moves(build_cooccurrence_graph(f), config.r, f)
    t2 = time.perf_counter()
    stats.instance_seconds = t1 - t0
    stats.problem_init_seconds = t2 - t1
    stats.num_moves_in_basis = len(index)
    return f, index, stats


def multistart(
    config: RunConfig,
    run: int = 0,
    f: VectorMkLandscape | None = None,
    index: MoveIndex | None = None,
    sink=None,
) -> RunResult:
    """Restart the climber from random solutions and weights until the budget is spent.

    The budget is ``config.time_limit`` seconds of loop time, measured after
    the move index is built, or ``config.max_climbs`` climbs, whichever comes
    first. At least one climb always runs. ``sink`` (if given) sees every
    report in addition to the archive.
    """
    config.validate()
    if f is None or index is None:
        f, index, stats = prepare(config, run)
    else:
        stats = RunStats(run=run, seed=config.run_seed(run), num_moves_in_basis=len(index))
    rng = np.random.default_rng([config.run_seed(run), 1])
    picker = random.Random(int(rng.integers(2**63)))
    archive = NonDominatedArchive(f.d)
    archive_time = 0.0

    def report(objv, bits):
        nonlocal archive_time
        a = time.perf_counter()
        archive.insert(objv, bits)
        archive_time += time.perf_counter() - a
        if sink is not None:
            sink(objv, bits)

    store = None
    per_climb_us = []
    start = time.perf_counter()
    deadline = start + config.time_limit
    while True:
        if stats.climbs and time.perf_counter() >= deadline:
            break
        if config.max_climbs is not None and stats.climbs >= config.max_climbs:
            break
        x0 = rng.integers(0, 2, size=f.n, dtype=np.uint8)
        w = sample_weight(f.d, rng)
        fresh = store is None
        if fresh:
            a = time.perf_counter()
            store = ScoreStore(f, index, x0, w)
            stats.solution_init_seconds += time.perf_counter() - a
        res = climb(
            f, index, x0, w, sink=report, rng=picker, deadline=deadline, store=store, reset=not fresh
        )
        stats.climbs += 1
        stats.completed_climbs += res.completed
        stats.moves += res.moves
        stats.strong_moves += res.strong_moves
        stats.weak_moves += res.weak_moves
        stats.reports += res.reports
        stats.solution_init_seconds += res.init_seconds
        stats.moves_per_climb.append(res.moves)
        stats.archive_sizes.append(len(archive))
        if res.moves:
            per_climb_us.append(1e6 * (res.init_seconds + res.loop_seconds) / res.moves)
        stats.final_solution = "".join("1" if b else "0" for b in res.solution)
        stats.final_objectives = res.objectives
        stats.final_weights = res.weights
        stats.final_completed = res.completed
    stats.loop_seconds = time.perf_counter() - start
    stats.archive_seconds = archive_time
    if stats.moves:
        stats.mean_move_us = 1e6 * stats.loop_seconds / stats.moves
    if per_climb_us:
        stats.median_move_us = statistics.median(per_climb_us)
    return RunResult(archive, stats)


def _run_one(config: RunConfig, run: int) -> RunResult:
    return multistart(config, run)


def run_batch(config: RunConfig) -> list[RunResult]:
    """All ``config.runs`` independent runs, in parallel processes when ``threads > 1``."""
    config.validate()
    if config.threads > 1 and config.runs > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            futures = [pool.submit(_run_one, config, j) for j in range(config.runs)]
            results = [fut.result() for fut in futures]
    else:
        results = [multistart(config, j) for j in range(config.runs)]
    if config.out is not None:
        export_batch(results, config, config.out)
    return results


def merge_archives(results: list[RunResult], d: int) -> NonDominatedArchive:
    merged = NonDominatedArchive(d)
    for res in results:
        merged.merge(res.archive)
    return merged


def format_stats(stats: RunStats) -> str:
    lines = []
    for key, value in asdict(stats).items():
        if isinstance(value, (list, tuple)):
            value = ",".join(map(str, value))
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def parse_stats(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            out[key] = value
    return out


def metadata(config: RunConfig, run: int) -> dict:
    data = asdict(config)
    data.update(run=run, run_seed=config.run_seed(run), instance_seed=config.run_seed(run))
    return data


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def export_results(archive: NonDominatedArchive, stats: RunStats, config: RunConfig, out: str | Path) -> Path:
    """Write front.tsv, solutions.txt, stats.txt and metadata.json into ``out``."""
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    write_front(archive.objectives(), out / "front.tsv")
    rows = sorted(archive.entries(), key=lambda e: e[0])
    sol_lines = []
    for objv, bits in rows:
        text = "".join("1" if b else "0" for b in bits) if bits is not None else "-"
        sol_lines.append("\t".join(map(str, objv)) + "\t" + text)
    _write(out / "solutions.txt", "".join(line + "\n" for line in sol_lines))
    _write(out / "stats.txt", format_stats(stats))
    _write(out / "metadata.json", json.dumps(metadata(config, stats.run), indent=2, sort_keys=True) + "\n")
    return out


def export_batch(results: list[RunResult], config: RunConfig, out: str | Path) -> list[Path]:
    out = Path(out)
    dirs = [export_results(res.archive, res.stats, config, out / f"run_{res.stats.run:03d}") for res in results]
    if config.d == 2:
        surface = eas50([res.archive.objectives() for res in results])
        write_front(surface, out / "eas50.tsv")
    return dirs
