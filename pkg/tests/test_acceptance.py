"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import random
import statistics
import time

import numpy as np
import pytest

from ballclimb import (
    attainment_surface,
    build_cooccurrence_graph,
    climb,
    compute_scores,
    enumerate_moves,
    generate_adjacent_mnk,
)
from ballclimb.archive import non_dominated
from ballclimb.attainment import weakly_dominated_fraction
from ballclimb.harness import RunConfig, multistart, prepare
from ballclimb.moves import adjacent_move_count
from ballclimb.oracle import brute_connected_subsets, brute_local_optimum, brute_pareto, brute_scores
from ballclimb.scores import integer_weights


@pytest.fixture
def verdict(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail

    return emit


def scratch_scores(f, index, x):
    """f(x xor v) - f(x) for every basis move, by full re-evaluation."""
    x = np.asarray(x, dtype=np.int64)
    flipped = np.repeat(x[None, :], len(index), axis=0)
    for mid, mv in enumerate(index.moves):
        flipped[mid, list(mv)] ^= 1
    return f.evaluate_many(flipped) - f.evaluate_many(x)


def test_c1_incremental_update_exactness(verdict):
    rnd = random.Random(2024)
    combos = [(N, K, d, r) for N in (20, 40, 60) for K in (1, 2, 3) for d in (1, 2, 3) for r in (1, 2, 3)]
    chosen = rnd.sample(combos, 20)
    start = time.perf_counter()
    errors = 0
    checked = 0
    for seed, (N, K, d, r) in enumerate(chosen):
        f = generate_adjacent_mnk(N, K, d, 100, seed=seed)
        index = enumerate_moves(build_cooccurrence_graph(f), r, f)
        store = compute_scores(f, index, [rnd.randint(0, 1) for _ in range(N)])
        for _ in range(1000):
            store.apply(rnd.randrange(len(index)))
            truth = scratch_scores(f, index, store.x)
            got = np.asarray(store.score_array())
            errors += int(np.abs(got - truth).sum())
            checked += truth.shape[0]
        errors += int(np.abs(np.asarray(store.fx) - f.evaluate_many(list(store.x))[0]).sum())
    elapsed = time.perf_counter() - start
    verdict(
        "C1 incremental-update exactness",
        errors == 0 and elapsed < 60,
        f"20 instances x 1000 moves, {checked} score checks, total abs error {errors}, {elapsed:.1f}s (< 60s)",
    )


def test_c2_move_count_formula(verdict):
    mismatches = []
    cases = 0
    for K in (2, 3):
        for N in (10, 30, 100):
            for r in (1, 2, 3):
                if r > N / K:
                    continue
                f = generate_adjacent_mnk(N, K, 1, 100, seed=N + K + r)
                G = build_cooccurrence_graph(f)
                index = enumerate_moves(G, r, f)
                expected = N * (K**r - 1) // (K - 1)
                cases += 1
                if len(index) != expected or adjacent_move_count(N, K, r) != expected:
                    mismatches.append((N, K, r, len(index), expected))
                if N <= 20 and set(index.moves) != set(brute_connected_subsets(G, r)):
                    mismatches.append((N, K, r, "brute"))
    verdict("C2 move-count formula", not mismatches, f"{cases} (N,K,r) cases, mismatches {mismatches}")


def test_c3_local_optimum_certification(verdict):
    rnd = random.Random(3)
    failures = 0
    for j in range(100):
        n = rnd.randint(8, 16)
        K = rnd.randint(1, 3)
        r = rnd.randint(1, 3)
        f = generate_adjacent_mnk(n, K, 2, 100, seed=1000 + j)
        index = enumerate_moves(build_cooccurrence_graph(f), r, f)
        w = tuple(np.random.default_rng(j).dirichlet([1, 1]))
        res = climb(f, index, [rnd.randint(0, 1) for _ in range(n)], w, rng=rnd)
        wint = integer_weights(res.weights)
        deltas = brute_scores(f, res.solution, r).values()
        dominated = not brute_local_optimum(f, res.solution, r)
        w_improvable = any(sum(a * b for a, b in zip(wint, s)) > 0 for s in deltas)
        failures += (not res.completed) or dominated or w_improvable
    verdict("C3 local-optimum certification", failures == 0, f"100 climbs (n<=16, d=2, r<=3), failures {failures}")


def test_c4_strong_move_implies_w_improving_basis_move(verdict):
    rnd = random.Random(4)
    counterexamples = 0
    with_strong = 0
    for trial in range(1000):
        n = rnd.randint(4, 14)
        K = rnd.randint(0, 3)
        d = rnd.randint(2, 3)
        r = rnd.randint(1, 3)
        model = rnd.choice(["adjacent", "random"])
        f = generate_adjacent_mnk(n, min(K, n - 1), d, 100, seed=trial, model=model)
        index = enumerate_moves(build_cooccurrence_graph(f), r, f)
        x = [rnd.randint(0, 1) for _ in range(n)]
        w = [rnd.uniform(0.001, 1) for _ in range(d)]
        store = compute_scores(f, index, x, w)
        ball = brute_scores(f, x, r).values()
        if any(min(s) >= 0 and max(s) > 0 for s in ball):
            with_strong += 1
            wint = integer_weights(store.weights)
            basis_hit = any(
                sum(a * b for a, b in zip(wint, store.score(v))) > 0 for v in range(len(index))
            )
            counterexamples += not basis_hit
    verdict(
        "C4 strong ball move implies w-improving basis move",
        counterexamples == 0,
        f"1000 triples, {with_strong} with a strong ball move, counterexamples {counterexamples}",
    )


def test_c5_cycle_freedom(verdict):
    rnd = random.Random(5)
    failures = 0
    steps = 0
    for j in range(100):
        n = rnd.choice([20, 50, 100])
        d = rnd.randint(1, 3)
        r = rnd.randint(1, 3)
        f = generate_adjacent_mnk(n, rnd.randint(1, 3), d, 100, seed=2000 + j)
        index = enumerate_moves(build_cooccurrence_graph(f), r, f)
        w = tuple(np.random.default_rng(j).dirichlet(np.ones(d))) if d > 1 else (1.0,)
        res = climb(f, index, [rnd.randint(0, 1) for _ in range(n)], w, rng=rnd, trace=True)
        wint = integer_weights(res.weights)
        wf = [sum(a * b for a, b in zip(wint, objv)) for _, objv in res.trace]
        increasing = all(b > a for a, b in zip(wf, wf[1:]))
        distinct = len({bits for bits, _ in res.trace}) == len(res.trace)
        failures += not (increasing and distinct)
        steps += res.moves
    verdict("C5 cycle-freedom", failures == 0, f"100 logged climbs, {steps} moves, failures {failures}")


def _mean_move_us(N, r, runs=10, budget=10.0):
    values = []
    for j in range(runs):
        cfg = RunConfig(N=N, K=3, d=2, q=100, r=r, seed=j, time_limit=budget)
        values.append(multistart(cfg, run=0).stats.mean_move_us)
    return statistics.mean(values)


def test_c6_constant_time_per_move(verdict):
    times = {(N, r): _mean_move_us(N, r) for r in (1, 2) for N in (5_000, 50_000)}
    ratios = {r: times[50_000, r] / times[5_000, r] for r in (1, 2)}
    scaling = all(ratio < 2 for ratio in ratios.values())
    grows_with_r = all(times[N, 2] > times[N, 1] for N in (5_000, 50_000))
    table = ", ".join(f"N={N} r={r}: {t:.1f}us" for (N, r), t in sorted(times.items()))
    verdict(
        "C6 constant time per move",
        scaling and grows_with_r,
        f"{table}; N-ratio r=1 {ratios[1]:.2f}, r=2 {ratios[2]:.2f} (< 2); increases with r: {grows_with_r}",
    )


def test_c7_quality_ordering(verdict):
    surfaces = {}
    for r in (1, 2):
        cfg = RunConfig(N=1_000, K=3, d=2, q=100, r=r, seed=0, time_limit=5.0)
        f, index, _ = prepare(cfg)
        fronts = [multistart(cfg, run=j, f=f, index=index).archive.objectives() for j in range(30)]
        surfaces[r] = attainment_surface(fronts, 0.5)
    frac = weakly_dominated_fraction(surfaces[2], surfaces[1])
    verdict(
        "C7 quality ordering (stochastic)",
        frac >= 0.8,
        f"r=2 50%-EAS weakly dominates {frac:.1%} of {len(surfaces[1])} r=1 EAS points (>= 80%)",
    )


def test_c8_archive_correctness(verdict):
    problems = []
    configs = [
        RunConfig(N=14, K=2, d=2, r=2, seed=s, max_climbs=80) for s in range(5)
    ] + [
        RunConfig(N=14, K=3, d=3, r=1, seed=10, max_climbs=80),
        RunConfig(N=200, K=3, d=2, r=2, seed=11, max_climbs=50),
        RunConfig(N=200, K=2, d=3, r=1, seed=12, max_climbs=50),
    ]
    checked_points = 0
    for cfg in configs:
        log = []
        res = multistart(cfg, sink=lambda objv, bits: log.append(tuple(objv)))
        archive = set(res.archive.objectives())
        if archive != non_dominated(log):
            problems.append((cfg.N, cfg.d, cfg.seed, "log filter"))
        if cfg.N == 14:
            f = generate_adjacent_mnk(cfg.N, cfg.K, cfg.d, cfg.q, seed=cfg.run_seed(0))
            front = brute_pareto(f)
            for p in archive:
                checked_points += 1
                if not any(all(a >= b for a, b in zip(t, p)) for t in front):
                    problems.append((cfg.N, cfg.d, cfg.seed, p))
    verdict(
        "C8 archive correctness",
        not problems,
        f"{len(configs)} runs match their report-log filter, {checked_points} points checked on exact fronts, problems {problems}",
    )

