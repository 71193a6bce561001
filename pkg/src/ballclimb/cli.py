"""Command-line entry point: ``ballclimb run | generate | eas``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .archive import read_front, write_front
from .attainment import eas50
from .harness import RunConfig, run_batch
from .landscape import generate_adjacent_mnk, save_instance

log = logging.getLogger("ballclimb")


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="number of variables N")
    p.add_argument("--k", type=int, default=3, help="epistasis K (each subfunction reads K+1 variables)")
    p.add_argument("--d", type=int, default=2, help="number of objectives")
    p.add_argument("--q", type=int, default=100, help="subfunction values are integers in [0, q)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=("adjacent", "random"), default="adjacent")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballclimb", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="multi-start hill climbing on generated MNKq instances")
    _instance_args(run)
    run.add_argument("--r", type=int, default=1, help="Hamming ball radius")
    run.add_argument("--time-limit", type=float, default=60.0, help="seconds per run (default 60)")
    run.add_argument("--climbs", type=int, default=None, help="stop each run after this many climbs")
    run.add_argument("--runs", type=int, default=1, help="independent runs; run j uses seed+j")
    run.add_argument("--threads", type=int, default=1, help="worker processes for independent runs")
    run.add_argument("--out", type=str, default=None, help="output directory")

    gen = sub.add_parser("generate", help="write a generated instance file")
    _instance_args(gen)
    gen.add_argument("-o", "--output", required=True)

    eas = sub.add_parser("eas", help="50%% empirical attainment surface of bi-objective fronts")
    eas.add_argument("fronts", nargs="+", help="front files (tab-separated, one point per line)")
    eas.add_argument("-o", "--output", default=None, help="write here instead of stdout")
    return parser


def _run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = RunConfig(
        N=args.n,
        K=args.k,
        d=args.d,
        q=args.q,
        r=args.r,
        seed=args.seed,
        time_limit=args.time_limit,
        runs=args.runs,
        out=args.out,
        model=args.model,
        threads=args.threads,
        max_climbs=args.climbs,
    )
    try:
        config.validate()
    except ValueError as exc:
        parser.error(str(exc))
    results = run_batch(config)
    for res in results:
        s = res.stats
        print(
            f"run {s.run} seed={s.seed} moves={s.moves} climbs={s.climbs} "
            f"front={len(res.archive)} mean_move_us={s.mean_move_us:.2f} "
            f"problem_init_ms={1e3 * s.problem_init_seconds:.0f}"
        )
    if config.out:
        print(f"results written to {config.out}")
    return 0


def _generate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        f = generate_adjacent_mnk(args.n, args.k, args.d, args.q, args.seed, model=args.model)
    except ValueError as exc:
        parser.error(str(exc))
    save_instance(f, args.output)
    print(f"wrote n={f.n} d={f.d} k={f.k} q={f.q} instance to {args.output}")
    return 0


def _eas(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        fronts = [read_front(path) for path in args.fronts]
        surface = eas50(fronts, d=2 if all(len(p) == 2 for fr in fronts for p in fr) else 0)
    except (OSError, ValueError) as exc:
        print(f"ballclimb eas: {exc}", file=sys.stderr)
        return 2
    if args.output:
        write_front(surface, args.output)
    else:
        for point in surface:
            print("\t".join(map(str, point)))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handler = {"run": _run, "generate": _generate, "eas": _eas}[args.command]
    try:
        return handler(args, parser)
    except OSError as exc:
        print(f"ballclimb: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
