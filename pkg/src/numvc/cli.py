"""Command-line interface: solve / bench / sweep / exact / rtd subcommands."""
from __future__ import annotations

import argparse
import sys

from . import bench as B
from .graph import (DimacsParseError, Graph, VertexSet, complement,
                    load_dimacs, solution_str)
from .oracle import InstanceTooLargeError, exact_mvc
from .solver import SolverConfig, solve
from .stats import summarize


class UsageError(Exception):
    pass


class InstanceError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance_pos", nargs="?", metavar="INSTANCE",
                   help="DIMACS instance file")
    p.add_argument("--instance", dest="instance_opt", metavar="PATH",
                   help="DIMACS instance file (alternative to the positional)")
    p.add_argument("--problem", choices=("vc", "mis", "mc"), default="vc",
                   help="solve for a vertex cover, independent set, or clique")
    p.add_argument("--variant", choices=("numvc", "pair", "noforget", "pd"),
                   default="numvc")
    p.add_argument("--gamma-factor", type=float, default=0.5,
                   help="weight-mean threshold as a multiple of |V| (default 0.5)")
    p.add_argument("--gamma", type=float, default=None,
                   help="absolute weight-mean threshold (overrides --gamma-factor)")
    p.add_argument("--rho", type=float, default=0.3,
                   help="forgetting factor in (0,1) (default 0.3)")
    p.add_argument("--pd", type=int, default=100,
                   help="forgetting period for the pd variant")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cutoff", type=float, default=None, metavar="SECONDS",
                   help="wall-clock budget per run")
    p.add_argument("--max-steps", type=int, default=None,
                   help="step budget per run")
    p.add_argument("--target", type=int, default=None, metavar="SIZE",
                   help="stop when a cover of this size is found; defaults to "
                        "the bundled benchmark target when the instance is known")
    p.add_argument("--threads", type=int, default=1)


def _instance_path(args) -> str:
    path = args.instance_opt or args.instance_pos
    if not path:
        raise UsageError("an instance file is required")
    return path


def _load(args) -> tuple[Graph, str]:
    """Load the instance and apply the problem reduction; returns the graph
    actually searched for a vertex cover."""
    path = _instance_path(args)
    try:
        g = load_dimacs(path)
    except OSError as e:
        raise InstanceError(str(e)) from e
    except DimacsParseError as e:
        raise InstanceError(f"{path}: {e}") from e
    if args.problem == "mc":
        g = complement(g)
    return g, path


def _config(args, n: int) -> SolverConfig:
    cfg = SolverConfig(
        gamma=args.gamma,
        gamma_factor=args.gamma_factor,
        rho=args.rho,
        seed=args.seed,
        cutoff_time=args.cutoff,
        max_steps=args.max_steps,
        target_size=args.target,
        variant=args.variant,
        pd=args.pd,
    )
    if cfg.cutoff_time is None and cfg.max_steps is None:
        raise UsageError("set at least one of --cutoff / --max-steps")
    try:
        cfg.validate()
    except ValueError as e:
        raise UsageError(str(e)) from e
    return cfg


def _answer_set(cover: VertexSet, problem: str) -> VertexSet:
    # mis: independent set of the input graph; mc: clique of the input graph
    # (= independent set of the complement we searched).
    return cover if problem == "vc" else cover.complement()


def _resolve_target(args, path: str) -> None:
    if args.target is None:
        args.target = B.target_for(path)


def _fmt(value, fmt="{:.3f}"):
    return "n/a" if value is None else (fmt.format(value) if isinstance(value, float) else str(value))


def cmd_solve(args) -> int:
    g, path = _load(args)
    _resolve_target(args, path)
    cfg = _config(args, g.n)
    cover, record = solve(g, cfg)
    answer = _answer_set(cover, args.problem)
    text = solution_str(answer)
    if args.solution_out:
        with open(args.solution_out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"c cover_size {record.best_size} steps {record.total_steps} "
          f"steps_to_best {record.steps_to_best} time {record.total_time:.3f}",
          file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    g, path = _load(args)
    _resolve_target(args, path)
    cfg = _config(args, g.n)
    records = B.run_batch(g, cfg, args.runs, args.seed, args.threads)
    summary = summarize(records, cfg.cutoff_time, cfg.target_size)
    deterministic = cfg.cutoff_time is None

    print(f"instance {path}")
    print(f"target {_fmt(cfg.target_size)}  runs {summary.runs}  suc {summary.suc}")
    print(f"size {summary.size_min}/{summary.size_avg:.2f}/{summary.size_max}")
    if not deterministic:
        print(f"time {_fmt(summary.time_avg)} (suc {_fmt(summary.suc_time_avg)})  "
              f"iqr {_fmt(summary.iqr_time)}")
    print(f"steps {_fmt(summary.steps_avg, '{:.1f}')} "
          f"(suc {_fmt(summary.suc_steps_avg, '{:.1f}')})")
    if not deterministic and summary.ks_m is not None:
        verdict = "pass" if summary.ks_pass else "fail"
        print(f"ks m {summary.ks_m:.3f} D {summary.ks_D:.4f} {verdict}")
    if args.report_throughput:
        print(f"throughput_steps_per_sec {B.throughput(records):.0f}")

    if args.csv:
        with open(args.csv, "w") as fh:
            B.write_bench_csv(fh, path, cfg, summary, deterministic)
    if args.rtd_out:
        with open(args.rtd_out, "w") as fh:
            B.write_rtd_csv(fh, records, cfg.target_size, deterministic)
    return 0


def cmd_sweep(args) -> int:
    g, path = _load(args)
    _resolve_target(args, path)
    cfg = _config(args, g.n)
    try:
        gammas = [float(x) for x in args.gamma_factors.split(",") if x]
        rhos = [float(x) for x in args.rhos.split(",") if x]
    except ValueError as e:
        raise UsageError(f"bad sweep grid: {e}") from e
    if not gammas or not rhos:
        raise UsageError("empty sweep grid")
    grid = B.sweep(g, gammas, rhos, args.runs, cfg, args.seed, args.threads)
    deterministic = cfg.cutoff_time is None
    if args.csv:
        with open(args.csv, "w") as fh:
            B.write_sweep_csv(fh, grid, deterministic)
    else:
        B.write_sweep_csv(sys.stdout, grid, deterministic)
    return 0


def cmd_exact(args) -> int:
    g, path = _load(args)
    try:
        result = exact_mvc(g, limit=args.limit)
    except InstanceTooLargeError as e:
        raise InstanceError(str(e)) from e
    answer = _answer_set(result.witness, args.problem)
    text = solution_str(answer)
    if args.solution_out:
        with open(args.solution_out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"c optimum_cover_size {result.optimum}", file=sys.stderr)
    return 0


def cmd_rtd(args) -> int:
    g, path = _load(args)
    _resolve_target(args, path)
    cfg = _config(args, g.n)
    records = B.run_batch(g, cfg, args.runs, args.seed, args.threads)
    deterministic = cfg.cutoff_time is None
    if args.rtd_out:
        with open(args.rtd_out, "w") as fh:
            B.write_rtd_csv(fh, records, cfg.target_size, deterministic)
    else:
        B.write_rtd_csv(sys.stdout, records, cfg.target_size, deterministic)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="numvc",
                     description="Local search for minimum vertex cover "
                                 "(with MIS and max-clique reductions)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="one run, print the solution")
    _add_common(p)
    p.add_argument("--solution-out", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="seeded batch of runs with statistics")
    _add_common(p)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--rtd-out", metavar="PATH")
    p.add_argument("--report-throughput", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep", help="parameter grid of benches, CSV output")
    _add_common(p)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--gamma-factors", default="0.3,0.4,0.5,0.6,0.7")
    p.add_argument("--rhos", default="0.1,0.2,0.3,0.4,0.5")
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("exact", help="exact optimum for small instances")
    _add_common(p)
    p.add_argument("--limit", type=int, default=32)
    p.add_argument("--solution-out", metavar="PATH")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("rtd", help="per-run time/step CSV export")
    _add_common(p)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--rtd-out", metavar="PATH")
    p.set_defaults(func=cmd_rtd)

    return parser


def cli_main(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InstanceError as e:
        print(f"instance error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
