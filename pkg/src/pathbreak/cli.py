"""Command line front end.

Exit codes: 0 success, 1 unreadable/malformed input, 2 invalid flags
(argparse's convention), 3 failed solution check.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

from .bench import (
    HISTOGRAM_HEADER,
    RUNS_HEADER,
    SUMMARY_HEADER,
    TRAJECTORY_HEADER,
    pb_return_histogram,
    run_suite,
    runs_rows,
    summary_rows,
    trajectory_dump,
    variant_standings,
    write_csv,
)
from .formula import Formula, Mode, ParseError, parse_dimacs, write_dimacs
from .pb import PBParams
from .scoring import Cost
from .solver import VARIANTS, SolverConfig, default_p, run
from .verify import GeneratorSpec, check_solution, generate

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_USAGE = 2
EXIT_CHECK = 3

SOLVE_TRAJECTORY_HEADER = [
    "pb_call", "step", "max_score", "picked_var",
    "hard_falsified", "soft_falsified_weight",
]

GENERATOR_MODES = {
    "unweighted": Mode.UNWEIGHTED,
    "weighted": Mode.WEIGHTED,
    "partial": Mode.WEIGHTED_PARTIAL,
}


def _add_solver_flags(p: argparse.ArgumentParser, single_variant: bool = True) -> None:
    if single_variant:
        p.add_argument("--variant", choices=VARIANTS, default="ipbmr")
    else:
        p.add_argument(
            "--variant", choices=VARIANTS, action="append", default=None,
            help="may be given several times; default ipbmr",
        )
    p.add_argument("--alpha", type=int, default=3, metavar="N")
    p.add_argument(
        "--prob-p", type=float, default=None, metavar="F",
        help="greedy-pick probability (default 0.2; 0.99 on weighted-partial)",
    )
    p.add_argument("--max-mutations", type=int, default=None, metavar="N",
                   help="mutations per kind and restart (default 7)")
    p.add_argument("--industrial", action="store_true",
                   help="shorthand for --max-mutations 3")
    p.add_argument("--cutoff", type=float, default=300.0, metavar="SECONDS")
    p.add_argument("--max-flips", type=int, default=None, metavar="N")
    p.add_argument("--max-restarts", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="N")


def _config_from(args, variant: str | None = None) -> SolverConfig:
    if args.max_mutations is not None:
        max_mutations = args.max_mutations
    else:
        max_mutations = 3 if args.industrial else 7
    return SolverConfig(
        variant=variant if variant is not None else args.variant,
        alpha=args.alpha,
        p=args.prob_p,
        max_mutations=max_mutations,
        cutoff=args.cutoff,
        max_flips=args.max_flips,
        max_restarts=args.max_restarts,
        seed=args.seed,
    )


def _load(path: str) -> Formula:
    return parse_dimacs(Path(path).read_text())


def cmd_solve(args) -> int:
    formula = _load(args.instance)
    config = _config_from(args)
    p = config.p if config.p is not None else default_p(formula.mode)
    print(f"c instance {args.instance}")
    print(f"c mode {formula.mode.value} vars {formula.num_vars} "
          f"clauses {len(formula.clauses)}")
    print(f"c variant {config.variant} alpha {config.alpha} p {p} "
          f"max_mutations {config.max_mutations} seed {config.seed}")
    print(f"c cutoff {config.cutoff} max_flips {config.max_flips} "
          f"max_restarts {config.max_restarts}")

    def on_improve(cost: Cost, _values, _elapsed) -> None:
        # o lines only once all hard clauses hold; values never increase
        if cost.hard == 0:
            print(f"o {cost.soft}", flush=True)

    traj_file = None
    traj_writer = None
    on_pb = None
    if args.trajectory:
        config = replace(config, log_trajectory=True)
        traj_file = open(args.trajectory, "w", newline="")
        traj_writer = csv.writer(traj_file, lineterminator="\n")
        traj_writer.writerow(SOLVE_TRAJECTORY_HEADER)

        def on_pb(call_index, outcome):
            for rec in outcome.trajectory:
                traj_writer.writerow(
                    [call_index, rec.step, rec.max_score, rec.picked_var,
                     rec.hard, rec.soft]
                )

    try:
        result = run(formula, config, on_improve=on_improve, on_pb=on_pb)
    finally:
        if traj_file is not None:
            traj_file.close()

    print("s OPTIMUM FOUND" if result.best_cost == Cost(0, 0) else "s UNKNOWN")
    # the witness is re-checked against the reported cost before printing
    if not check_solution(formula, result.best_values, result.best_cost):
        print("error: witness failed final re-check", file=sys.stderr)
        return EXIT_CHECK
    lits = " ".join(
        str(i + 1) if v else str(-(i + 1)) for i, v in enumerate(result.best_values)
    )
    print(f"v {lits}")
    print(f"c done flips {result.total_flips} pb_calls {result.pb_calls} "
          f"restarts {result.restarts}", file=sys.stderr)
    return EXIT_OK


def _read_solution(path: str, num_vars: int) -> tuple[list[bool], Cost]:
    o_value = None
    v_tokens = None
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line.startswith("o "):
            try:
                o_value = int(line[2:].strip())
            except ValueError:
                raise ParseError(f"bad o line: {line!r}") from None
        elif line.startswith("v "):
            v_tokens = line[2:].split()
    if o_value is None:
        raise ParseError("solution has no o line")
    if v_tokens is None:
        raise ParseError("solution has no v line")
    values = [False] * num_vars
    seen: set[int] = set()
    for tok in v_tokens:
        try:
            lit = int(tok)
        except ValueError:
            raise ParseError(f"bad v literal: {tok!r}") from None
        if lit == 0:
            continue
        var = abs(lit)
        if var > num_vars:
            raise ParseError(f"v literal {lit} out of range")
        values[var - 1] = lit > 0
        seen.add(var)
    if len(seen) != num_vars:
        raise ParseError("v line must assign every variable exactly once")
    return values, Cost(0, o_value)


def cmd_check(args) -> int:
    formula = _load(args.instance)
    values, claimed = _read_solution(args.solution, formula.num_vars)
    if check_solution(formula, values, claimed):
        print("c check ok")
        return EXIT_OK
    print("error: claimed cost does not match the v line", file=sys.stderr)
    return EXIT_CHECK


def _expand_paths(paths) -> list[str]:
    out: list[str] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            out.extend(
                str(f) for f in sorted(path.iterdir())
                if f.suffix in (".cnf", ".wcnf", ".dimacs")
            )
        else:
            out.append(str(path))
    return out


def cmd_bench(args) -> int:
    variants = args.variant or ["ipbmr"]
    config = _config_from(args, variant=variants[0])
    paths = _expand_paths(args.instances)
    suite = run_suite(paths, variants, config, repetitions=args.runs)
    for name, message in suite.errors:
        print(f"error: {name}: {message}", file=sys.stderr)
    if not suite.entries:
        return EXIT_PARSE
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "runs.csv", "w", newline="") as fh:
        write_csv(fh, RUNS_HEADER, runs_rows(suite))
    with open(out / "summary.csv", "w", newline="") as fh:
        write_csv(fh, SUMMARY_HEADER, summary_rows(suite))
    for variant, wins, time_sum in variant_standings(suite):
        print(f"c {variant} wins {wins} time {time_sum:.3f}")
    return EXIT_OK


def _emit_rows(args, header, rows, filename: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / filename, "w", newline="") as fh:
            write_csv(fh, header, rows)
    else:
        write_csv(sys.stdout, header, rows)


def cmd_trajectory(args) -> int:
    formula = _load(args.instance)
    p = args.prob_p if args.prob_p is not None else default_p(formula.mode)
    params = PBParams(alpha=args.alpha, p=p)
    rows = trajectory_dump(formula, params, count=args.runs, seed=args.seed)
    _emit_rows(args, TRAJECTORY_HEADER, rows, "trajectory.csv")
    return EXIT_OK


def cmd_histogram(args) -> int:
    formula = _load(args.instance)
    variants = args.variant or ["ipbmr"]
    config = _config_from(args, variant=variants[0])
    rows = pb_return_histogram(formula, variants, config)
    _emit_rows(args, HISTOGRAM_HEADER, rows, "histogram.csv")
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = GeneratorSpec(
        num_vars=args.num_vars,
        num_clauses=args.num_clauses,
        clause_length=args.clause_length,
        mode=GENERATOR_MODES[args.mode],
        weight_range=(args.weight_min, args.weight_max),
        hard_fraction=args.hard_fraction,
        seed=args.seed,
    )
    sys.stdout.write(write_dimacs(generate(spec)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathbreak",
        description="MAX-SAT local search over inverse-directed trajectories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one DIMACS instance")
    p_solve.add_argument("instance")
    _add_solver_flags(p_solve)
    p_solve.add_argument("--trajectory", metavar="FILE", default=None,
                         help="write per-step trajectory records as CSV")
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="verify a solver output file")
    p_check.add_argument("instance")
    p_check.add_argument("solution")
    p_check.set_defaults(func=cmd_check)

    p_bench = sub.add_parser("bench", help="run a measurement suite")
    p_bench.add_argument("instances", nargs="+",
                         help="instance files or directories")
    _add_solver_flags(p_bench, single_variant=False)
    p_bench.add_argument("--runs", type=int, default=10, metavar="N",
                         help="repetitions per (instance, variant)")
    p_bench.add_argument("--out", default=".", metavar="DIR")
    p_bench.set_defaults(func=cmd_bench)

    p_traj = sub.add_parser("trajectory",
                            help="dump complete-trajectory score profiles")
    p_traj.add_argument("instance")
    p_traj.add_argument("--runs", type=int, default=10, metavar="N")
    p_traj.add_argument("--alpha", type=int, default=3, metavar="N")
    p_traj.add_argument("--prob-p", type=float, default=None, metavar="F")
    p_traj.add_argument("--seed", type=int, default=0, metavar="N")
    p_traj.add_argument("--out", default=None, metavar="DIR")
    p_traj.set_defaults(func=cmd_trajectory)

    p_hist = sub.add_parser("histogram",
                            help="histogram of trajectory-search return costs")
    p_hist.add_argument("instance")
    _add_solver_flags(p_hist, single_variant=False)
    p_hist.add_argument("--out", default=None, metavar="DIR")
    p_hist.set_defaults(func=cmd_histogram)

    p_gen = sub.add_parser("generate", help="write a random instance to stdout")
    p_gen.add_argument("--mode", choices=sorted(GENERATOR_MODES), default="unweighted")
    p_gen.add_argument("--num-vars", type=int, required=True, metavar="N")
    p_gen.add_argument("--num-clauses", type=int, required=True, metavar="M")
    p_gen.add_argument("--clause-length", type=int, default=3, metavar="K")
    p_gen.add_argument("--weight-min", type=int, default=1, metavar="W")
    p_gen.add_argument("--weight-max", type=int, default=10, metavar="W")
    p_gen.add_argument("--hard-fraction", type=float, default=0.0, metavar="F")
    p_gen.add_argument("--seed", type=int, default=0, metavar="N")
    p_gen.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        # bad flag values that argparse's type checks cannot catch
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
