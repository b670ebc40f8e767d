"""Measurement harness: multi-seed suites, trajectory dumps, return histograms.

All CSV emitters write a mandatory header row; the row builders return plain
lists so callers can postprocess without re-parsing.
"""

from __future__ import annotations

import csv
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .formula import Formula, ParseError, parse_dimacs
from .pb import PBParams, pb
from .scoring import Cost, ScoreState
from .solver import RunResult, SolverConfig, run

RUNS_HEADER = [
    "instance", "variant", "seed", "best_hard", "best_soft",
    "time_to_best_s", "flips", "pb_calls", "restarts",
]
SUMMARY_HEADER = ["instance", "variant", "avg_time", "best_cost", "win"]
TRAJECTORY_HEADER = ["trajectory", "step", "max_score"]
HISTOGRAM_HEADER = ["variant", "hard_falsified", "soft_falsified_weight", "count"]


@dataclass
class SuiteEntry:
    """Aggregate for one (instance, variant) cell."""

    instance: str
    variant: str
    runs: list[tuple[int, RunResult]]   # (seed, result) in repetition order
    avg_time_to_best: float
    best_cost: Cost
    win: bool = False


@dataclass
class SuiteResult:
    entries: list[SuiteEntry]
    errors: list[tuple[str, str]]       # (instance, message)


def _run_job(job):
    formula, config = job
    return run(formula, config)


def run_suite(
    paths,
    variants,
    config: SolverConfig,
    repetitions: int = 10,
    workers: int = 1,
) -> SuiteResult:
    """Run every variant on every instance, ``repetitions`` times each with
    seeds config.seed, config.seed + 1, ...

    Per instance, the winning variants are those whose best cost over their
    runs matches the minimum across variants (ties mark several winners).
    avg_time_to_best is the plain arithmetic mean. Unparsable instances are
    recorded in ``errors`` and the suite continues.
    """
    formulas: list[tuple[str, Formula]] = []
    errors: list[tuple[str, str]] = []
    for path in paths:
        name = str(path)
        try:
            formulas.append((name, parse_dimacs(Path(path).read_text())))
        except (OSError, ParseError) as exc:
            errors.append((name, str(exc)))

    jobs = []
    for _name, formula in formulas:
        for variant in variants:
            for rep in range(repetitions):
                jobs.append((formula, replace(config, variant=variant, seed=config.seed + rep)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(job) for job in jobs]

    entries: list[SuiteEntry] = []
    idx = 0
    for name, _formula in formulas:
        cells: list[SuiteEntry] = []
        for variant in variants:
            runs = []
            for rep in range(repetitions):
                runs.append((config.seed + rep, results[idx]))
                idx += 1
            avg = sum(r.time_to_best for _, r in runs) / len(runs)
            best = min(r.best_cost for _, r in runs)
            cells.append(SuiteEntry(name, variant, runs, avg, best))
        best_overall = min(cell.best_cost for cell in cells)
        for cell in cells:
            cell.win = cell.best_cost == best_overall
        entries.extend(cells)
    return SuiteResult(entries, errors)


def variant_standings(suite: SuiteResult) -> list[tuple[str, int, float]]:
    """(variant, wins, total avg time) ranked by more wins, then less time.

    Instances where a variant never satisfied all hard clauses contribute no
    time (their time is reported blank in the CSVs too).
    """
    totals: dict[str, list] = {}
    for entry in suite.entries:
        acc = totals.setdefault(entry.variant, [0, 0.0])
        if entry.win:
            acc[0] += 1
        if entry.best_cost.hard == 0:
            acc[1] += entry.avg_time_to_best
    ranked = [(v, w, t) for v, (w, t) in totals.items()]
    ranked.sort(key=lambda row: (-row[1], row[2]))
    return ranked


def format_cost(cost: Cost) -> str:
    return f"{cost.hard}:{cost.soft}"


def runs_rows(suite: SuiteResult) -> list[list]:
    rows = []
    for entry in suite.entries:
        for seed, result in entry.runs:
            rows.append([
                entry.instance, entry.variant, seed,
                result.best_cost.hard, result.best_cost.soft,
                repr(result.time_to_best),
                result.total_flips, result.pb_calls, result.restarts,
            ])
    return rows


def summary_rows(suite: SuiteResult) -> list[list]:
    rows = []
    for entry in suite.entries:
        # blank time when no run reached hard feasibility
        avg = repr(entry.avg_time_to_best) if entry.best_cost.hard == 0 else ""
        rows.append([
            entry.instance, entry.variant, avg,
            format_cost(entry.best_cost), int(entry.win),
        ])
    return rows


def trajectory_dump(
    formula: Formula,
    params: PBParams,
    count: int = 10,
    seed: int = 0,
) -> list[tuple[int, int, int]]:
    """(trajectory, step, max candidate score) rows from ``count`` complete
    trajectories, each started at a fresh random assignment.

    The break rule is disabled so every trajectory runs all num_vars steps.
    """
    rng = random.Random(seed)
    full = replace(params, no_break=True)
    rows: list[tuple[int, int, int]] = []
    for t in range(count):
        values = [bool(rng.getrandbits(1)) for _ in range(formula.num_vars)]
        state = ScoreState(formula, values)
        out = pb(state, full, rng, log_trajectory=True)
        for rec in out.trajectory:
            rows.append((t, rec.step, rec.max_score))
    return rows


def pb_return_histogram(
    formula: Formula,
    variants,
    config: SolverConfig,
) -> list[tuple[str, int, int, int]]:
    """(variant, hard, soft, count) rows: how often each variant's trajectory
    searches returned each cost within the configured budget."""
    rows: list[tuple[str, int, int, int]] = []
    for variant in variants:
        result = run(formula, replace(config, variant=variant))
        for cost in sorted(result.pb_return_costs):
            rows.append((variant, cost.hard, cost.soft, result.pb_return_costs[cost]))
    return rows


def write_csv(fileobj, header, rows) -> None:
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
