"""Stochastic local search for MAX-SAT (unweighted, weighted, and
weighted-partial) built on inverse-directed trajectories: each search walks
from an assignment toward its inverse, never reflipping a variable, breaking
off early once candidate scores turn hopeless, and iterates under restarts
and mutation ladders. Includes exact oracles, a seeded instance generator,
and a measurement harness.
"""

from .bench import (
    HISTOGRAM_HEADER,
    RUNS_HEADER,
    SUMMARY_HEADER,
    TRAJECTORY_HEADER,
    SuiteEntry,
    SuiteResult,
    format_cost,
    pb_return_histogram,
    run_suite,
    runs_rows,
    summary_rows,
    trajectory_dump,
    variant_standings,
    write_csv,
)
from .formula import (
    MAX_SOFT_WEIGHT_SUM,
    Clause,
    Formula,
    Mode,
    ParseError,
    build_index,
    make_formula,
    parse_dimacs,
    write_dimacs,
)
from .pb import PBOutcome, PBParams, TrajectoryStep, pb, pick_variable
from .scoring import Cost, ScoreState, inverse, is_better
from .solver import (
    VARIANTS,
    RunResult,
    SolverConfig,
    default_p,
    ipbmr,
    ipbr,
    mutate,
    run,
)
from .verify import (
    BRUTE_FORCE_VAR_LIMIT,
    GeneratorSpec,
    brute_force,
    check_solution,
    evaluate,
    generate,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTE_FORCE_VAR_LIMIT",
    "Clause",
    "Cost",
    "Formula",
    "GeneratorSpec",
    "HISTOGRAM_HEADER",
    "MAX_SOFT_WEIGHT_SUM",
    "Mode",
    "ParseError",
    "PBOutcome",
    "PBParams",
    "RunResult",
    "RUNS_HEADER",
    "ScoreState",
    "SolverConfig",
    "SuiteEntry",
    "SuiteResult",
    "SUMMARY_HEADER",
    "TrajectoryStep",
    "TRAJECTORY_HEADER",
    "VARIANTS",
    "brute_force",
    "build_index",
    "check_solution",
    "default_p",
    "evaluate",
    "format_cost",
    "generate",
    "inverse",
    "ipbmr",
    "ipbr",
    "is_better",
    "make_formula",
    "mutate",
    "parse_dimacs",
    "pb",
    "pb_return_histogram",
    "pick_variable",
    "run",
    "run_suite",
    "runs_rows",
    "summary_rows",
    "trajectory_dump",
    "variant_standings",
    "write_csv",
    "write_dimacs",
]
