"""Ground-truth oracles and reproducible instance generation."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .formula import Clause, Formula, Mode, make_formula
from .scoring import Cost, ScoreState

BRUTE_FORCE_VAR_LIMIT = 26


def evaluate(formula: Formula, values: list[bool]) -> Cost:
    """Cost by direct clause-by-clause evaluation, no incremental state."""
    if len(values) != formula.num_vars:
        raise ValueError("assignment length mismatch")
    hard = 0
    soft = 0
    for clause in formula.clauses:
        for lit in clause.lits:
            if values[abs(lit) - 1] == (lit > 0):
                break
        else:
            if clause.hard:
                hard += 1
            else:
                soft += clause.weight
    return Cost(hard, soft)


def check_solution(formula: Formula, values: list[bool], claimed: Cost) -> bool:
    """True iff the assignment's directly evaluated cost equals the claim."""
    return evaluate(formula, values) == claimed


def brute_force(formula: Formula) -> tuple[Cost, list[bool]]:
    """Exact optimum over all 2^n assignments, with one optimal witness.

    Enumerates in Gray-code order so each assignment is one incremental flip
    away from the previous; still exponential, hence the hard variable cap.
    The witness is the first optimum encountered (deterministic).
    """
    n = formula.num_vars
    if n > BRUTE_FORCE_VAR_LIMIT:
        raise ValueError(
            f"brute force capped at {BRUTE_FORCE_VAR_LIMIT} variables, got {n}"
        )
    state = ScoreState(formula, [False] * n)
    best_hard = state.falsified_hard
    best_soft = state.falsified_soft
    best_values = state.copy_values()
    for i in range(1, 1 << n):
        # lowest set bit of i = the variable flipped between consecutive
        # Gray codes g(i-1) and g(i)
        state.flip((i & -i).bit_length())
        fh = state.falsified_hard
        if fh < best_hard or (fh == best_hard and state.falsified_soft < best_soft):
            best_hard = fh
            best_soft = state.falsified_soft
            best_values = state.copy_values()
    return Cost(best_hard, best_soft), best_values


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one random instance; equal specs generate equal formulas."""

    num_vars: int
    num_clauses: int
    clause_length: int = 3
    mode: Mode = Mode.UNWEIGHTED
    weight_range: tuple[int, int] = (1, 1)
    hard_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.clause_length < 1:
            raise ValueError("clause_length must be >= 1")
        if self.num_vars < self.clause_length:
            raise ValueError("need at least clause_length variables")
        if self.num_clauses < 0:
            raise ValueError("num_clauses must be >= 0")
        lo, hi = self.weight_range
        if lo < 1 or hi < lo:
            raise ValueError("weight_range must satisfy 1 <= lo <= hi")
        if not 0.0 <= self.hard_fraction <= 1.0:
            raise ValueError("hard_fraction must be within [0, 1]")


def generate(spec: GeneratorSpec) -> Formula:
    """Draw a random instance: per clause, ``clause_length`` distinct
    variables, fair-coin polarities, uniform weights from ``weight_range``,
    and (weighted-partial only) hard with probability ``hard_fraction``.

    Hard-clause satisfiability is not guaranteed. Generated clauses never
    contain duplicate literals or tautologies, so serialization round-trips
    exactly.
    """
    rng = random.Random(spec.seed)
    lo, hi = spec.weight_range
    partial = spec.mode is Mode.WEIGHTED_PARTIAL
    clauses: list[Clause] = []
    soft_sum = 0
    for _ in range(spec.num_clauses):
        cvars = sorted(rng.sample(range(1, spec.num_vars + 1), spec.clause_length))
        lits = tuple(v if bool(rng.getrandbits(1)) else -v for v in cvars)
        hard = partial and rng.random() < spec.hard_fraction
        if hard:
            weight = 0
        elif spec.mode is Mode.UNWEIGHTED:
            weight = 1
        else:
            weight = rng.randint(lo, hi)
            soft_sum += weight
        clauses.append(Clause(lits, weight, hard))
    top = soft_sum + 1 if partial else None
    if spec.mode is Mode.UNWEIGHTED:
        top = None
    return make_formula(spec.num_vars, clauses, spec.mode, top)
