"""Iterated trajectory search: restart-only and mutation-augmented drivers."""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .formula import Formula, Mode
from .pb import PBParams, pb
from .scoring import Cost, ScoreState
from .verify import evaluate

VARIANTS = ("ipbmr", "ipbr", "no-random", "no-break")

ZERO = Cost(0, 0)


def default_p(mode: Mode) -> float:
    """Greedy-pick probability default: 0.99 on weighted-partial, else 0.2."""
    return 0.99 if mode is Mode.WEIGHTED_PARTIAL else 0.2


@dataclass
class SolverConfig:
    variant: str = "ipbmr"
    alpha: int = 3
    p: float | None = None           # None: default_p(mode) at run time
    max_mutations: int = 7           # per kind and restart; 3 suits industrial sets
    weak_prob: float = 0.2
    strong_prob: float = 0.7
    max_restarts: int | None = None  # None: unbounded
    cutoff: float | None = 300.0     # wall-clock seconds; None disables
    max_flips: int | None = None     # total trajectory flips; None disables
    seed: int = 0
    target_cost: Cost | None = None  # stop once the incumbent reaches this
    log_trajectory: bool = False


@dataclass
class RunResult:
    best_values: list[bool]
    best_cost: Cost
    time_to_best: float              # seconds from run start; wall-clock
    total_flips: int
    pb_calls: int
    restarts: int
    weak_mutations: int
    strong_mutations: int
    pb_return_costs: Counter = field(default_factory=Counter)

    def canonical(self) -> tuple:
        """All algorithmic fields, excluding wall-clock timing. Two runs with
        the same seed and a flip budget produce identical canonical forms."""
        return (
            tuple(self.best_values),
            self.best_cost,
            self.total_flips,
            self.pb_calls,
            self.restarts,
            self.weak_mutations,
            self.strong_mutations,
            tuple(sorted(self.pb_return_costs.items())),
        )


def mutate(values: list[bool], prob: float, rng) -> list[bool]:
    """Independently flip each value with the given probability."""
    return [(not v) if rng.random() < prob else v for v in values]


def _random_values(rng, n: int) -> list[bool]:
    return [bool(rng.getrandbits(1)) for _ in range(n)]


def _resolve_p(formula: Formula, config: SolverConfig) -> float:
    p = config.p if config.p is not None else default_p(formula.mode)
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be within [0, 1]")
    return p


def _validate(config: SolverConfig) -> None:
    if config.variant not in VARIANTS:
        raise ValueError(f"unknown variant {config.variant!r}; expected one of {VARIANTS}")
    if config.alpha < 1:
        raise ValueError("alpha must be >= 1")
    if config.max_mutations < 0:
        raise ValueError("max_mutations must be >= 0")
    for name in ("weak_prob", "strong_prob"):
        v = getattr(config, name)
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must be within [0, 1]")
    if config.max_restarts is not None and config.max_restarts < 0:
        raise ValueError("max_restarts must be >= 0")
    if config.max_flips is not None and config.max_flips < 0:
        raise ValueError("max_flips must be >= 0")


def run(formula: Formula, config: SolverConfig, on_improve=None, on_pb=None) -> RunResult:
    """Dispatch on config.variant and re-check the incumbent by direct
    evaluation before returning.

    on_improve(cost, values, elapsed) fires for every new incumbent,
    including the initial one. on_pb(call_index, outcome) fires after every
    trajectory-search return.
    """
    _validate(config)
    rng = random.Random(config.seed)
    if config.variant == "ipbr":
        result = ipbr(formula, config, rng, on_improve=on_improve, on_pb=on_pb)
    else:
        result = ipbmr(formula, config, rng, on_improve=on_improve, on_pb=on_pb)
    if evaluate(formula, result.best_values) != result.best_cost:
        raise RuntimeError("incumbent failed re-evaluation; scoring state is corrupt")
    return result


def ipbr(formula: Formula, config: SolverConfig, rng, on_improve=None, on_pb=None) -> RunResult:
    """Iterated restarts: from a fresh random assignment, chain trajectory
    searches while each strictly improves on its start, then restart.

    Stops at a zero-cost incumbent, at config.target_cost, or on budget
    (cutoff seconds / max_flips / max_restarts) exhaustion.
    """
    _validate(config)
    p = _resolve_p(formula, config)
    params = PBParams(alpha=config.alpha, p=p)
    n = formula.num_vars
    start = time.monotonic()
    deadline = start + config.cutoff if config.cutoff is not None else None

    state = ScoreState(formula, _random_values(rng, n))
    best_values = state.copy_values()
    best_cost = state.cost()
    time_to_best = time.monotonic() - start
    if on_improve:
        on_improve(best_cost, list(best_values), time_to_best)

    total_flips = 0
    pb_calls = 0
    restarts = 0
    pb_return_costs: Counter = Counter()

    def note_best(cost: Cost, values: list[bool]) -> None:
        nonlocal best_cost, best_values, time_to_best
        best_cost = cost
        best_values = values
        time_to_best = time.monotonic() - start
        if on_improve:
            on_improve(cost, list(values), time_to_best)

    def finished() -> bool:
        if best_cost == ZERO:
            return True
        if config.target_cost is not None and best_cost <= config.target_cost:
            return True
        if deadline is not None and time.monotonic() >= deadline:
            return True
        if config.max_flips is not None and total_flips >= config.max_flips:
            return True
        return False

    while not finished() and (config.max_restarts is None or restarts < config.max_restarts):
        restarts += 1
        state.set_assignment(_random_values(rng, n))
        current_cost = state.cost()
        if current_cost < best_cost:
            note_best(current_cost, state.copy_values())
        while not finished():
            remaining = None if config.max_flips is None else config.max_flips - total_flips
            out = pb(
                state, params, rng,
                log_trajectory=config.log_trajectory,
                max_steps=remaining, deadline=deadline,
            )
            pb_calls += 1
            total_flips += out.steps_taken
            pb_return_costs[out.best_cost] += 1
            if on_pb:
                on_pb(pb_calls, out)
            if out.best_cost < current_cost:
                current_cost = out.best_cost
                state.set_assignment(out.best_values)
                if current_cost < best_cost:
                    note_best(current_cost, out.best_values)
            else:
                break

    return RunResult(
        list(best_values), best_cost, time_to_best,
        total_flips, pb_calls, restarts, 0, 0, pb_return_costs,
    )


def ipbmr(formula: Formula, config: SolverConfig, rng, on_improve=None, on_pb=None) -> RunResult:
    """Mutation-augmented iterated restarts.

    Like ipbr, but each restart keeps its best solution and, when a
    trajectory search fails to improve its start, retries from a mutated
    copy of that restart-best: up to max_mutations weak mutations
    (weak_prob per variable), then up to max_mutations strong ones
    (strong_prob). Both counters reset whenever the restart-best improves;
    once both ladders are exhausted the restart ends.

    Handles the no-random / no-break ablation variants by forwarding their
    flags into the trajectory search.
    """
    _validate(config)
    p = _resolve_p(formula, config)
    params = PBParams(
        alpha=config.alpha,
        p=p,
        no_random=config.variant == "no-random",
        no_break=config.variant == "no-break",
    )
    n = formula.num_vars
    start = time.monotonic()
    deadline = start + config.cutoff if config.cutoff is not None else None

    state = ScoreState(formula, _random_values(rng, n))
    best_values = state.copy_values()
    best_cost = state.cost()
    time_to_best = time.monotonic() - start
    if on_improve:
        on_improve(best_cost, list(best_values), time_to_best)

    total_flips = 0
    pb_calls = 0
    restarts = 0
    weak_total = 0
    strong_total = 0
    pb_return_costs: Counter = Counter()

    def note_best(cost: Cost, values: list[bool]) -> None:
        nonlocal best_cost, best_values, time_to_best
        best_cost = cost
        best_values = values
        time_to_best = time.monotonic() - start
        if on_improve:
            on_improve(cost, list(values), time_to_best)

    def finished() -> bool:
        if best_cost == ZERO:
            return True
        if config.target_cost is not None and best_cost <= config.target_cost:
            return True
        if deadline is not None and time.monotonic() >= deadline:
            return True
        if config.max_flips is not None and total_flips >= config.max_flips:
            return True
        return False

    while not finished() and (config.max_restarts is None or restarts < config.max_restarts):
        restarts += 1
        state.set_assignment(_random_values(rng, n))
        current_cost = state.cost()
        restart_best = state.copy_values()
        restart_best_cost = current_cost
        if restart_best_cost < best_cost:
            note_best(restart_best_cost, restart_best)
        weak = 0
        strong = 0
        while not finished():
            remaining = None if config.max_flips is None else config.max_flips - total_flips
            out = pb(
                state, params, rng,
                log_trajectory=config.log_trajectory,
                max_steps=remaining, deadline=deadline,
            )
            pb_calls += 1
            total_flips += out.steps_taken
            pb_return_costs[out.best_cost] += 1
            if on_pb:
                on_pb(pb_calls, out)
            if out.best_cost < current_cost:
                current_cost = out.best_cost
                state.set_assignment(out.best_values)
                if current_cost < restart_best_cost:
                    restart_best = out.best_values
                    restart_best_cost = current_cost
                    weak = 0
                    strong = 0
                    if restart_best_cost < best_cost:
                        note_best(restart_best_cost, restart_best)
            elif weak < config.max_mutations:
                weak += 1
                weak_total += 1
                mutated = mutate(restart_best, config.weak_prob, rng)
                state.set_assignment(mutated)
                current_cost = state.cost()
            elif strong < config.max_mutations:
                strong += 1
                strong_total += 1
                mutated = mutate(restart_best, config.strong_prob, rng)
                state.set_assignment(mutated)
                current_cost = state.cost()
            else:
                break

    return RunResult(
        list(best_values), best_cost, time_to_best,
        total_flips, pb_calls, restarts, weak_total, strong_total, pb_return_costs,
    )
