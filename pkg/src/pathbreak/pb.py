"""Inverse-directed trajectory search with an early-break rule.

One call walks from the state's current assignment toward its inverse,
flipping each variable at most once, and reports the best assignment seen
on the way. The walk is cut short once the remaining candidates' scores
look hopeless; see ``pb``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

from .scoring import Cost, ScoreState


@dataclass(frozen=True)
class PBParams:
    """Trajectory-search knobs.

    alpha: break-rule multiplier; larger values tolerate longer negative
        stretches before giving up on a trajectory.
    p: probability of taking the greedy pick instead of the score-squared
        weighted draw when positive-score candidates exist.
    no_random: ablation; always flip the highest-score candidate.
    no_break: ablation; always walk the complete trajectory.
    """

    alpha: int = 3
    p: float = 0.2
    no_random: bool = False
    no_break: bool = False

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be within [0, 1]")


class TrajectoryStep(NamedTuple):
    step: int
    max_score: int      # over the candidates, before the flip
    picked_var: int
    hard: int           # cost after the flip
    soft: int


@dataclass
class PBOutcome:
    best_values: list[bool]
    best_cost: Cost
    steps_taken: int
    broke_early: bool
    trajectory: list[TrajectoryStep] | None = None


def _argmax(variables: list[int], scores: list[int]) -> int:
    """Variable with the highest score; ties go to the lowest index."""
    best_v = variables[0]
    best_s = scores[0]
    for v, s in zip(variables, scores):
        if s > best_s:
            best_s = s
            best_v = v
    return best_v


def pick_variable(
    candidates: list[int],
    scores: list[int],
    pos_vars: list[int],
    pos_scores: list[int],
    p: float,
    no_random: bool,
    rng,
) -> int:
    """Choose the next variable to flip.

    Greedy over all candidates when no_random is set or no candidate has a
    positive score (no randomness consumed). Otherwise: greedy over the
    positive-score candidates with probability p, else one draw weighted by
    score squared, using exact integer cumulative sums. Greedy ties are
    broken toward the lowest variable index.
    """
    if no_random or not pos_vars:
        return _argmax(candidates, scores)
    if rng.random() < p:
        return _argmax(pos_vars, pos_scores)
    total = 0
    squares = []
    for s in pos_scores:
        q = s * s
        total += q
        squares.append(q)
    r = rng.randrange(total)
    acc = 0
    for v, q in zip(pos_vars, squares):
        acc += q
        if r < acc:
            return v
    return pos_vars[-1]  # unreachable


def pb(
    state: ScoreState,
    params: PBParams,
    rng,
    log_trajectory: bool = False,
    max_steps: int | None = None,
    deadline: float | None = None,
) -> PBOutcome:
    """Run one trajectory from the state's assignment toward its inverse.

    Candidates start as all variables and a flipped variable never re-enters,
    so a complete trajectory has exactly num_vars steps and ends at the
    inverse. Per step the score of every remaining candidate is consulted:

      * the last seen maximum positive score is remembered (``last_pos``,
        starting at 0);
      * at steps with no positive candidate, the candidates' score sum
        (``neg_sum``, necessarily <= 0) is taken;
      * unless no_break is set, the walk stops when
        alpha * last_pos <= |neg_sum| -- in particular immediately when the
        start is a local optimum, since last_pos is still 0.

    The returned best is never worse than the starting assignment. The state
    is left at the trajectory's final point, NOT at the returned best;
    callers reposition with ``set_assignment``.

    max_steps / deadline bound the walk for budget enforcement; hitting them
    does not count as breaking early.
    """
    candidates = list(range(1, state.formula.num_vars + 1))
    best_values = state.copy_values()
    best_cost = state.cost()
    trajectory: list[TrajectoryStep] | None = [] if log_trajectory else None
    last_pos = 0
    steps = 0
    broke = False

    while candidates:
        if max_steps is not None and steps >= max_steps:
            break
        if deadline is not None and time.monotonic() >= deadline:
            break
        scores = state.scores(candidates)
        pos_vars: list[int] = []
        pos_scores: list[int] = []
        for v, s in zip(candidates, scores):
            if s > 0:
                pos_vars.append(v)
                pos_scores.append(s)
        if pos_vars:
            last_pos = max(pos_scores)
            neg_sum = 0
        else:
            neg_sum = sum(scores)
        if not params.no_break and params.alpha * last_pos <= -neg_sum:
            broke = True
            break
        picked = pick_variable(
            candidates, scores, pos_vars, pos_scores, params.p, params.no_random, rng
        )
        if trajectory is not None:
            max_score = max(scores)
        state.flip(picked)
        candidates.remove(picked)
        steps += 1
        cost = state.cost()
        if cost < best_cost:
            best_cost = cost
            best_values = state.copy_values()
        if trajectory is not None:
            trajectory.append(
                TrajectoryStep(steps - 1, max_score, picked, cost.hard, cost.soft)
            )

    return PBOutcome(best_values, best_cost, steps, broke, trajectory)
