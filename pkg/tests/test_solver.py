import math
import random
from dataclasses import replace

import pytest

from pathbreak import (
    Cost,
    GeneratorSpec,
    Mode,
    PBParams,
    ScoreState,
    SolverConfig,
    default_p,
    evaluate,
    generate,
    inverse,
    ipbmr,
    ipbr,
    mutate,
    pb,
    run,
)
from conftest import ALL_MODES, random_formula


def test_defaults_match_intended_settings():
    cfg = SolverConfig()
    assert cfg.variant == "ipbmr"
    assert cfg.alpha == 3
    assert cfg.max_mutations == 7
    assert cfg.cutoff == 300.0
    assert cfg.max_restarts is None
    assert default_p(Mode.UNWEIGHTED) == 0.2
    assert default_p(Mode.WEIGHTED) == 0.2
    assert default_p(Mode.WEIGHTED_PARTIAL) == 0.99


def test_solves_worked_example_all_variants(ex3):
    for variant in ("ipbmr", "ipbr", "no-random", "no-break"):
        res = run(ex3, SolverConfig(variant=variant, seed=3, max_flips=50_000))
        assert res.best_cost == Cost(0, 0)
        assert evaluate(ex3, res.best_values) == Cost(0, 0)


def test_mutate_edge_probabilities():
    rng = random.Random(41)
    vals = [bool(rng.getrandbits(1)) for _ in range(64)]
    assert mutate(vals, 0.0, rng) == vals
    assert mutate(vals, 1.0, rng) == inverse(vals)


def test_mutate_flip_counts_near_binomial():
    rng = random.Random(42)
    n = 4000
    vals = [False] * n
    for p in (0.2, 0.7):
        flips = sum(a != b for a, b in zip(vals, mutate(vals, p, rng)))
        sigma = math.sqrt(n * p * (1 - p))
        assert abs(flips - n * p) <= 4 * sigma


def test_zero_mutations_equals_ipbr():
    rng = random.Random(43)
    for mode in ALL_MODES:
        f = random_formula(rng, mode, n_lo=10)
        base = SolverConfig(seed=17, max_restarts=6, max_flips=4000, cutoff=None)
        a = ipbmr(f, replace(base, max_mutations=0), random.Random(17))
        b = ipbr(f, replace(base, variant="ipbr"), random.Random(17))
        assert a.canonical() == b.canonical()


def test_run_is_deterministic():
    rng = random.Random(44)
    for variant in ("ipbmr", "ipbr", "no-random", "no-break"):
        f = random_formula(rng, Mode.WEIGHTED, n_lo=10)
        cfg = SolverConfig(variant=variant, seed=7, max_flips=3000, cutoff=None)
        assert run(f, cfg).canonical() == run(f, cfg).canonical()


def test_flip_budget_is_exact():
    # optimum stays above zero (far more clauses than assignments can satisfy),
    # so only the flip budget can stop the run
    f = generate(GeneratorSpec(num_vars=10, num_clauses=90, seed=3))
    for variant in ("ipbmr", "ipbr", "no-break"):
        res = run(f, SolverConfig(variant=variant, seed=1, max_flips=1000, cutoff=None))
        assert res.total_flips == 1000


def test_no_break_variant_makes_complete_trajectories():
    f = generate(GeneratorSpec(num_vars=10, num_clauses=80, seed=5))
    outcomes = []
    res = run(
        f,
        SolverConfig(variant="no-break", seed=2, max_flips=1000, cutoff=None),
        on_pb=lambda i, out: outcomes.append(out),
    )
    assert res.pb_calls == 100
    assert all(out.steps_taken == 10 for out in outcomes)


def test_break_rule_multiplies_pb_calls_at_equal_flip_budget():
    f = generate(GeneratorSpec(num_vars=150, num_clauses=639, seed=11))
    budget = 15_000
    with_break = run(f, SolverConfig(seed=4, max_flips=budget, cutoff=None))
    without = run(f, SolverConfig(variant="no-break", seed=4, max_flips=budget, cutoff=None))
    assert with_break.pb_calls >= 2 * without.pb_calls


def test_incumbents_only_improve():
    seen = []
    f = generate(GeneratorSpec(num_vars=30, num_clauses=200, seed=9))
    run(
        f,
        SolverConfig(seed=5, max_flips=5000, cutoff=None),
        on_improve=lambda cost, values, t: seen.append((cost, list(values))),
    )
    assert seen
    for earlier, later in zip(seen, seen[1:]):
        assert later[0] < earlier[0]
    for cost, values in seen:
        assert evaluate(f, values) == cost


def test_target_cost_stops_early():
    f = generate(GeneratorSpec(num_vars=20, num_clauses=85, seed=13))
    res = run(f, SolverConfig(seed=6, max_flips=200_000, cutoff=None,
                              target_cost=Cost(0, 3)))
    assert res.best_cost <= Cost(0, 3)
    assert res.total_flips < 200_000


def test_config_validation():
    f = generate(GeneratorSpec(num_vars=5, num_clauses=5, seed=1))
    for cfg in (
        SolverConfig(variant="nope"),
        SolverConfig(alpha=0),
        SolverConfig(p=1.5),
        SolverConfig(max_mutations=-1),
        SolverConfig(weak_prob=-0.2),
        SolverConfig(max_flips=-5),
    ):
        with pytest.raises(ValueError):
            run(f, cfg)


def reference_ipbmr(formula, config, track=None):
    """Straight transcription of the mutation-augmented driver, with naive
    state handling: a fresh ScoreState per trajectory call and direct
    evaluation everywhere. Used as an oracle for the bookkeeping."""
    rng = random.Random(config.seed)
    p = config.p if config.p is not None else default_p(formula.mode)
    params = PBParams(alpha=config.alpha, p=p)
    n = formula.num_vars

    def rand_values():
        return [bool(rng.getrandbits(1)) for _ in range(n)]

    best = rand_values()
    best_cost = evaluate(formula, best)
    flips = 0
    pb_calls = 0
    restarts = 0
    weak_total = 0
    strong_total = 0

    def done():
        if best_cost == Cost(0, 0):
            return True
        if config.max_flips is not None and flips >= config.max_flips:
            return True
        return False

    while not done() and restarts < config.max_restarts:
        restarts += 1
        cs = rand_values()
        cs_cost = evaluate(formula, cs)
        cbs, cbs_cost = cs, cs_cost
        if cbs_cost < best_cost:
            best, best_cost = cbs, cbs_cost
        weak = strong = 0
        calls_this_restart = 0
        improvements_this_restart = 0
        while not done():
            remaining = None if config.max_flips is None else config.max_flips - flips
            out = pb(ScoreState(formula, cs), params, rng, max_steps=remaining)
            pb_calls += 1
            calls_this_restart += 1
            flips += out.steps_taken
            if out.best_cost < cs_cost:
                improvements_this_restart += 1
                cs, cs_cost = out.best_values, out.best_cost
                if cs_cost < cbs_cost:
                    cbs, cbs_cost = cs, cs_cost
                    weak = strong = 0
                    if cbs_cost < best_cost:
                        best, best_cost = cbs, cbs_cost
            elif weak < config.max_mutations:
                weak += 1
                weak_total += 1
                cs = mutate(cbs, config.weak_prob, rng)
                cs_cost = evaluate(formula, cs)
            elif strong < config.max_mutations:
                strong += 1
                strong_total += 1
                cs = mutate(cbs, config.strong_prob, rng)
                cs_cost = evaluate(formula, cs)
            else:
                break
        if track is not None:
            track.append((calls_this_restart, improvements_this_restart))
    return best, best_cost, flips, pb_calls, restarts, weak_total, strong_total


def test_ipbmr_matches_reference_transcription():
    rng = random.Random(46)
    for mode in ALL_MODES:
        for _ in range(4):
            f = random_formula(rng, mode, n_lo=8)
            cfg = SolverConfig(seed=rng.randrange(10_000), max_restarts=3,
                               max_flips=2500, cutoff=None, max_mutations=4)
            got = ipbmr(f, cfg, random.Random(cfg.seed))
            want = reference_ipbmr(f, cfg)
            assert (
                got.best_values, got.best_cost, got.total_flips, got.pb_calls,
                got.restarts, got.weak_mutations, got.strong_mutations,
            ) == want


def test_pb_calls_per_restart_bounded_by_improvements_and_mutations():
    # every call either improves the current solution, consumes one mutation,
    # or ends the restart
    rng = random.Random(47)
    f = random_formula(rng, Mode.UNWEIGHTED, n_lo=10)
    cfg = SolverConfig(seed=9, max_restarts=5, max_flips=50_000, cutoff=None,
                       max_mutations=3)
    track = []
    reference_ipbmr(f, cfg, track=track)
    for calls, improvements in track:
        assert calls <= improvements + 2 * cfg.max_mutations + 1


def test_restart_limit_respected():
    f = generate(GeneratorSpec(num_vars=12, num_clauses=90, seed=21))
    res = run(f, SolverConfig(seed=3, max_restarts=4, cutoff=None, max_flips=100_000))
    assert res.restarts <= 4


def test_pb_return_costs_counts_every_call():
    f = generate(GeneratorSpec(num_vars=15, num_clauses=100, seed=22))
    res = run(f, SolverConfig(seed=8, max_flips=2000, cutoff=None))
    assert sum(res.pb_return_costs.values()) == res.pb_calls
