"""
Solve a small weighted-partial instance end to end
==================================================

Generates a random instance, runs the solver, and double-checks the answer
against the exhaustive oracle (feasible here because the instance is tiny).
"""

from pathbreak import (
    GeneratorSpec,
    Mode,
    SolverConfig,
    brute_force,
    check_solution,
    generate,
    run,
    write_dimacs,
)

spec = GeneratorSpec(
    num_vars=18,
    num_clauses=60,
    mode=Mode.WEIGHTED_PARTIAL,
    weight_range=(1, 9),
    hard_fraction=0.15,
    seed=7,
)
formula = generate(spec)
print(f"instance: {formula.num_vars} vars, {len(formula.clauses)} clauses, "
      f"{formula.hard_count()} hard, top {formula.top}")

# the solver reports progress through on_improve; collect the incumbent trail
trail = []
result = run(
    formula,
    SolverConfig(seed=1, max_flips=50_000, cutoff=10.0),
    on_improve=lambda cost, values, t: trail.append(cost),
)
print("incumbent trail:", " -> ".join(f"{c.hard}:{c.soft}" for c in trail))
print(f"best found: hard {result.best_cost.hard}, soft weight {result.best_cost.soft} "
      f"after {result.total_flips} flips, {result.restarts} restarts")

assert check_solution(formula, result.best_values, result.best_cost)

optimum, witness = brute_force(formula)
print(f"exhaustive optimum: {optimum.hard}:{optimum.soft}")
if result.best_cost == optimum:
    print("solver matched the optimum")
else:
    print("solver fell short by", result.best_cost.soft - optimum.soft, "weight")

# the instance can be written back out in standard form
print()
print(write_dimacs(formula).splitlines()[0], "... and", len(formula.clauses), "clause lines")
