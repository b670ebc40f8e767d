"""
Comparing the solver variants on one hard instance
==================================================

Same instance, same seeds, same flip budget; only the search strategy
changes. Dropping the mutation ladder (ipbr) throws away the good parts of
each local optimum and costs solution quality directly. Disabling the break
rule is a subtler trade: each complete walk is a full descent and returns a
strong solution, but it burns the whole budget on a handful of trajectories,
so the run explores a fraction of the regions the others do.
"""

import io

from pathbreak import (
    GeneratorSpec,
    SolverConfig,
    VARIANTS,
    generate,
    run,
    write_dimacs,
    run_suite,
    summary_rows,
    variant_standings,
    write_csv,
    SUMMARY_HEADER,
)

formula = generate(GeneratorSpec(num_vars=150, num_clauses=639, seed=5))

budget = 30_000
print(f"one instance, {budget} flips per run, one run per variant")
for variant in VARIANTS:
    result = run(formula, SolverConfig(variant=variant, seed=2,
                                       max_flips=budget, cutoff=None))
    mean_steps = result.total_flips / result.pb_calls
    print(f"  {variant:<10} best {result.best_cost.soft:>2} falsified   "
          f"{result.pb_calls:>5} trajectory calls   "
          f"{mean_steps:>5.1f} steps/call   {result.restarts} restarts")

# the bench harness does the multi-seed version of the same comparison
import tempfile
from pathlib import Path

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "shootout.cnf"
    path.write_text(write_dimacs(formula))
    suite = run_suite([path], ["ipbmr", "ipbr"],
                      SolverConfig(seed=0, max_flips=10_000, cutoff=None),
                      repetitions=5)

print()
print("bench summary (5 seeds each):")
buf = io.StringIO()
write_csv(buf, SUMMARY_HEADER, summary_rows(suite))
print(buf.getvalue())
for variant, wins, time_sum in variant_standings(suite):
    print(f"{variant}: {wins} win(s), {time_sum:.3f}s total time to best")
