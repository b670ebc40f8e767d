"""
Why trajectories are worth cutting short
========================================

A complete trajectory flips every variable once, walking from a random
assignment to its inverse. Watching the best candidate score along the way
shows the walk stops being useful early: a short positive phase, then a long
tail where every remaining flip hurts. That tail is what the break rule
skips.
"""

from collections import defaultdict

from pathbreak import GeneratorSpec, PBParams, generate, trajectory_dump

n = 120
formula = generate(GeneratorSpec(num_vars=n, num_clauses=4 * n, seed=3))

rows = trajectory_dump(formula, PBParams(), count=6, seed=12)
by_trajectory = defaultdict(list)
for t, step, max_score in rows:
    by_trajectory[t].append(max_score)

# render each trajectory as a strip: + positive, . zero, - negative
for t, scores in by_trajectory.items():
    strip = "".join("+" if s > 0 else "." if s == 0 else "-" for s in scores)
    last_pos = max((i for i, s in enumerate(scores) if s > 0), default=None)
    print(f"trajectory {t}: last positive step {last_pos:>3} of {n}")
    print(f"  {strip}")

import statistics

last_positive = [max((i for i, s in enumerate(v) if s > 0), default=0)
                 for v in by_trajectory.values()]
dense_phase = [next(i for i, s in enumerate(v) if s <= 0)
               for v in by_trajectory.values()]
print()
print(f"the dense positive phase ends around step {max(dense_phase)}; after "
      f"that only scattered blips remain (median last one at step "
      f"{statistics.median(last_positive):.0f}) and every walk finishes in "
      f"a long all-negative tail")
