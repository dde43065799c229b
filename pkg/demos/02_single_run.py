"""
One seeded run
==============

A single observer starts with the actual event.  Each generation one agent
is drawn at random, merges what it has heard, and passes on its own version
if it finds the merged story acceptable.  Social instability is the mean
number of propositions each agent would still like to change, scaled by how
willing it is to lie.
"""

import numpy as np

from rumornet import builtin_example, run

colony, config = builtin_example(3)
trace = run(colony, config.with_overrides(seed=7))

print("homogeneity", trace.homogeneity)
print("generations simulated", len(trace.records))
print("stable from generation", trace.converged_at)

inst = trace.instabilities
print("first nonzero instability values", np.round(inst[inst > 0][:10], 3))

# %%
# The first few turns: who acted, what they did, and which bit they flipped
for rec in trace.records[:12]:
    o = rec.outcome
    print(rec.generation, o.agent_id, o.action.value, o.promoted, o.mutated_index)

# %%
# A conflicting pair keeps re-editing the same propositions and never settles.
colony, config = builtin_example(4)
trace = run(colony, config.with_overrides(seed=7, generations=2000))
print("example 4 stable from", trace.converged_at,
      "mean instability", trace.instabilities.mean().round(3))
