"""
Convergence over many seeds
===========================

Whether a colony settles is a random event, so we repeat each example over
a range of seeds and count how often a full window of zero instability
occurs within the generation budget.
"""

from rumornet import RunConfig, builtin_example, sweep

SEEDS = range(20)

for n in range(1, 8):
    colony, config = builtin_example(n)
    result = sweep(colony, config, SEEDS)
    mean = result.mean_converged_at
    print(f"example {n}: converged {result.converged_fraction:.0%}"
          f"  mean start {'-' if mean is None else round(mean)}")

# %%
# The acceptance ratio can also be taken over all propositions rather than
# only the ones an agent cares about.  Agents with small desires then reject
# almost everything, which changes the outcome for example 5.
colony, _ = builtin_example(5)
strict = RunConfig(accept_mode="eq8")
print("example 5, eq8:", sweep(colony, strict, SEEDS).converged_fraction)
