"""
Homogeneity of the seven example colonies
=========================================

Homogeneity is a static property of a colony: it depends only on desires,
trust and veracity, so no simulation is needed.  Pairs whose desires point
in opposite directions on some proposition pull the value below 1.
"""

import warnings

import numpy as np

from rumornet import builtin_example, check_reported_homogeneity, heterogeneity_matrix
from rumornet.metrics import HomogeneityMismatchWarning, conflicting_pairs

warnings.simplefilter("ignore", HomogeneityMismatchWarning)

for n in range(1, 8):
    colony, _ = builtin_example(n)
    value, mismatch = check_reported_homogeneity(colony)
    recorded = colony.metadata.get("reported_homogeneity", "-")
    print(f"example {n}: {len(colony.agents)} agents  h_C={value:.6g}  recorded={recorded}")
    if mismatch:
        print("    differs from the recorded value")

# %%
# The two-agent colony of example 4 disagrees on two propositions.  Each
# direction of the pair contributes the same heterogeneity because both
# agents have the same veracity.
colony, _ = builtin_example(4)
print(conflicting_pairs(colony))
print(np.round(heterogeneity_matrix(colony), 5))

# %%
# Raising one agent's veracity to 1 removes its row from the sum.
colony.agents[0].veracity = 1.0
print(np.round(heterogeneity_matrix(colony), 5))
