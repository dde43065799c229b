"""The seven worked example colonies over the shared 23-proposition space.

Desire tables list 1-based proposition numbers; agent ids are 1-based as well.
Acceptance thresholds are not given for any example and default to 0.5.
"""

from __future__ import annotations

import numpy as np

from .model import Agent, Colony, ConfigurationError, Desire, PropositionSpace, Rumor, TrustMatrix
from .simulation import RunConfig

PRIORITIES = (
    0.8, 0.1, 0.7, 0.3, 0.4, 0.4, 0.6, 0.6, 0.3, 0.2, 0.3, 0.6,
    0.2, 0.8, 0.5, 0.5, 0.1, 0.9, 1.0, 0.4, 0.5, 1.0, 0.2,
)
INITIAL_OBSERVATION = "11101001101110101001010"
VERACITY = 0.5
DEFAULT_THRESHOLD = 0.5

THRESHOLD_NOTE = "accept_threshold 0.5 is a calibration value; none is given with the example"

# (gamma_plus, gamma_minus) per agent
UNIFORM_DESIRE = ((1, 2, 3, 7, 9, 11, 13, 17), (4, 6, 8, 14, 16, 20, 21, 23))

PAIR_NO_CONFLICT = [
    ((1, 2, 3, 10, 11, 13, 17), (4, 6, 8, 14, 20, 21, 23)),
    ((1, 3, 7, 9, 11, 13, 17), (4, 5, 8, 14, 16, 20, 22, 23)),
]

PAIR_CONFLICT = [
    ((2, 5, 10, 11, 13, 17, 18), (4, 6, 8, 19, 20, 23)),
    ((1, 3, 7, 9, 12, 13, 15), (5, 14, 16, 18, 21, 22)),
]

NINE_NO_CONFLICT = [
    ((1, 2, 3, 9, 11, 13, 17), (6, 14, 16, 21, 23)),
    ((4, 12, 22), (5, 6, 14, 21)),
    ((1, 3, 4, 9, 13, 17), (6, 10, 14, 18, 21)),
    ((1, 2, 3, 4, 9, 12, 13), (5, 6, 14, 16, 18, 23)),
    ((1, 2, 3, 4, 12, 13, 17), (5, 6, 14, 18, 23)),
    ((4, 9, 12, 13, 17, 22), (6, 14, 16, 19, 21)),
    ((2, 4, 13, 22), (5, 6, 16)),
    ((3, 12, 13, 22), (10, 18, 23)),
    ((1, 2, 4, 9, 12, 22), (5, 6, 14, 19, 21)),
]

NINE_CONFLICT = [
    ((1, 2, 3, 7, 9, 11, 13, 17), (4, 6, 8, 14, 16, 20, 21, 23)),
    ((4, 12, 18, 22), (5, 6, 7, 14, 20, 21)),
    ((1, 3, 4, 7, 9, 13, 17, 20, 23), (6, 8, 10, 12, 14, 18, 21)),
    ((1, 2, 3, 4, 7, 9, 12, 13, 19), (5, 6, 14, 18, 23)),
    ((1, 2, 3, 4, 7, 9, 12, 13, 19), (5, 6, 14, 18, 23)),
    ((4, 9, 12, 13, 17, 22), (6, 11, 14, 16, 19, 21)),
    ((2, 4, 13, 19, 21, 22), (5, 6, 11, 16, 18)),
    ((3, 6, 12, 13, 22), (7, 10, 18, 23)),
    ((1, 2, 4, 9, 12, 18, 22), (5, 6, 8, 11, 14, 19, 21)),
]

NINE_SPARSE = [
    ((1, 2, 3, 7, 9, 11, 13, 17), (6, 8, 14, 16, 20, 21, 23)),
    ((4, 12, 22), (5, 6, 14, 21)),
    ((1, 3, 4, 9, 13, 17), (6, 8, 10, 14, 18, 21)),
    ((1, 2, 3, 4, 9, 12, 13), (5, 6, 14, 15, 18, 23)),
    ((1, 2, 3, 4, 12, 13, 17), (5, 6, 7, 8, 14, 18, 23)),
    ((4, 9, 12, 13, 17, 22), (6, 14, 16, 19, 21)),
    ((2, 4, 13, 22), (5, 6, 16)),
    ((3, 12, 13, 22), (10, 18, 23)),
    ((1, 2, 4, 9, 12, 18, 22), (5, 6, 14, 19, 21)),
]

PAIR_TRUST = [[1.0, 0.6], [0.6, 1.0]]

NINE_TRUST = [
    [1, 0.3, 0.3, 0.37, 0.3, 0.32, 0.5, 0.58, 0.33],
    [0.3, 1, 0.3, 0.35, 0.36, 0.4, 0.52, 0.79, 0.32],
    [0.3, 0.3, 1, 0.38, 0.36, 0.31, 0.36, 0.58, 0.34],
    [0.37, 0.35, 0.38, 1, 0.37, 0.32, 0.39, 0.63, 0.34],
    [0.3, 0.36, 0.36, 0.37, 1, 0.36, 0.32, 0.53, 0.35],
    [0.32, 0.4, 0.31, 0.32, 0.36, 1, 0.31, 0.39, 0.3],
    [0.5, 0.52, 0.36, 0.39, 0.32, 0.31, 1, 0.41, 0.33],
    [0.58, 0.79, 0.58, 0.63, 0.53, 0.39, 0.41, 1, 0.57],
    [0.33, 0.32, 0.34, 0.34, 0.35, 0.3, 0.33, 0.57, 1],
]

# number -> (desires, trust, observers, reported h_C)
_EXAMPLES = {
    1: ([UNIFORM_DESIRE] * 9, TrustMatrix.uniform(9, 1.0).values, {9}, "1"),
    2: ([UNIFORM_DESIRE] * 9, TrustMatrix.uniform(9, 0.5).values, {9}, "1"),
    3: (PAIR_NO_CONFLICT, PAIR_TRUST, {1}, "1"),
    4: (PAIR_CONFLICT, TrustMatrix.uniform(2, 1.0).values, {1}, "0.3734"),
    5: (NINE_NO_CONFLICT, NINE_TRUST, {9}, None),
    6: (NINE_CONFLICT, NINE_TRUST, {9}, "1.4e-7"),
    7: (NINE_SPARSE, NINE_TRUST, {9}, "1"),
}

_NOTES = {
    2: ["off-diagonal trust is 0.5; self-trust is kept at 1"],
    5: ["trust table violates the transitive bound, e.g. t(1,2)=0.3 < t(1,8)*t(8,2)=0.4582"],
    6: ["trust table shared with example 5"],
    7: ["trust table shared with example 5"],
}


def example_space() -> PropositionSpace:
    return PropositionSpace.numbered(PRIORITIES)


def _desire(plus, minus) -> Desire:
    return Desire(frozenset(p - 1 for p in plus), frozenset(p - 1 for p in minus))


def builtin_example(n: int) -> tuple[Colony, RunConfig]:
    """Colony and default run configuration for worked example ``n`` (1..7)."""
    if n not in _EXAMPLES:
        raise ConfigurationError(f"example out of range: {n} (expected 1..7)")
    desires, trust, observers, reported = _EXAMPLES[n]
    agents = [
        Agent(i + 1, _desire(plus, minus), VERACITY, DEFAULT_THRESHOLD)
        for i, (plus, minus) in enumerate(desires)
    ]
    metadata = {"name": f"example-{n}", "notes": [THRESHOLD_NOTE] + _NOTES.get(n, [])}
    if reported is not None:
        metadata["reported_homogeneity"] = reported
    colony = Colony(
        space=example_space(),
        agents=agents,
        trust=TrustMatrix(np.array(trust, dtype=float)),
        observers=frozenset(observers),
        initial_observation=Rumor.from_string(INITIAL_OBSERVATION),
        metadata=metadata,
    )
    return colony, RunConfig()
