"""Static colony measures (distance, conflict, heterogeneity, homogeneity) and
per-generation instability."""

from __future__ import annotations

import math
import warnings
from decimal import Decimal
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dissemination import TurnOutcome, merge_box, unaccepted_count
from .model import Agent, Colony, PropositionSpace


class HomogeneityMismatchWarning(UserWarning):
    """Computed homogeneity disagrees with the value recorded for a fixture."""


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    outcome: TurnOutcome
    instability: float
    consensus: bool


@dataclass
class Trace:
    records: list[GenerationRecord]
    homogeneity: float
    converged_at: int | None
    seed: int
    mode: str
    window: int
    generator: str = ""
    metadata: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.converged_at is not None

    @property
    def instabilities(self) -> np.ndarray:
        return np.array([r.instability for r in self.records])


def conflicts(a: Agent, b: Agent) -> frozenset[int]:
    """Propositions one agent wants true and the other wants false."""
    da, db = a.desire, b.desire
    return (da.gamma_plus & db.gamma_minus) | (da.gamma_minus & db.gamma_plus)


def identical_distance(a: Agent, b: Agent, space: PropositionSpace) -> float:
    """Priority-weighted Euclidean distance over the propositions the two agents conflict on.

    Equivalent to ``sqrt(sum_k floor(|M_ak - M_bk| / 2) * delta_k**2)`` on the
    membership vectors, since only opposite signs give ``|M_ak - M_bk| = 2``.
    """
    prio = space.priority_array
    return math.sqrt(sum(prio[k] ** 2 for k in conflicts(a, b)))


def heterogeneity(a: Agent, b: Agent, trust: float, space: PropositionSpace) -> float:
    """``d(a, b) * trust * (1 - veracity_a)`` where ``trust`` is what ``a`` places in ``b``.

    Not symmetric: only the first agent's veracity enters.
    """
    return identical_distance(a, b, space) * float(trust) * (1.0 - a.veracity)


def heterogeneity_matrix(colony: Colony) -> np.ndarray:
    """Pairwise ``H[a, b]`` over agent positions."""
    n = len(colony.agents)
    h = np.zeros((n, n))
    t = colony.trust.values
    for i, a in enumerate(colony.agents):
        for j, b in enumerate(colony.agents):
            if i != j:
                h[i, j] = heterogeneity(a, b, t[i, j], colony.space)
    return h


def homogeneity(colony: Colony) -> float:
    """``exp(-sum H[a, b])`` over all ordered agent pairs."""
    return math.exp(-float(heterogeneity_matrix(colony).sum()))


def conflicting_pairs(colony: Colony) -> dict[tuple[int, int], list[str]]:
    """Agent-id pairs (unordered) whose desires conflict, with the proposition names."""
    out = {}
    agents = colony.agents
    for i, a in enumerate(agents):
        for b in agents[i + 1:]:
            ks = conflicts(a, b)
            if ks:
                out[(a.id, b.id)] = [colony.space.names[k] for k in sorted(ks)]
    return out


def check_reported_homogeneity(colony: Colony) -> tuple[float, str | None]:
    """Compare the computed homogeneity with ``metadata['reported_homogeneity']``.

    The reported value is a decimal string; agreement means lying within one
    unit of its last digit.  A reported ``1`` must hold to 1e-12.  On
    disagreement a :class:`HomogeneityMismatchWarning` is issued and its
    message returned.
    """
    value = homogeneity(colony)
    reported = colony.metadata.get("reported_homogeneity")
    if reported is None:
        return value, None
    target = Decimal(str(reported))
    if target == 1:
        agrees = abs(value - 1.0) <= 1e-12
    else:
        unit = 10.0 ** target.as_tuple().exponent
        agrees = abs(value - float(target)) <= unit
    if agrees:
        return value, None
    msg = f"computed h_C={value:.6g} differs from the reported value {reported}"
    pairs = conflicting_pairs(colony)
    if pairs:
        shown = "; ".join(f"{a}-{b} on {','.join(ks)}" for (a, b), ks in list(pairs.items())[:6])
        more = f" (+{len(pairs) - 6} more)" if len(pairs) > 6 else ""
        msg += f"; conflicting agent pairs: {shown}{more}"
    warnings.warn(msg, HomogeneityMismatchWarning, stacklevel=2)
    return value, msg


def reference_version(agent: Agent):
    """Version used for the agent's instability: last promoted, else merged box, else None."""
    if agent.last_promoted is not None:
        return agent.last_promoted
    if agent.box:
        return merge_box(agent.box)
    return None


def individual_instability(agent: Agent) -> float:
    """``|unaccepted in reference version| * (1 - veracity)``; 0 when the agent holds nothing."""
    if agent.veracity >= 1.0:
        return 0.0
    ref = reference_version(agent)
    if ref is None:
        return 0.0
    return unaccepted_count(ref, agent.desire) * (1.0 - agent.veracity)


def social_instability(colony: Colony) -> float:
    return float(np.mean([individual_instability(a) for a in colony.agents]))


def consensus(colony: Colony) -> bool:
    """True when every agent has promoted and all promoted versions are identical."""
    versions = {a.last_promoted for a in colony.agents}
    return len(versions) == 1 and None not in versions


def detect_convergence(instabilities: Sequence[float], window: int) -> int | None:
    """First generation starting a run of ``window`` consecutive exactly-zero instabilities."""
    if window < 1:
        raise ValueError("window must be at least 1")
    run_start, run_len = None, 0
    for t, value in enumerate(instabilities):
        if value == 0.0:
            if run_len == 0:
                run_start = t
            run_len += 1
            if run_len >= window:
                return run_start
        else:
            run_len = 0
    return None
