"""Turn-by-turn rumor spreading: merge, classify, accept, mutate, hear."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .model import Agent, Colony, ConfigurationError, Desire, PropositionSpace, Rumor, RumorBox

GENERATOR_NAME = "numpy.PCG64"


class AcceptMode(str, enum.Enum):
    EQ8 = "eq8"  # accepted / all propositions
    ALG5 = "alg5"  # attractiveness + accepted / considerable propositions


class Action(str, enum.Enum):
    SKIPPED_EMPTY_BOX = "skipped_empty_box"
    REJECTED = "rejected"
    SPREAD = "spread"


class RandomSource:
    """Seeded PCG64 stream; the same seed and call sequence gives the same draws."""

    def __init__(self, seed: int = 0):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def random(self) -> float:
        return float(self._gen.random())

    def integers(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        return int(self._gen.integers(n))


@dataclass(frozen=True)
class Classification:
    accepted: frozenset[int]
    unaccepted: frozenset[int]
    inconsiderable: frozenset[int]


@dataclass(frozen=True)
class TurnOutcome:
    agent_id: int
    action: Action
    promoted: Rumor | None = None
    mutated_index: int | None = None
    accept_ratio: float = float("nan")


def merge_box(box: RumorBox | Iterable) -> Rumor:
    """Trust-weighted bitwise majority of the box; an exact half resolves to 1.

    A box whose weights sum to zero merges to the all-zero rumor.
    """
    entries = list(box)
    if not entries:
        raise ValueError("cannot merge an empty rumor box")
    bits = np.array([e.rumor.array for e in entries], dtype=float)
    weights = np.array([e.weight for e in entries], dtype=float)
    total = weights.sum()
    if total <= 0.0:
        return Rumor((0,) * bits.shape[1])
    # floor(1/2 + num/total) == 1  <=>  2*num >= total
    num = weights @ bits
    return Rumor.from_array(2.0 * num >= total)


def _counts(rumor: Rumor, desire: Desire) -> tuple[np.ndarray, np.ndarray]:
    plus, minus = desire.masks(len(rumor))
    b = rumor.array
    accepted = (b & plus) | (~b & minus)
    unaccepted = (~b & plus) | (b & minus)
    return accepted, unaccepted


def classify(rumor: Rumor, desire: Desire) -> Classification:
    """Split proposition indices into accepted, unaccepted and inconsiderable for ``desire``."""
    accepted, unaccepted = _counts(rumor, desire)
    acc = frozenset(np.flatnonzero(accepted).tolist())
    unacc = frozenset(np.flatnonzero(unaccepted).tolist())
    rest = frozenset(range(len(rumor))) - acc - unacc
    return Classification(acc, unacc, rest)


def unaccepted_count(rumor: Rumor, desire: Desire) -> int:
    return int(_counts(rumor, desire)[1].sum())


def accept(
    rumor: Rumor,
    agent: Agent,
    attractiveness: float = 0.0,
    mode: AcceptMode | str = AcceptMode.ALG5,
) -> tuple[bool, float]:
    """Decide whether ``agent`` adopts ``rumor``.  Returns ``(decision, ratio)``.

    ``eq8``: ratio = accepted / |P|, accept iff ratio > threshold.
    ``alg5``: ratio = accepted / (accepted + unaccepted), 1 when the agent has
    no considerable propositions; accept iff attractiveness + ratio > threshold.
    """
    mode = AcceptMode(mode)
    accepted, unaccepted = _counts(rumor, agent.desire)
    n_acc = int(accepted.sum())
    if mode is AcceptMode.EQ8:
        ratio = n_acc / len(rumor)
        return ratio > agent.accept_threshold, ratio
    considered = n_acc + int(unaccepted.sum())
    ratio = 1.0 if considered == 0 else n_acc / considered
    return attractiveness + ratio > agent.accept_threshold, ratio


def select_mutation_target(
    unaccepted: Iterable[int], space: PropositionSpace, rng: RandomSource
) -> int:
    """Roulette-wheel choice over ``unaccepted`` weighted by proposition priority.

    Falls back to a uniform choice when every candidate has priority 0.
    """
    candidates = sorted(unaccepted)
    if not candidates:
        raise ValueError("no unaccepted propositions to select from")
    weights = space.priority_array[candidates]
    total = weights.sum()
    u = rng.random()
    if total <= 0.0:
        return candidates[min(int(u * len(candidates)), len(candidates) - 1)]
    cumulative = np.cumsum(weights)
    k = int(np.searchsorted(cumulative, u * total, side="right"))
    return candidates[min(k, len(candidates) - 1)]


def mutate(
    rumor: Rumor, agent: Agent, space: PropositionSpace, rng: RandomSource
) -> tuple[Rumor, int | None]:
    """Pick one unaccepted proposition by priority and flip it with probability 1 - veracity."""
    _, unaccepted = _counts(rumor, agent.desire)
    if not unaccepted.any():
        return rumor, None
    target = select_mutation_target(np.flatnonzero(unaccepted).tolist(), space, rng)
    if rng.random() < 1.0 - agent.veracity:
        return rumor.flip(target), target
    return rumor, None


def hear(receiver: Agent, rumor: Rumor, spreader_id: int, trust: float) -> bool:
    """Store ``rumor`` in the receiver's box unless an identical version is already there."""
    if not 0.0 <= trust <= 1.0:
        raise ValueError(f"trust {trust} outside [0, 1]")
    return receiver.box.put(rumor, spreader_id, trust)


def take_turn(
    colony: Colony,
    agent_id: int,
    mode: AcceptMode | str = AcceptMode.ALG5,
    rng: RandomSource | None = None,
) -> TurnOutcome:
    """Run one agent's turn in place: merge its box, accept or reject, mutate and broadcast."""
    pos = colony.position(agent_id)
    agent = colony.agents[pos]
    if not agent.box:
        return TurnOutcome(agent_id, Action.SKIPPED_EMPTY_BOX)
    merged = merge_box(agent.box)
    ok, ratio = accept(merged, agent, colony.attractiveness, mode)
    if not ok:
        return TurnOutcome(agent_id, Action.REJECTED, accept_ratio=ratio)
    if rng is None:
        rng = RandomSource()
    promoted, flipped = mutate(merged, agent, colony.space, rng)
    agent.last_promoted = promoted
    trust = colony.trust.values
    for r, receiver in enumerate(colony.agents):
        if r != pos:
            hear(receiver, promoted, agent_id, float(trust[r, pos]))
    agent.box.clear()
    agent.box.put(promoted, agent_id, 1.0)
    return TurnOutcome(agent_id, Action.SPREAD, promoted, flipped, ratio)
