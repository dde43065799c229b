"""Generation loop: one uniformly drawn agent acts per generation until the
generation budget runs out or the colony has been stable for a full window."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dissemination import GENERATOR_NAME, AcceptMode, Action, RandomSource, take_turn
from .metrics import (
    GenerationRecord,
    Trace,
    consensus,
    homogeneity,
    individual_instability,
)
from .model import Colony, ConfigurationError, validate_colony


@dataclass(frozen=True)
class RunConfig:
    generations: int = 5000
    seed: int = 0
    accept_mode: AcceptMode = AcceptMode.ALG5
    stability_window: int | None = None  # None -> 20 * number of agents

    def __post_init__(self):
        object.__setattr__(self, "accept_mode", AcceptMode(self.accept_mode))
        if self.generations < 1:
            raise ConfigurationError("generations must be at least 1")
        if self.stability_window is not None and self.stability_window < 1:
            raise ConfigurationError("stability_window must be at least 1")

    def window_for(self, colony: Colony) -> int:
        if self.stability_window is not None:
            return self.stability_window
        return 20 * len(colony.agents)

    def with_overrides(self, **changes) -> "RunConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def seed_observers(colony: Colony) -> None:
    """Give every observer the actual event at full weight; everyone else starts empty."""
    for agent in colony.agents:
        agent.box.clear()
        agent.last_promoted = None
        if agent.id in colony.observers:
            agent.box.put(colony.initial_observation, agent.id, 1.0)


class Simulation:
    """A single seeded run over a private copy of ``colony``.

    Individual instabilities are cached and refreshed only for agents whose
    reference version can have changed in the last turn.
    """

    def __init__(self, colony: Colony, config: RunConfig | None = None):
        report = validate_colony(colony)
        if not report.ok:
            raise ConfigurationError("; ".join(report.errors))
        self.config = config or RunConfig()
        self.colony = colony.copy()
        seed_observers(self.colony)
        self.rng = RandomSource(self.config.seed)
        self.window = self.config.window_for(self.colony)
        self.homogeneity = homogeneity(self.colony)
        self.records: list[GenerationRecord] = []
        self.converged_at: int | None = None
        self._omega = np.array([individual_instability(a) for a in self.colony.agents])
        self._zero_start: int | None = None

    @property
    def generation(self) -> int:
        return len(self.records)

    def step(self) -> GenerationRecord:
        colony = self.colony
        pos = self.rng.integers(len(colony.agents))
        active = colony.agents[pos]
        outcome = take_turn(colony, active.id, self.config.accept_mode, self.rng)
        if outcome.action is Action.SPREAD:
            for i, agent in enumerate(colony.agents):
                if i == pos or agent.last_promoted is None:
                    self._omega[i] = individual_instability(agent)
        instability = float(self._omega.sum()) / len(self._omega)
        record = GenerationRecord(self.generation, outcome, instability, consensus(colony))
        self.records.append(record)

        if instability == 0.0:
            if self._zero_start is None:
                self._zero_start = record.generation
            if record.generation - self._zero_start + 1 >= self.window:
                self.converged_at = self._zero_start
        else:
            self._zero_start = None
        return record

    def run(self) -> Trace:
        while self.generation < self.config.generations and self.converged_at is None:
            self.step()
        return self.trace()

    def trace(self) -> Trace:
        return Trace(
            records=list(self.records),
            homogeneity=self.homogeneity,
            converged_at=self.converged_at,
            seed=self.config.seed,
            mode=self.config.accept_mode.value,
            window=self.window,
            generator=GENERATOR_NAME,
        )


def run(colony: Colony, config: RunConfig | None = None) -> Trace:
    """Simulate ``colony`` (left untouched) and return the full trace."""
    return Simulation(colony, config).run()


@dataclass(frozen=True)
class SweepResult:
    seeds: tuple[int, ...]
    traces: tuple[Trace, ...]

    @property
    def converged(self) -> list[bool]:
        return [t.converged for t in self.traces]

    @property
    def converged_fraction(self) -> float:
        return sum(self.converged) / len(self.traces)

    @property
    def mean_converged_at(self) -> float | None:
        hits = [t.converged_at for t in self.traces if t.converged_at is not None]
        return sum(hits) / len(hits) if hits else None


def _run_seed(args: tuple[Colony, RunConfig]) -> Trace:
    colony, config = args
    return run(colony, config)


def sweep(colony: Colony, config: RunConfig, seeds, jobs: int = 1) -> SweepResult:
    """Run one simulation per seed; ``jobs > 1`` spreads seeds over worker processes."""
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ConfigurationError("seed range is empty")
    tasks = [(colony, replace(config, seed=s)) for s in seeds]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            traces = tuple(pool.map(_run_seed, tasks))
    else:
        traces = tuple(_run_seed(t) for t in tasks)
    return SweepResult(seeds, traces)


def with_threshold(colony: Colony, threshold: float) -> Colony:
    """Copy of ``colony`` with every agent's accept threshold set to ``threshold``."""
    out = colony.copy()
    for agent in out.agents:
        if not 0.0 <= threshold <= 1.0:
            raise ConfigurationError(f"threshold {threshold} outside [0, 1]")
        agent.accept_threshold = float(threshold)
    return out
