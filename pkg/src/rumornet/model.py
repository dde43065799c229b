"""Domain types for the rumor model: propositions, rumors, desires, agents, colonies.

Construction is deliberately permissive for the colony-level structures so that
:func:`validate_colony` can report every problem at once instead of failing on
the first one.  Scalar ranges on agents and propositions are checked eagerly.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np


class ConfigurationError(ValueError):
    """Raised when model data is structurally invalid."""


@dataclass(frozen=True)
class PropositionSpace:
    names: tuple[str, ...]
    priorities: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "priorities", tuple(float(p) for p in self.priorities))
        if len(self.names) < 1:
            raise ConfigurationError("proposition space must contain at least one proposition")
        if len(self.names) != len(self.priorities):
            raise ConfigurationError(
                f"{len(self.names)} names but {len(self.priorities)} priorities"
            )
        if len(set(self.names)) != len(self.names):
            raise ConfigurationError("proposition names must be unique")
        for name, p in zip(self.names, self.priorities):
            if not 0.0 <= p <= 1.0:
                raise ConfigurationError(f"priority of {name} is {p}, outside [0, 1]")

    @classmethod
    def numbered(cls, priorities: Sequence[float], prefix: str = "p") -> "PropositionSpace":
        """Space with names ``p1 .. pn``."""
        return cls(tuple(f"{prefix}{i + 1}" for i in range(len(priorities))), tuple(priorities))

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def priority_array(self) -> np.ndarray:
        return np.asarray(self.priorities, dtype=float)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConfigurationError(f"unknown proposition {name!r}") from None


@dataclass(frozen=True)
class Rumor:
    """A CLF formula over the proposition space, stored as its bit string."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ConfigurationError(f"rumor bits must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "Rumor":
        if not text or any(c not in "01" for c in text):
            raise ConfigurationError(f"not a bit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_array(cls, arr) -> "Rumor":
        return cls._trusted(tuple(np.asarray(arr, dtype=np.int8).tolist()))

    @classmethod
    def _trusted(cls, bits: tuple[int, ...]) -> "Rumor":
        # skips validation; callers guarantee a tuple of 0/1 ints
        obj = object.__new__(cls)
        object.__setattr__(obj, "bits", bits)
        return obj

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash(self.bits)
        return h

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.bits, dtype=bool)
        arr.flags.writeable = False
        return arr

    def flip(self, index: int) -> "Rumor":
        bits = list(self.bits)
        bits[index] = 1 - bits[index]
        return Rumor._trusted(tuple(bits))


@dataclass(frozen=True)
class Desire:
    """Wished-true (``gamma_plus``) and wished-false (``gamma_minus``) proposition indices.

    Disjointness is not enforced here; :func:`validate_colony` reports overlaps.
    """

    gamma_plus: frozenset[int] = frozenset()
    gamma_minus: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "gamma_plus", frozenset(int(i) for i in self.gamma_plus))
        object.__setattr__(self, "gamma_minus", frozenset(int(i) for i in self.gamma_minus))

    @property
    def considerable(self) -> frozenset[int]:
        return self.gamma_plus | self.gamma_minus

    @property
    def overlap(self) -> frozenset[int]:
        return self.gamma_plus & self.gamma_minus

    def masks(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Boolean membership masks (plus, minus) over ``n`` propositions."""
        cached = self.__dict__.get("_masks")
        if cached is not None and cached[0].shape[0] == n:
            return cached
        for i in self.gamma_plus | self.gamma_minus:
            if not 0 <= i < n:
                raise ConfigurationError(f"desire references proposition index {i}, space has {n}")
        plus = np.zeros(n, dtype=bool)
        minus = np.zeros(n, dtype=bool)
        plus[list(self.gamma_plus)] = True
        minus[list(self.gamma_minus)] = True
        plus.flags.writeable = False
        minus.flags.writeable = False
        self.__dict__["_masks"] = (plus, minus)
        return plus, minus

    @classmethod
    def from_vector(cls, vector: Iterable[int]) -> "Desire":
        """Inverse of :func:`desire_vector`."""
        plus, minus = set(), set()
        for k, v in enumerate(vector):
            if v == 1:
                plus.add(k)
            elif v == -1:
                minus.add(k)
            elif v != 0:
                raise ConfigurationError(f"desire vector entries must be -1, 0 or 1, got {v}")
        return cls(frozenset(plus), frozenset(minus))


def desire_vector(desire: Desire, space: PropositionSpace | int) -> tuple[int, ...]:
    """Membership vector over the space: +1 wished true, -1 wished false, 0 otherwise."""
    n = space if isinstance(space, int) else len(space)
    if desire.overlap:
        raise ConfigurationError(f"propositions {sorted(desire.overlap)} are in both desire sets")
    plus, minus = desire.masks(n)
    return tuple(int(v) for v in plus.astype(int) - minus.astype(int))


@dataclass(frozen=True)
class BoxEntry:
    rumor: Rumor
    spreader_id: int
    weight: float


class RumorBox:
    """Received versions of the rumor, at most one entry per distinct bit string."""

    def __init__(self, entries: Iterable[BoxEntry] = ()):
        self._entries: list[BoxEntry] = []
        self._seen: set[Rumor] = set()
        for e in entries:
            self.put(e.rumor, e.spreader_id, e.weight)

    def contains(self, rumor: Rumor) -> bool:
        return rumor in self._seen

    __contains__ = contains

    def put(self, rumor: Rumor, spreader_id: int, weight: float) -> bool:
        """Append unless an identical rumor is already held.  Returns True if stored."""
        if rumor in self._seen:
            return False
        self._entries.append(BoxEntry(rumor, spreader_id, float(weight)))
        self._seen.add(rumor)
        return True

    def clear(self) -> None:
        self._entries.clear()
        self._seen.clear()

    @property
    def entries(self) -> tuple[BoxEntry, ...]:
        return tuple(self._entries)

    def __iter__(self) -> Iterator[BoxEntry]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RumorBox):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        inner = ", ".join(f"({e.rumor}, {e.spreader_id}, {e.weight:g})" for e in self._entries)
        return f"RumorBox([{inner}])"


@dataclass(eq=False)
class Agent:
    id: int
    desire: Desire
    veracity: float
    accept_threshold: float = 0.5
    box: RumorBox = field(default_factory=RumorBox)
    last_promoted: Rumor | None = None

    def __post_init__(self):
        self.veracity = float(self.veracity)
        self.accept_threshold = float(self.accept_threshold)
        if not 0.0 <= self.veracity <= 1.0:
            raise ConfigurationError(f"agent {self.id}: veracity {self.veracity} outside [0, 1]")
        if not 0.0 <= self.accept_threshold <= 1.0:
            raise ConfigurationError(
                f"agent {self.id}: accept_threshold {self.accept_threshold} outside [0, 1]"
            )


@dataclass(frozen=True, eq=False)
class TrustMatrix:
    """``values[a, s]`` is the trust receiver ``a`` places in spreader ``s`` (positional indices)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 2:
            raise ConfigurationError(f"trust matrix must be 2-D, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def uniform(cls, n: int, value: float) -> "TrustMatrix":
        """Every off-diagonal entry ``value``; diagonal 1."""
        m = np.full((n, n), float(value))
        np.fill_diagonal(m, 1.0)
        return cls(m)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    def __getitem__(self, key):
        return self.values[key]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrustMatrix):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(np.all(self.values == other.values))


@dataclass(eq=False)
class Colony:
    space: PropositionSpace
    agents: list[Agent]
    trust: TrustMatrix
    observers: frozenset[int]
    initial_observation: Rumor
    attractiveness: float = 0.0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.agents = list(self.agents)
        self.observers = frozenset(self.observers)
        self.attractiveness = float(self.attractiveness)
        if not isinstance(self.trust, TrustMatrix):
            self.trust = TrustMatrix(self.trust)

    def __len__(self) -> int:
        return len(self.agents)

    @property
    def ids(self) -> list[int]:
        return [a.id for a in self.agents]

    def position(self, agent_id: int) -> int:
        """Row/column of ``agent_id`` in the trust matrix."""
        for i, a in enumerate(self.agents):
            if a.id == agent_id:
                return i
        raise ConfigurationError(f"no agent with id {agent_id}")

    def agent(self, agent_id: int) -> Agent:
        return self.agents[self.position(agent_id)]

    def copy(self) -> "Colony":
        return copy.deepcopy(self)


@dataclass
class ValidationReport:
    diagonal_violations: list[int] = field(default_factory=list)
    triangle_violations: list[tuple[int, int, int]] = field(default_factory=list)
    desire_overlaps: dict[int, list[int]] = field(default_factory=dict)
    dimension_errors: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when there are no errors; warnings are allowed."""
        return not self.errors

    def lines(self) -> list[str]:
        out = [f"error: {e}" for e in self.errors]
        out += [f"warning: {w}" for w in self.warnings]
        return out


def validate_colony(colony: Colony, tol: float = 1e-12) -> ValidationReport:
    """Check the structural invariants and trust assumptions of a colony.

    Never raises.  Self-trust other than 1, desire overlaps, out-of-range
    indices and dimension mismatches are errors.  Violations of the
    transitive trust bound ``t[a,b] >= t[a,c] * t[c,b]`` are warnings, reported
    as agent-id triples ``(a, b, c)``.
    """
    rep = ValidationReport()
    n_agents = len(colony.agents)
    n_props = len(colony.space)
    ids = [a.id for a in colony.agents]

    if len(set(ids)) != len(ids):
        rep.dimension_errors.append(f"agent ids are not unique: {ids}")
    if colony.trust.shape != (n_agents, n_agents):
        rep.dimension_errors.append(
            f"trust matrix has shape {colony.trust.shape}, expected ({n_agents}, {n_agents})"
        )
    if len(colony.initial_observation) != n_props:
        rep.dimension_errors.append(
            f"initial_observation has length {len(colony.initial_observation)}, expected {n_props}"
        )
    unknown = sorted(colony.observers - set(ids))
    if unknown:
        rep.dimension_errors.append(f"observers {unknown} are not agent ids")
    if not colony.observers:
        rep.errors.append("observer set is empty")
    elif colony.observers >= set(ids):
        rep.errors.append("observer set must be a strict subset of the agents")
    if not 0.0 <= colony.attractiveness <= 1.0:
        rep.errors.append(f"attractiveness {colony.attractiveness} outside [0, 1]")

    for a in colony.agents:
        bad = sorted(i for i in a.desire.considerable if not 0 <= i < n_props)
        if bad:
            rep.dimension_errors.append(f"agent {a.id}: desire indices {bad} out of range")
        if a.desire.overlap:
            rep.desire_overlaps[a.id] = sorted(a.desire.overlap)
            names = [colony.space.names[i] for i in sorted(a.desire.overlap) if 0 <= i < n_props]
            rep.errors.append(f"agent {a.id}: {names} in both gamma_plus and gamma_minus")

    if colony.trust.shape == (n_agents, n_agents):
        t = colony.trust.values
        if np.any((t < 0.0) | (t > 1.0)):
            rep.errors.append("trust values must lie in [0, 1]")
        for i in np.flatnonzero(np.abs(np.diag(t) - 1.0) > tol):
            rep.diagonal_violations.append(ids[i])
            rep.errors.append(f"agent {ids[i]} trusts itself {t[i, i]:g}, expected 1")
        # via[a, c, b] = t[a, c] * t[c, b]
        via = t[:, :, None] * t[None, :, :]
        bad = np.argwhere(t[:, None, :] < via - tol)
        for a, c, b in bad:
            rep.triangle_violations.append((ids[a], ids[b], ids[c]))
        rep.triangle_violations.sort()
        for a, b, c in rep.triangle_violations:
            i, j, k = ids.index(a), ids.index(b), ids.index(c)
            rep.warnings.append(
                f"triangle ({a},{b},{c}): trust({a},{b})={t[i, j]:g} < trust({a},{c})*trust({c},{b})="
                f"{t[i, k]:g}*{t[k, j]:g}={t[i, k] * t[k, j]:.4g}"
            )

    rep.errors.extend(rep.dimension_errors)
    return rep
