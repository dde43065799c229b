"""JSON scenario documents and CSV trace export.

A scenario document looks like::

    {
      "schema_version": 1,
      "propositions": [{"name": "p1", "priority": 0.8}, ...],
      "initial_observation": "1110...",
      "agents": [{"id": 1, "gamma_plus": ["p1"], "gamma_minus": ["p4"],
                  "veracity": 0.5, "accept_threshold": 0.5}, ...],
      "trust": [[1.0, 0.6], [0.6, 1.0]],
      "observers": [1],
      "attractiveness": 0.0,
      "run": {"generations": 5000, "seed": 0, "accept_mode": "alg5",
              "stability_window": null}
    }

Desires name propositions; ``trust`` rows and columns follow the order of
``agents``.  Optional top-level keys ``name``, ``notes``,
and ``reported_homogeneity`` are carried in
``Colony.metadata``.
"""

from __future__ import annotations

import io
import json
import os
from typing import IO, Any

import numpy as np

from .dissemination import AcceptMode
from .metrics import Trace
from .model import (
    Agent,
    Colony,
    ConfigurationError,
    Desire,
    PropositionSpace,
    Rumor,
    TrustMatrix,
    ValidationReport,
    validate_colony,
)
from .simulation import RunConfig

SCHEMA_VERSION = 1
TRACE_HEADER = "generation,active_agent,action,instability,consensus"
_METADATA_KEYS = ("name", "notes", "reported_homogeneity")


class ScenarioError(ConfigurationError):
    """Malformed or inconsistent scenario document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ScenarioError(f"{path}.{key}" if path else key, "missing required field")
    return obj[key]


def _number(value, path: str, lo: float = 0.0, hi: float = 1.0) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(path, f"expected a number, got {value!r}")
    if not lo <= value <= hi:
        raise ScenarioError(path, f"{value} outside [{lo:g}, {hi:g}]")
    return float(value)


def _integer(value, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ScenarioError(path, f"must be at least {minimum}")
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ScenarioError(path, f"expected a list, got {type(value).__name__}")
    return value


def parse_scenario(doc: dict[str, Any]) -> tuple[Colony, RunConfig]:
    """Build a colony and run configuration from an already-decoded document."""
    if not isinstance(doc, dict):
        raise ScenarioError("<root>", "expected an object")
    version = _require(doc, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise ScenarioError("schema_version", f"unsupported version {version!r}")

    props = _list(_require(doc, "propositions", ""), "propositions")
    if not props:
        raise ScenarioError("propositions", "at least one proposition is required")
    names, priorities = [], []
    for i, p in enumerate(props):
        path = f"propositions[{i}]"
        if not isinstance(p, dict):
            raise ScenarioError(path, "expected an object")
        name = _require(p, "name", path)
        if not isinstance(name, str) or not name:
            raise ScenarioError(f"{path}.name", "expected a non-empty string")
        if name in names:
            raise ScenarioError(f"{path}.name", f"duplicate proposition {name!r}")
        names.append(name)
        priorities.append(_number(_require(p, "priority", path), f"{path}.priority"))
    space = PropositionSpace(tuple(names), tuple(priorities))
    lookup = {name: k for k, name in enumerate(names)}

    obs_text = _require(doc, "initial_observation", "")
    if not isinstance(obs_text, str):
        raise ScenarioError("initial_observation", "expected a bit string")
    try:
        observation = Rumor.from_string(obs_text)
    except ConfigurationError as exc:
        raise ScenarioError("initial_observation", str(exc)) from None
    if len(observation) != len(space):
        raise ScenarioError(
            "initial_observation",
            f"length {len(observation)} does not match {len(space)} propositions",
        )

    agents = []
    raw_agents = _list(_require(doc, "agents", ""), "agents")
    if len(raw_agents) < 2:
        raise ScenarioError("agents", "at least two agents are required")
    for i, a in enumerate(raw_agents):
        path = f"agents[{i}]"
        if not isinstance(a, dict):
            raise ScenarioError(path, "expected an object")
        agent_id = _integer(_require(a, "id", path), f"{path}.id")
        if any(other.id == agent_id for other in agents):
            raise ScenarioError(f"{path}.id", f"duplicate agent id {agent_id}")
        sets = []
        for key in ("gamma_plus", "gamma_minus"):
            members = set()
            for j, name in enumerate(_list(a.get(key, []), f"{path}.{key}")):
                if name not in lookup:
                    raise ScenarioError(f"{path}.{key}[{j}]", f"unknown proposition {name!r}")
                members.add(lookup[name])
            sets.append(frozenset(members))
        veracity = _number(_require(a, "veracity", path), f"{path}.veracity")
        threshold = _number(a.get("accept_threshold", 0.5), f"{path}.accept_threshold")
        agents.append(Agent(agent_id, Desire(*sets), veracity, threshold))

    ids = [a.id for a in agents]
    rows = _list(_require(doc, "trust", ""), "trust")
    if len(rows) != len(agents):
        raise ScenarioError("trust", f"{len(rows)} rows for {len(agents)} agents")
    matrix = np.zeros((len(agents), len(agents)))
    for i, row in enumerate(rows):
        row = _list(row, f"trust[{i}]")
        if len(row) != len(agents):
            raise ScenarioError(f"trust[{i}]", f"{len(row)} columns for {len(agents)} agents")
        for j, v in enumerate(row):
            matrix[i, j] = _number(v, f"trust[{i}][{j}]")

    observers = set()
    for i, o in enumerate(_list(_require(doc, "observers", ""), "observers")):
        o = _integer(o, f"observers[{i}]")
        if o not in ids:
            raise ScenarioError(f"observers[{i}]", f"unknown agent id {o}")
        observers.add(o)

    attractiveness = _number(doc.get("attractiveness", 0.0), "attractiveness")
    metadata = {k: doc[k] for k in _METADATA_KEYS if k in doc}
    colony = Colony(space, agents, TrustMatrix(matrix), frozenset(observers), observation,
                    attractiveness, metadata)

    run = doc.get("run", {}) or {}
    if not isinstance(run, dict):
        raise ScenarioError("run", "expected an object")
    try:
        mode = AcceptMode(run.get("accept_mode", AcceptMode.ALG5.value))
    except ValueError:
        raise ScenarioError("run.accept_mode", f"expected eq8 or alg5, got {run['accept_mode']!r}") from None
    window = run.get("stability_window")
    config = RunConfig(
        generations=_integer(run.get("generations", 5000), "run.generations", 1),
        seed=_integer(run.get("seed", 0), "run.seed", 0),
        accept_mode=mode,
        stability_window=None if window is None else _integer(window, "run.stability_window", 1),
    )
    return colony, config


def loads_scenario(text: str | bytes) -> tuple[Colony, RunConfig]:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("<document>", f"malformed JSON: {exc}") from None
    return parse_scenario(doc)


def load_scenario(source) -> tuple[Colony, RunConfig]:
    """Read a scenario from a path, bytes, or readable stream (text or binary)."""
    return loads_scenario(_read_text(source))


def load_and_validate(source) -> tuple[Colony, RunConfig, ValidationReport]:
    colony, config = load_scenario(source)
    return colony, config, validate_colony(colony)


def scenario_document(colony: Colony, config: RunConfig | None = None) -> dict[str, Any]:
    config = config or RunConfig()
    space = colony.space
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    for key in _METADATA_KEYS:
        if key in colony.metadata:
            doc[key] = colony.metadata[key]
    doc.update(
        propositions=[{"name": n, "priority": p} for n, p in zip(space.names, space.priorities)],
        initial_observation=str(colony.initial_observation),
        agents=[
            {
                "id": a.id,
                "gamma_plus": [space.names[k] for k in sorted(a.desire.gamma_plus)],
                "gamma_minus": [space.names[k] for k in sorted(a.desire.gamma_minus)],
                "veracity": a.veracity,
                "accept_threshold": a.accept_threshold,
            }
            for a in colony.agents
        ],
        trust=colony.trust.values.tolist(),
        observers=sorted(colony.observers),
        attractiveness=colony.attractiveness,
        run={
            "generations": config.generations,
            "seed": config.seed,
            "accept_mode": config.accept_mode.value,
            "stability_window": config.stability_window,
        },
    )
    return doc


def dumps_scenario(colony: Colony, config: RunConfig | None = None) -> str:
    return json.dumps(scenario_document(colony, config), indent=2) + "\n"


def write_scenario(colony: Colony, config: RunConfig | None, sink: IO[str] | str | os.PathLike) -> None:
    text = dumps_scenario(colony, config)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sink.write(text)


def _fmt(x: float) -> str:
    return format(x, ".12g")


def format_trace(trace: Trace) -> str:
    buf = io.StringIO()
    buf.write(TRACE_HEADER + "\n")
    for r in trace.records:
        buf.write(
            f"{r.generation},{r.outcome.agent_id},{r.outcome.action.value},"
            f"{_fmt(r.instability)},{int(r.consensus)}\n"
        )
    converged = "none" if trace.converged_at is None else str(trace.converged_at)
    buf.write(f"# seed={trace.seed}\n")
    buf.write(f"# generator={trace.generator}\n")
    buf.write(f"# mode={trace.mode}\n")
    buf.write(f"# window={trace.window}\n")
    buf.write(f"# h_C={_fmt(trace.homogeneity)}\n")
    buf.write(f"# converged_at={converged}\n")
    return buf.getvalue()


def write_trace(trace: Trace, sink: IO | str | os.PathLike) -> None:
    """Write the trace as CSV followed by ``# key=value`` metadata lines.

    ``sink`` may be a path or a text or binary stream.
    """
    text = format_trace(trace)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    elif isinstance(sink, (io.RawIOBase, io.BufferedIOBase)):
        sink.write(text.encode("utf-8"))
    else:
        sink.write(text)


def read_trace_metadata(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if line.startswith("# ") and "=" in line:
            key, _, value = line[2:].partition("=")
            out[key] = value
    return out
