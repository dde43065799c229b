"""
Scenario files and validation
=============================

Colonies are stored as JSON documents.  Validation separates hard errors
(which stop a simulation) from warnings about trust tables that break the
transitivity bound t(a,b) >= t(a,c) * t(c,b).
"""

import json
import tempfile
from pathlib import Path

from rumornet import builtin_example, load_scenario, run, validate_colony, write_trace
from rumornet.scenario import dumps_scenario

colony, config = builtin_example(5)
report = validate_colony(colony)
print(f"{len(report.triangle_violations)} transitivity warnings, errors: {report.errors}")
print(report.warnings[0])

# %%
# Write the colony out, edit it, and read it back.
doc = json.loads(dumps_scenario(colony, config))
doc["name"] = "example-5-honest-observer"
doc["agents"][8]["veracity"] = 1.0
doc["run"]["seed"] = 3

tmp = Path(tempfile.mkdtemp())
(tmp / "scenario.json").write_text(json.dumps(doc, indent=2))
edited, cfg = load_scenario(tmp / "scenario.json")
print(edited.metadata["name"], [a.veracity for a in edited.agents])

# %%
# Traces are plain CSV with a few commented metadata lines at the end.
write_trace(run(edited, cfg), tmp / "trace.csv")
lines = (tmp / "trace.csv").read_text().splitlines()
print("\n".join(lines[:4]))
print("\n".join(lines[-6:]))

# %%
# A broken document points at the offending field.
doc["agents"][0]["gamma_plus"].append("p99")
try:
    load_scenario(json.dumps(doc).encode())
except ValueError as exc:
    print(exc)
