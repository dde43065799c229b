"""Agent-based simulation of desire-driven rumor spreading over complete trust networks."""

from .dissemination import (
    AcceptMode,
    Action,
    Classification,
    RandomSource,
    TurnOutcome,
    accept,
    classify,
    hear,
    merge_box,
    mutate,
    select_mutation_target,
    take_turn,
)
from .fixtures import builtin_example
from .metrics import (
    GenerationRecord,
    HomogeneityMismatchWarning,
    Trace,
    check_reported_homogeneity,
    conflicts,
    detect_convergence,
    heterogeneity,
    heterogeneity_matrix,
    homogeneity,
    identical_distance,
    individual_instability,
    social_instability,
)
from .model import (
    Agent,
    BoxEntry,
    Colony,
    ConfigurationError,
    Desire,
    PropositionSpace,
    Rumor,
    RumorBox,
    TrustMatrix,
    ValidationReport,
    desire_vector,
    validate_colony,
)
from .scenario import ScenarioError, load_scenario, loads_scenario, write_scenario, write_trace
from .simulation import RunConfig, Simulation, SweepResult, run, sweep, with_threshold

__version__ = "0.1.0"
