import numpy as np
import pytest

from rumornet import (
    Action,
    ConfigurationError,
    RunConfig,
    Simulation,
    TrustMatrix,
    builtin_example,
    detect_convergence,
    run,
    sweep,
    with_threshold,
)

from conftest import make_agent, make_colony


def test_trivial_colony_converges_immediately():
    agents = [make_agent(i, veracity=1.0) for i in range(1, 4)]
    colony = make_colony(agents, observation="1011")
    trace = run(colony, RunConfig(generations=500, seed=3))
    assert trace.converged_at == 0
    assert len(trace.records) == trace.window == 60
    assert np.all(trace.instabilities == 0)


def test_trace_agrees_with_detector(example):
    n, colony, config = example
    trace = run(colony, config.with_overrides(generations=1500, seed=n))
    assert trace.converged_at == detect_convergence(trace.instabilities, trace.window)
    assert np.all(trace.instabilities >= 0)
    if trace.converged:
        assert len(trace.records) == trace.converged_at + trace.window


def test_run_is_pure():
    colony, config = builtin_example(5)
    before = colony.copy()
    a = run(colony, config.with_overrides(seed=42, generations=800))
    b = run(colony, config.with_overrides(seed=42, generations=800))
    assert a.records == b.records and a.converged_at == b.converged_at
    assert [len(x.box) for x in colony.agents] == [len(x.box) for x in before.agents] == [0] * 9


def test_different_seeds_draw_differently():
    colony, config = builtin_example(6)
    a = run(colony, config.with_overrides(seed=1, generations=50))
    b = run(colony, config.with_overrides(seed=2, generations=50))
    assert [r.outcome.agent_id for r in a.records] != [r.outcome.agent_id for r in b.records]


def test_observers_seeded():
    colony, config = builtin_example(3)
    sim = Simulation(colony, config)
    assert [len(a.box) for a in sim.colony.agents] == [1, 0]
    assert sim.colony.agents[0].box.entries[0].rumor == colony.initial_observation


def test_cached_instability_matches_recomputation():
    from rumornet import social_instability
    colony, config = builtin_example(6)
    sim = Simulation(colony, config.with_overrides(seed=8))
    for _ in range(400):
        rec = sim.step()
        assert rec.instability == pytest.approx(social_instability(sim.colony), abs=1e-12)


def test_eq8_mode_blocks_small_desires():
    colony, config = builtin_example(7)
    trace = run(colony, config.with_overrides(accept_mode="eq8", seed=0, generations=2000))
    assert all(r.outcome.action is not Action.SPREAD
               for r in trace.records if r.outcome.agent_id == 7)


def test_invalid_colony_refused():
    colony = make_colony([make_agent(1, plus={0}, minus={0}), make_agent(2)])
    with pytest.raises(ConfigurationError):
        run(colony)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig(generations=0)
    with pytest.raises(ConfigurationError):
        RunConfig(stability_window=0)
    assert RunConfig(accept_mode="eq8").accept_mode.value == "eq8"


def test_sweep_and_parallel_agree():
    colony, config = builtin_example(3)
    serial = sweep(colony, config, range(4))
    parallel = sweep(colony, config, range(4), jobs=2)
    assert [t.converged_at for t in serial.traces] == [t.converged_at for t in parallel.traces]
    assert serial.converged_fraction == 1.0
    with pytest.raises(ConfigurationError):
        sweep(colony, config, [])


def test_with_threshold():
    colony, _ = builtin_example(1)
    out = with_threshold(colony, 0.9)
    assert {a.accept_threshold for a in out.agents} == {0.9}
    assert {a.accept_threshold for a in colony.agents} == {0.5}
    with pytest.raises(ConfigurationError):
        with_threshold(colony, 2.0)


def test_self_reentry_absorbs_a_conflict():
    # Each agent's own version re-enters its box at weight 1, outweighing a
    # partner trusted below 1, so both settle with nothing left to change
    # although their desires conflict.
    a = make_agent(1, plus={0}, veracity=0.0)
    b = make_agent(2, plus={1, 2}, minus={0}, veracity=0.0)
    colony = make_colony([a, b], trust=TrustMatrix([[1.0, 0.6], [0.6, 1.0]]), observation="111")
    trace = run(colony, RunConfig(generations=2000, seed=0))
    assert trace.converged and trace.homogeneity < 1.0
    promoted = [r.outcome.promoted for r in trace.records if r.outcome.promoted is not None]
    assert {str(p) for p in promoted} == {"111", "011"}
