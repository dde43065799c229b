import numpy as np
import pytest

from rumornet import Agent, Colony, Desire, PropositionSpace, Rumor, TrustMatrix
from rumornet.fixtures import builtin_example


def make_agent(agent_id, plus=(), minus=(), veracity=0.5, threshold=0.5):
    return Agent(agent_id, Desire(frozenset(plus), frozenset(minus)), veracity, threshold)


def make_colony(agents, trust=None, observers=None, observation=None, priorities=None, **kw):
    n_props = len(observation) if observation else len(priorities or ()) or 3
    space = PropositionSpace.numbered(priorities or [0.5] * n_props)
    n = len(agents)
    if trust is None:
        trust = TrustMatrix.uniform(n, 1.0)
    return Colony(
        space=space,
        agents=agents,
        trust=trust,
        observers=frozenset(observers or {agents[0].id}),
        initial_observation=Rumor.from_string(observation or "0" * n_props),
        **kw,
    )


@pytest.fixture(params=range(1, 8), ids=lambda n: f"example{n}")
def example(request):
    colony, config = builtin_example(request.param)
    return request.param, colony, config


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
