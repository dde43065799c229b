import numpy as np
import pytest
from hypothesis import given, strategies as st

from rumornet import (
    ConfigurationError,
    Desire,
    PropositionSpace,
    Rumor,
    RumorBox,
    TrustMatrix,
    desire_vector,
    validate_colony,
)
from rumornet.fixtures import NINE_TRUST, builtin_example

from conftest import make_agent, make_colony


def test_desire_vector_two_agents():
    p = PropositionSpace.numbered([0.5] * 5)
    ag0 = Desire(frozenset({0, 4}), frozenset({1, 2}))
    ag1 = Desire(frozenset({0, 2, 3}), frozenset({1}))
    assert desire_vector(ag0, p) == (1, -1, -1, 0, 1)
    assert desire_vector(ag1, p) == (1, -1, 1, 1, 0)


def test_desire_vector_empty():
    assert desire_vector(Desire(), 3) == (0, 0, 0)


def test_desire_vector_out_of_range():
    with pytest.raises(ConfigurationError):
        desire_vector(Desire(frozenset({5})), 3)


def test_desire_vector_rejects_overlap():
    with pytest.raises(ConfigurationError):
        desire_vector(Desire(frozenset({1}), frozenset({1})), 3)


@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=30))
def test_desire_vector_bijection(vec):
    desire = Desire.from_vector(vec)
    assert desire_vector(desire, len(vec)) == tuple(vec)
    assert Desire.from_vector(desire_vector(desire, len(vec))) == desire


class TestPropositionSpace:
    def test_rejects_bad_priority(self):
        with pytest.raises(ConfigurationError):
            PropositionSpace(("a",), (1.5,))

    def test_rejects_duplicates(self):
        with pytest.raises(ConfigurationError):
            PropositionSpace(("a", "a"), (0.1, 0.2))

    def test_rejects_empty(self):
        with pytest.raises(ConfigurationError):
            PropositionSpace((), ())


def test_rumor_string_round_trip():
    r = Rumor.from_string("010")
    assert str(r) == "010"
    assert r.flip(0) == Rumor.from_string("110")
    assert hash(r) == hash(Rumor((0, 1, 0)))
    with pytest.raises(ConfigurationError):
        Rumor.from_string("012")


def test_box_rejects_duplicates():
    box = RumorBox()
    assert box.put(Rumor.from_string("101"), 1, 0.3)
    assert not box.put(Rumor.from_string("101"), 2, 0.9)
    assert len(box) == 1 and box.entries[0].weight == 0.3


def test_agent_ranges():
    with pytest.raises(ConfigurationError):
        make_agent(1, veracity=1.2)
    with pytest.raises(ConfigurationError):
        make_agent(1, threshold=-0.1)


class TestValidateColony:
    def test_identity_trust_is_clean(self):
        colony = make_colony([make_agent(1), make_agent(2), make_agent(3)])
        report = validate_colony(colony)
        assert report.ok
        assert report.errors == [] and report.warnings == []
        assert report.triangle_violations == []

    def test_table8_triple(self):
        colony, _ = builtin_example(5)
        report = validate_colony(colony)
        assert report.ok
        assert (1, 2, 8) in report.triangle_violations
        # 0.3 < 0.58 * 0.79 = 0.4582
        assert any("0.4582" in w for w in report.warnings)

    def test_table8_violations_match_brute_force(self):
        t = np.array(NINE_TRUST)
        expected = sorted(
            (a + 1, b + 1, c + 1)
            for a in range(9) for b in range(9) for c in range(9)
            if t[a, b] < t[a, c] * t[c, b] - 1e-12
        )
        colony, _ = builtin_example(5)
        assert validate_colony(colony).triangle_violations == expected

    def test_overlap_reported(self):
        colony = make_colony([make_agent(1, plus={1}, minus={1, 2}), make_agent(2)])
        report = validate_colony(colony)
        assert not report.ok
        assert report.desire_overlaps == {1: [1]}
        assert any("p2" in e for e in report.errors)

    def test_diagonal_and_dimensions(self):
        trust = TrustMatrix([[0.5, 1.0], [1.0, 1.0]])
        colony = make_colony([make_agent(1), make_agent(2)], trust=trust, observation="01")
        colony.initial_observation = Rumor.from_string("0101")
        report = validate_colony(colony)
        assert report.diagonal_violations == [1]
        assert any("initial_observation" in e for e in report.dimension_errors)

    def test_observers_must_be_strict_subset(self):
        colony = make_colony([make_agent(1), make_agent(2)], observers={1, 2})
        assert not validate_colony(colony).ok
        colony = make_colony([make_agent(1), make_agent(2)])
        colony.observers = frozenset({7})
        assert not validate_colony(colony).ok

    def test_fixtures_have_no_overlaps_or_diagonal_errors(self, example):
        _, colony, _ = example
        report = validate_colony(colony)
        assert report.ok
        assert report.desire_overlaps == {} and report.diagonal_violations == []

    def test_clean_report_implies_triangle_bound(self):
        rng = np.random.default_rng(3)
        checked = 0
        for _ in range(300):
            n = int(rng.integers(2, 5))
            t = rng.uniform(0.7, 1.0, (n, n))
            np.fill_diagonal(t, 1.0)
            colony = make_colony([make_agent(i + 1) for i in range(n)], trust=TrustMatrix(t))
            if validate_colony(colony).triangle_violations:
                continue
            checked += 1
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        assert t[a, b] >= t[a, c] * t[c, b] - 1e-12
        assert checked > 20
