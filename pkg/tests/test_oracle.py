import pytest

from plausibility import fixtures
from plausibility.bisim import largest_autobisimulation
from plausibility.model import PlausibilityModel, dump_model, validate
from plausibility.oracle import (Bounds, OracleBoundExceeded, fuzz, is_autobisimulation, oracle_largest,
                                 random_model)


def test_oracle_on_fixtures():
    assert oracle_largest(fixtures.ml()) == [["w1", "w3"], ["w2"], ["w4", "w5"]]
    assert oracle_largest(fixtures.mc()) == [["v1"], ["v2"], ["v3"]]


def test_oracle_identity_model():
    m = PlausibilityModel.build({"x": ["p"], "y": ["q"], "z": []}, ["a"])
    assert oracle_largest(m) == [["x"], ["y"], ["z"]]


def test_oracle_bound():
    with pytest.raises(OracleBoundExceeded):
        oracle_largest(fixtures.mk(7))


def test_identity_always_passes():
    for seed in range(30):
        m = random_model(seed)
        assert is_autobisimulation(m, [frozenset({w}) for w in m.worlds])


def test_random_models_deterministic_and_valid():
    for seed in range(100):
        m = random_model(seed)
        assert validate(m) == []
        assert dump_model(m) == dump_model(random_model(seed))
        assert 1 <= len(m.worlds) <= 6 and 1 <= len(m.agents) <= 2 and len(m.props) <= 3


def test_bounds_checked():
    with pytest.raises(ValueError):
        Bounds(max_worlds=9)
    with pytest.raises(ValueError):
        Bounds(max_agents=0)


def test_engine_matches_oracle():
    for seed in range(200):
        m = random_model(seed)
        assert largest_autobisimulation(m).as_lists() == oracle_largest(m), seed


def test_fuzz_small_run():
    assert fuzz(range(25), formulas=10) == []
