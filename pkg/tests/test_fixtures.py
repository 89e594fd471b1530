import pytest

from plausibility import fixtures
from plausibility.model import epistemic_class, validate


def edges(m, a):
    return {(x, y) for x, y in m.plaus[a] if x != y}


def test_mc():
    m = fixtures.build("MC")
    assert m.worlds == ("v1", "v2", "v3")
    assert [sorted(m.valuation[w]) for w in m.worlds] == [["p"], ["p"], ["q"]]
    assert edges(m, "a") == {("v2", "v1")}
    assert edges(m, "b") == {("v1", "v3")}


def test_mk():
    m = fixtures.build("MK", 2)
    assert set(m.worlds) == {"w0", "w1", "w2", "x", "y"}
    assert m.valuation["x"] == {"q", "r"} and m.valuation["y"] == {"q"} and m.valuation["w1"] == {"p1"}
    assert epistemic_class(m, "a", "w0") == set(m.worlds)
    # w0 most plausible, then w1, w2, x, y
    assert m.geq("a", "y", "x") and m.geq("a", "x", "w2") and not m.geq("a", "w0", "w1")


def test_nk_swaps_x_and_y():
    n = fixtures.build("NK(2)")
    assert n.geq("a", "x'", "y'") and not n.geq("a", "y'", "x'")


def test_demey_chain():
    m = fixtures.build("DEMEY_CHAIN", 3)
    assert [sorted(m.valuation[w]) for w in ("w1", "w2", "w3")] == [[], ["p"], []]
    assert m.geq("a", "w3", "w2") and m.geq("a", "w2", "w1")


def test_expressivity_models():
    m = fixtures.exp_cd_m()
    assert m.geq("a", "w3", "w2") and m.geq("a", "w2", "w1")
    assert [sorted(m.valuation[w]) for w in ("w1", "w2", "w3")] == [[], ["p", "q"], ["q"]]
    s = fixtures.exp_s_mprime()
    assert s.worlds == ("x'", "y'") and s.geq("a", "y'", "x'")


@pytest.mark.parametrize("fid", fixtures.FIXTURE_IDS)
def test_every_fixture_is_valid(fid):
    param = 3 if fid in ("MK", "NK", "DEMEY_CHAIN") else None
    assert validate(fixtures.build(fid, param)) == []


def test_bad_fixture_requests():
    with pytest.raises(fixtures.FixtureError):
        fixtures.build("NOPE")
    with pytest.raises(fixtures.FixtureError):
        fixtures.build("MK")
    with pytest.raises(fixtures.FixtureError):
        fixtures.build("MC", 2)
    with pytest.raises(fixtures.FixtureError):
        fixtures.build("DEMEY_CHAIN", 0)
    with pytest.raises(fixtures.FixtureError):
        fixtures.build("MK", -1)
