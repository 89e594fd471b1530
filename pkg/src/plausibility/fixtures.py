"""Builders for the reference models used throughout the tests, demos and CLI.

World names are the conventional ones for each model.  Edges list only the covering
arrows; closure fills in reflexive and transitive pairs.
"""
from __future__ import annotations

import re

from .model import PlausibilityModel


class FixtureError(ValueError):
    pass


def _chain(names):
    """Edges for a total order where each name is less plausible than the previous one."""
    return [(later, earlier) for earlier, later in zip(names, names[1:])]


def ml() -> PlausibilityModel:
    val = {"w1": "p", "w2": "p", "w3": "p", "w4": "q", "w5": "q"}
    edges = {"a": [("w3", "w2"), ("w2", "w1"), ("w3", "w1")], "b": [("w1", "w4"), ("w3", "w5")]}
    return PlausibilityModel.build(val, ["a", "b"], edges)


def mc() -> PlausibilityModel:
    val = {"v1": "p", "v2": "p", "v3": "q"}
    return PlausibilityModel.build(val, ["a", "b"], {"a": [("v2", "v1")], "b": [("v1", "v3")]})


def mr() -> PlausibilityModel:
    val = {"u1": "p", "u2": "p", "u3": "p", "u4": "q", "u5": "q"}
    edges = {"a": [("u2", "u3"), ("u2", "u1"), ("u1", "u3"), ("u3", "u1")],
             "b": [("u1", "u4"), ("u3", "u5")]}
    return PlausibilityModel.build(val, ["a", "b"], edges)


def p_model() -> PlausibilityModel:
    val = {"w": "p", "z": "", "y": "p", "x": "q"}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(["w", "z", "y", "x"])})


def p_prime() -> PlausibilityModel:
    val = {"w'": "p", "z'": "", "x'": "q"}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(["w'", "z'", "x'"])})


def exp_cd_m() -> PlausibilityModel:
    val = {"w1": "", "w2": "pq", "w3": "q"}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(["w1", "w2", "w3"])})


def exp_cd_mprime() -> PlausibilityModel:
    val = {"w1'": "", "w2'": "p", "w3'": ""}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(["w1'", "w2'", "w3'"])})


def exp_s_m() -> PlausibilityModel:
    val = {"x1": "pq", "x2": "p", "y": ""}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(["x1", "x2", "y"])})


def exp_s_mprime() -> PlausibilityModel:
    val = {"x'": "p", "y'": ""}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(["x'", "y'"])})


def mk(k: int) -> PlausibilityModel:
    if k < 0:
        raise FixtureError("k must be at least 0")
    ws = [f"w{i}" for i in range(k + 1)]
    val = {w: [f"p{i}"] for i, w in enumerate(ws)}
    val.update({"x": ["q", "r"], "y": ["q"]})
    return PlausibilityModel.build(val, ["a"], {"a": _chain(ws + ["x", "y"])})


def nk(k: int) -> PlausibilityModel:
    if k < 0:
        raise FixtureError("k must be at least 0")
    ws = [f"w{i}'" for i in range(k + 1)]
    val = {w: [f"p{i}"] for i, w in enumerate(ws)}
    val.update({"y'": ["q"], "x'": ["q", "r"]})
    return PlausibilityModel.build(val, ["a"], {"a": _chain(ws + ["y'", "x'"])})


def demey_chain(i: int) -> PlausibilityModel:
    """w1 (most plausible) up to wi, with p true exactly at even indices."""
    if i < 1:
        raise FixtureError("i must be at least 1")
    ws = [f"w{j}" for j in range(1, i + 1)]
    val = {w: (["p"] if j % 2 == 0 else []) for j, w in enumerate(ws, start=1)}
    return PlausibilityModel.build(val, ["a"], {"a": _chain(ws)})


_SIMPLE = {
    "ML": ml, "MC": mc, "MR": mr, "P": p_model, "Pprime": p_prime,
    "EXP_CD_M": exp_cd_m, "EXP_CD_Mprime": exp_cd_mprime,
    "EXP_S_M": exp_s_m, "EXP_S_Mprime": exp_s_mprime,
}
_FAMILIES = {"MK": (mk, "k"), "NK": (nk, "k"), "DEMEY_CHAIN": (demey_chain, "i")}

FIXTURE_IDS = tuple(_SIMPLE) + tuple(_FAMILIES)


def build(fixture_id: str, param: int | None = None) -> PlausibilityModel:
    """Build a fixture by name.  Families take ``param`` or an inline form like ``MK(3)``."""
    m = re.fullmatch(r"(\w+?)\((\d+)\)", fixture_id)
    if m:
        fixture_id, param = m.group(1), int(m.group(2))
    if fixture_id in _SIMPLE:
        if param is not None:
            raise FixtureError(f"fixture {fixture_id} takes no parameter")
        return _SIMPLE[fixture_id]()
    if fixture_id in _FAMILIES:
        fn, name = _FAMILIES[fixture_id]
        if param is None:
            raise FixtureError(f"fixture {fixture_id} needs parameter {name}")
        return fn(param)
    raise FixtureError(f"unknown fixture {fixture_id!r}; known: {', '.join(FIXTURE_IDS)}")
