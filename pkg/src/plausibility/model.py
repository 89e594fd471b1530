"""Finite multi-agent plausibility models and their order-theoretic primitives.

A model stores, for every agent ``a``, the relation ``x >=_a y`` ("y is at
least as plausible as x") as a set of ordered pairs.  Relations are always
kept reflexively and transitively closed.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

WorldId = str
AgentId = str
Pair = tuple[WorldId, WorldId]

_TOKEN = re.compile(r"^\S+$")


class ModelError(Exception):
    """Malformed model document or an operation applied to unknown worlds/agents."""


class UnknownEntity(ModelError):
    """A world or agent that the model does not contain."""


class ValidationError(ModelError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0]
        super().__init__(str(first))


@dataclass(frozen=True)
class Violation:
    invariant: str
    agent: AgentId | None
    witness: Pair | None
    detail: str = ""

    def __str__(self):
        where = f" for agent {self.agent}" if self.agent is not None else ""
        pair = f" at {self.witness}" if self.witness is not None else ""
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.invariant}{where}{pair}{extra}"


@dataclass(frozen=True, eq=False)
class PlausibilityModel:
    worlds: tuple[WorldId, ...]
    agents: tuple[AgentId, ...]
    valuation: Mapping[WorldId, frozenset[str]]
    plaus: Mapping[AgentId, frozenset[Pair]]

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, valuation: Mapping[WorldId, Iterable[str]], agents: Iterable[AgentId],
              edges: Mapping[AgentId, Iterable[Pair]] | None = None, *, check=True) -> "PlausibilityModel":
        """Create a model from raw edges; edges are closed reflexively and transitively."""
        worlds = tuple(sorted(valuation))
        agents = tuple(agents)
        edges = edges or {}
        for a in edges:
            if a not in agents:
                raise ModelError(f"edges given for unknown agent {a!r}")
        known = set(worlds)
        plaus = {}
        for a in agents:
            raw = set()
            for x, y in edges.get(a, ()):
                for w in (x, y):
                    if w not in known:
                        raise ModelError(f"edge ({x}, {y}) for agent {a} mentions unknown world {w!r}")
                raw.add((x, y))
            plaus[a] = _reflexive_transitive_closure(raw, worlds)
        model = cls(worlds, agents, {w: frozenset(valuation[w]) for w in worlds}, plaus)
        if check:
            violations = validate(model)
            if violations:
                raise ValidationError(violations)
        return model

    # -- queries ------------------------------------------------------------

    @cached_property
    def index(self) -> dict[WorldId, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @cached_property
    def props(self) -> tuple[str, ...]:
        return tuple(sorted(set().union(*self.valuation.values()))) if self.worlds else ()

    @cached_property
    def _geq(self) -> dict[AgentId, dict[WorldId, frozenset[WorldId]]]:
        # _geq[a][x] = {y | x >=_a y}
        out = {}
        for a in self.agents:
            succ = {w: set() for w in self.worlds}
            for x, y in self.plaus[a]:
                succ[x].add(y)
            out[a] = {w: frozenset(s) for w, s in succ.items()}
        return out

    @cached_property
    def _classes(self) -> dict[AgentId, dict[WorldId, frozenset[WorldId]]]:
        out = {}
        for a in self.agents:
            cls_of = {}
            for w in self.worlds:
                if w in cls_of:
                    continue
                # closed relation: the ~_a class of w is everything comparable with w
                block = frozenset(v for v in self.worlds if self.geq(a, w, v) or self.geq(a, v, w))
                for v in block:
                    cls_of.setdefault(v, block)
            out[a] = cls_of
        return out

    def geq(self, agent: AgentId, x: WorldId, y: WorldId) -> bool:
        """True iff ``x >=_agent y``."""
        return y in self._geq[agent][x]

    def successors(self, agent: AgentId, x: WorldId) -> frozenset[WorldId]:
        """Worlds at least as plausible as ``x``."""
        return self._geq[agent][x]

    def check_world(self, w: WorldId) -> None:
        if w not in self.index:
            raise UnknownEntity(f"unknown world {w!r}")

    def check_agent(self, a: AgentId) -> None:
        if a not in self.plaus:
            raise UnknownEntity(f"unknown agent {a!r}")

    def __repr__(self):
        return f"PlausibilityModel(worlds={list(self.worlds)}, agents={list(self.agents)})"

    def restrict(self, worlds: Iterable[WorldId]) -> "PlausibilityModel":
        keep = set(worlds)
        return PlausibilityModel(
            tuple(w for w in self.worlds if w in keep),
            self.agents,
            {w: self.valuation[w] for w in self.worlds if w in keep},
            {a: frozenset((x, y) for x, y in self.plaus[a] if x in keep and y in keep) for a in self.agents},
        )

    def rename(self, mapping: Mapping[WorldId, WorldId]) -> "PlausibilityModel":
        if len(set(mapping.values())) != len(self.worlds):
            raise ModelError("renaming must be injective and total")
        return PlausibilityModel(
            tuple(sorted(mapping[w] for w in self.worlds)),
            self.agents,
            {mapping[w]: self.valuation[w] for w in self.worlds},
            {a: frozenset((mapping[x], mapping[y]) for x, y in self.plaus[a]) for a in self.agents},
        )

    def with_plaus(self, plaus: Mapping[AgentId, Iterable[Pair]]) -> "PlausibilityModel":
        return PlausibilityModel(self.worlds, self.agents, dict(self.valuation),
                                 {a: frozenset(plaus[a]) for a in self.agents})


def _reflexive_transitive_closure(pairs: set[Pair], worlds: Iterable[WorldId]) -> frozenset[Pair]:
    succ = {w: {w} for w in worlds}
    for x, y in pairs:
        succ[x].add(y)
    changed = True
    while changed:
        changed = False
        for x in succ:
            reach = set(succ[x])
            for y in succ[x]:
                reach |= succ[y]
            if reach != succ[x]:
                succ[x] = reach
                changed = True
    return frozenset((x, y) for x, ys in succ.items() for y in ys)


# -- validation -------------------------------------------------------------

def validate(model: PlausibilityModel) -> list[Violation]:
    """Return every violated model invariant (empty list for a valid model)."""
    out = []
    if not model.agents:
        out.append(Violation("no agents", None, None))
    if len(set(model.agents)) != len(model.agents):
        out.append(Violation("duplicate agent", None, None))
    if len(set(model.worlds)) != len(model.worlds):
        out.append(Violation("duplicate world", None, None))
    for w in model.worlds:
        if not isinstance(w, str) or not _TOKEN.match(w):
            out.append(Violation("bad world id", None, (w, w)))
    worlds = set(model.worlds)
    for a in model.agents:
        rel = model.plaus.get(a)
        if rel is None:
            out.append(Violation("missing relation", a, None))
            continue
        stray = sorted(p for p in rel if p[0] not in worlds or p[1] not in worlds)
        if stray:
            out.append(Violation("unknown world in relation", a, stray[0]))
            continue
        for w in model.worlds:
            if (w, w) not in rel:
                out.append(Violation("not reflexive", a, (w, w)))
                break
        succ = {w: set() for w in model.worlds}
        for x, y in rel:
            succ[x].add(y)
        bad = _first(((x, z) for x in model.worlds for y in succ[x] for z in succ[y] if z not in succ[x]))
        if bad:
            out.append(Violation("not transitive", a, bad))
            continue
        # ~_a as the equivalence closure of >=_a; inside a class every pair must be comparable
        comp = _components(model.worlds, rel)
        bad = _first(((x, y) for block in comp for x, y in itertools.combinations(sorted(block), 2)
                      if y not in succ[x] and x not in succ[y]))
        if bad:
            out.append(Violation("incomparable within class", a, bad))
    return out


def _first(it):
    return next(iter(it), None)


def _components(worlds, rel):
    parent = {w: w for w in worlds}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in rel:
        parent[find(x)] = find(y)
    groups = {}
    for w in worlds:
        groups.setdefault(find(w), set()).add(w)
    return list(groups.values())


# -- primitives ---------------------------------------------------------------

def epistemic_class(model: PlausibilityModel, agent: AgentId, w: WorldId) -> frozenset[WorldId]:
    model.check_agent(agent)
    model.check_world(w)
    return model._classes[agent][w]


def min_set(model: PlausibilityModel, agent: AgentId, ys: Iterable[WorldId]) -> frozenset[WorldId]:
    """Most plausible members of ``ys``: ``{y in Y | y' >=_a y for all y' in Y}``."""
    model.check_agent(agent)
    ys = frozenset(ys)
    if not ys:
        return ys
    for y in ys:
        model.check_world(y)
    first = next(iter(ys))
    if not ys <= model._classes[agent][first]:
        raise ModelError(f"set spans several {agent}-classes: {sorted(ys)}")
    return frozenset(y for y in ys if all(model.geq(agent, z, y) for z in ys))


def set_leq(model: PlausibilityModel, agent: AgentId, ys: Iterable[WorldId], zs: Iterable[WorldId]) -> bool:
    """``Y >=_a Z``: every y is related to every z (vacuous for empty sets)."""
    zs = tuple(zs)
    return all(model.geq(agent, y, z) for y in ys for z in zs)


def disjoint_union(m1: PlausibilityModel, m2: PlausibilityModel):
    """Union with worlds of ``m1`` prefixed ``L:`` and of ``m2`` prefixed ``R:``.

    Returns ``(model, left_map, right_map)``.  Agents of both parts are merged;
    an agent missing from one side gets the identity relation there.
    """
    left = {w: f"L:{w}" for w in m1.worlds}
    right = {w: f"R:{w}" for w in m2.worlds}
    agents = tuple(dict.fromkeys(m1.agents + m2.agents))
    valuation = {left[w]: m1.valuation[w] for w in m1.worlds}
    valuation.update({right[w]: m2.valuation[w] for w in m2.worlds})
    plaus = {}
    for a in agents:
        rel = set()
        for m, ren in ((m1, left), (m2, right)):
            if a in m.plaus:
                rel |= {(ren[x], ren[y]) for x, y in m.plaus[a]}
            else:
                rel |= {(ren[w], ren[w]) for w in m.worlds}
        plaus[a] = frozenset(rel)
    model = PlausibilityModel(tuple(sorted(valuation)), agents, valuation, plaus)
    return model, left, right


def find_isomorphism(m1: PlausibilityModel, m2: PlausibilityModel) -> dict[WorldId, WorldId] | None:
    """Brute-force search for a valuation- and relation-preserving bijection."""
    if len(m1.worlds) != len(m2.worlds) or set(m1.agents) != set(m2.agents):
        return None
    by_val = {}
    for w in m2.worlds:
        by_val.setdefault(m2.valuation[w], []).append(w)
    choices = [by_val.get(m1.valuation[w], []) for w in m1.worlds]

    def extend(i, used, mapping):
        if i == len(m1.worlds):
            return dict(mapping)
        w = m1.worlds[i]
        for v in choices[i]:
            if v in used:
                continue
            mapping[w] = v
            ok = all(m1.geq(a, w, u) == m2.geq(a, v, mapping[u]) and m1.geq(a, u, w) == m2.geq(a, mapping[u], v)
                     for a in m1.agents for u in m1.worlds[:i + 1])
            if ok:
                found = extend(i + 1, used | {v}, mapping)
                if found:
                    return found
            del mapping[w]
        return None

    return extend(0, frozenset(), {})


def is_isomorphism(m1: PlausibilityModel, m2: PlausibilityModel, mapping: Mapping[WorldId, WorldId]) -> bool:
    if set(mapping) != set(m1.worlds) or set(mapping.values()) != set(m2.worlds):
        return False
    if set(m1.agents) != set(m2.agents):
        return False
    if any(m1.valuation[w] != m2.valuation[mapping[w]] for w in m1.worlds):
        return False
    return all({(mapping[x], mapping[y]) for x, y in m1.plaus[a]} == set(m2.plaus[a]) for a in m1.agents)


# -- serialization ------------------------------------------------------------

_KEYS = {"worlds", "agents", "plaus"}


def load_model(document: str | bytes | Mapping) -> PlausibilityModel:
    """Parse the JSON model format (a string or an already-decoded mapping)."""
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelError(f"malformed model document: {exc}") from None
    else:
        data = document
    if not isinstance(data, Mapping):
        raise ModelError("model document must be a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ModelError(f"unknown keys in model document: {sorted(unknown)}")
    missing = {"worlds", "agents"} - set(data)
    if missing:
        raise ModelError(f"missing keys in model document: {sorted(missing)}")
    valuation = {}
    if not isinstance(data["worlds"], list):
        raise ModelError("'worlds' must be a list")
    for entry in data["worlds"]:
        if not isinstance(entry, Mapping) or set(entry) - {"id", "val"} or "id" not in entry:
            raise ModelError(f"bad world entry {entry!r}")
        wid = entry["id"]
        if not isinstance(wid, str) or not _TOKEN.match(wid):
            raise ModelError(f"bad world id {wid!r}")
        if wid in valuation:
            raise ModelError(f"duplicate world id {wid!r}")
        val = entry.get("val", [])
        if not isinstance(val, list) or not all(isinstance(p, str) for p in val):
            raise ModelError(f"bad valuation for world {wid!r}")
        valuation[wid] = val
    agents = data["agents"]
    if not isinstance(agents, list) or not all(isinstance(a, str) and a for a in agents):
        raise ModelError("'agents' must be a list of names")
    if len(set(agents)) != len(agents):
        raise ModelError("duplicate agent")
    plaus = data.get("plaus", {})
    if not isinstance(plaus, Mapping):
        raise ModelError("'plaus' must be an object")
    edges = {}
    for a, pairs in plaus.items():
        if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
            raise ModelError(f"bad edge list for agent {a!r}")
        edges[a] = [tuple(p) for p in pairs]
    return PlausibilityModel.build(valuation, agents, edges)


def model_to_dict(model: PlausibilityModel, *, reduced=False) -> dict:
    """JSON-ready form.  ``reduced`` drops reflexive pairs (they are re-added on load)."""
    plaus = {}
    for a in model.agents:
        pairs = sorted(model.plaus[a])
        if reduced:
            pairs = [p for p in pairs if p[0] != p[1]]
        plaus[a] = [list(p) for p in pairs]
    return {
        "worlds": [{"id": w, "val": sorted(model.valuation[w])} for w in model.worlds],
        "agents": list(model.agents),
        "plaus": plaus,
    }


def dump_model(model: PlausibilityModel, *, reduced=True) -> str:
    return json.dumps(model_to_dict(model, reduced=reduced), indent=2)


def to_dot(model: PlausibilityModel) -> str:
    lines = ["digraph plausibility {"]
    for w in model.worlds:
        label = ",".join(sorted(model.valuation[w]))
        lines.append(f'  "{w}" [label="{w}\\n{{{label}}}"];')
    for a in model.agents:
        for x, y in sorted(model.plaus[a]):
            if x != y:
                lines.append(f'  "{x}" -> "{y}" [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
