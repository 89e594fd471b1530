"""Deliberately naive reference implementations and random generators for testing.

Nothing here reuses the engine's rank shortcuts: minimal sets, the derived relation
and the bisimulation clauses are computed straight from their set definitions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .formula import (BOT, TOP, And, Atom, CondBelief, DegBelief, Formula, Implies, Know, Not, Or,
                      SafeBelief)
from .model import PlausibilityModel

ORACLE_LIMIT = 8


class OracleBoundExceeded(ValueError):
    pass


class OracleFailure(AssertionError):
    """No unique coarsest autobisimulation: this would contradict the existence result."""


# -- naive set semantics of the order primitives -------------------------------------

def _class(model, a, w):
    seen, todo = {w}, [w]
    while todo:
        x = todo.pop()
        for y, z in model.plaus[a]:
            for u, v in ((y, z), (z, y)):
                if u == x and v not in seen:
                    seen.add(v)
                    todo.append(v)
    return frozenset(seen)


def _min(model, a, ys):
    return frozenset(y for y in ys if all((z, y) in model.plaus[a] for z in ys))


def _leq(model, a, ys, zs):
    return all((y, z) in model.plaus[a] for y in ys for z in zs)


def _derived(model, blocks, a):
    block = {w: b for b in blocks for w in b}
    best = {w: _min(model, a, block[w] & _class(model, a, w)) for w in model.worlds}
    return {(w, v) for w in model.worlds for v in model.worlds if _leq(model, a, best[w], best[v])}


def is_autobisimulation(model: PlausibilityModel, blocks: list[frozenset]) -> bool:
    """Clause check for the equivalence relation given by ``blocks``."""
    block = {w: b for b in blocks for w in b}
    for b in blocks:
        vals = {model.valuation[w] for w in b}
        if len(vals) > 1:
            return False
    for a in model.agents:
        ge = _derived(model, blocks, a)
        for w in model.worlds:
            for w2 in block[w]:
                for v in model.worlds:
                    if (w, v) in ge and not any((w2, v2) in ge for v2 in block[v]):
                        return False
                    if (v, w) in ge and not any((v2, w2) in ge for v2 in block[v]):
                        return False
    # back clauses follow from forth clauses because the relation is symmetric
    return True


def _restricted_growth(model):
    worlds = list(model.worlds)
    n = len(worlds)
    codes = [0] * n
    firsts = []

    def rec(i):
        if i == n:
            blocks = [set() for _ in firsts]
            for w, c in zip(worlds, codes):
                blocks[c].add(w)
            yield [frozenset(b) for b in blocks]
            return
        w = worlds[i]
        for c, head in enumerate(firsts):
            if model.valuation[head] == model.valuation[w]:
                codes[i] = c
                yield from rec(i + 1)
        codes[i] = len(firsts)
        firsts.append(w)
        yield from rec(i + 1)
        firsts.pop()

    yield from rec(0)


def oracle_largest(model: PlausibilityModel, limit: int = ORACLE_LIMIT) -> list[list[str]]:
    """Coarsest autobisimulation by exhaustive enumeration, as sorted block lists."""
    if len(model.worlds) > limit:
        raise OracleBoundExceeded(f"{len(model.worlds)} worlds exceeds the oracle bound {limit}")
    passing = [blocks for blocks in _restricted_growth(model) if is_autobisimulation(model, blocks)]
    coarsest = min(passing, key=len)
    owner = {w: b for b in coarsest for w in b}
    for blocks in passing:
        if any(not b <= owner[next(iter(b))] for b in blocks):
            raise OracleFailure("passing partitions have no unique coarsest element")
    return sorted(sorted(b) for b in coarsest)


# -- random generation ---------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    max_worlds: int = 6
    max_agents: int = 2
    max_props: int = 3
    min_worlds: int = 1

    def __post_init__(self):
        if not (1 <= self.min_worlds <= self.max_worlds <= 8):
            raise ValueError("worlds must satisfy 1 <= min <= max <= 8")
        if not 1 <= self.max_agents <= 3:
            raise ValueError("agents must be between 1 and 3")
        if not 0 <= self.max_props <= 4:
            raise ValueError("props must be between 0 and 4")


AGENT_NAMES = ("a", "b", "c")
PROP_NAMES = ("p", "q", "r", "s")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_model(seed, bounds: Bounds = Bounds()) -> PlausibilityModel:
    """A valid random model; the same seed always gives the same model."""
    rng = _rng(seed)
    n = rng.randint(bounds.min_worlds, bounds.max_worlds)
    worlds = [f"w{i}" for i in range(1, n + 1)]
    agents = list(AGENT_NAMES[:rng.randint(1, bounds.max_agents)])
    props = PROP_NAMES[:rng.randint(1, bounds.max_props)] if bounds.max_props else ()
    # few distinct valuations make non-trivial bisimulations likely
    palette = [frozenset(p for p in props if rng.random() < 0.5) for _ in range(rng.randint(1, n))]
    valuation = {w: rng.choice(palette) for w in worlds}
    edges = {}
    for a in agents:
        n_classes = rng.randint(1, n)
        cls = {w: rng.randrange(n_classes) for w in worlds}
        level = {w: rng.randrange(n) for w in worlds}
        edges[a] = [(x, y) for x in worlds for y in worlds if cls[x] == cls[y] and level[x] >= level[y]]
    return PlausibilityModel.build(valuation, agents, edges)


def random_formula(seed, language: Iterable[str] = ("C", "D", "S"), depth: int = 2,
                   props: Iterable[str] = ("p", "q"), agents: Iterable[str] = ("a",),
                   max_degree: int = 3) -> Formula:
    """A random formula whose modalities come from ``language`` (knowledge always allowed)."""
    if depth > 4:
        raise ValueError("depth is limited to 4")
    rng = _rng(seed)
    rand = rng.random
    language = frozenset(language)
    props = [Atom(p) for p in sorted(props)]
    agents = sorted(agents)
    modal = ["K"] + sorted(language & {"C", "D", "S"})

    def pick(seq):
        return seq[int(rand() * len(seq))]

    def atom():
        if not props or rand() < 0.05:
            return TOP if rand() < 0.5 else BOT
        return pick(props)

    def gen(d, size):
        if size <= 1 or rand() < 0.2:
            return atom()
        x = rand() * (7 if d > 0 and agents else 4)
        if x < 1:
            return Not(gen(d, size - 1))
        if x < 4:
            half = size // 2
            op = (And, Or, Implies)[int(x) - 1]
            return op(gen(d, half), gen(d, half))
        a = pick(agents)
        match pick(modal):
            case "K":
                return Know(a, gen(d - 1, size - 1))
            case "C":
                cond = atom() if rand() < 0.3 else gen(d - 1, size // 2)
                return CondBelief(a, cond, gen(d - 1, size // 2))
            case "D":
                return DegBelief(a, int(rand() * (max_degree + 1)), gen(d - 1, size - 1))
            case "S":
                return SafeBelief(a, gen(d - 1, size - 1))

    return gen(depth, 12)


# -- agreement suite -----------------------------------------------------------------

def fuzz(seeds: Iterable[int], bounds: Bounds = Bounds(), formulas: int = 20, depth: int = 3) -> list[dict]:
    """Cross-check the engine against the oracle and the modal characterisations.

    For each seeded model: the engine's largest autobisimulation must equal the oracle's;
    bisimilar worlds must agree on sampled formulas of every sublanguage; and
    non-bisimilar worlds must get a verified distinguishing formula.  Returns the
    counterexamples found (empty when everything agrees).
    """
    from .bisim import Bisimilar, BisimulationError, distinguishing_formula, largest_autobisimulation
    from .formula import to_text
    from .semantics import Evaluator

    failures = []
    for seed in seeds:
        model = random_model(seed, bounds)
        engine = largest_autobisimulation(model)
        expected = oracle_largest(model)
        if engine.as_lists() != expected:
            failures.append({"seed": seed, "check": "largest", "engine": engine.as_lists(), "oracle": expected})
            continue
        rng = random.Random(seed)
        ev = Evaluator(model)
        sample = [random_formula(rng, lang, depth, model.props, model.agents)
                  for lang in ("C", "D", "S") for _ in range(formulas)]
        for w in model.worlds:
            for v in model.worlds:
                if w == v:
                    continue
                if engine.related(w, v):
                    for f in sample:
                        if ev.satisfies(w, f) != ev.satisfies(v, f):
                            failures.append({"seed": seed, "check": "agreement", "worlds": [w, v],
                                             "formula": to_text(f)})
                            break
                else:
                    try:
                        distinguishing_formula(model, w, v)
                    except (Bisimilar, BisimulationError) as exc:
                        failures.append({"seed": seed, "check": "distinguish", "worlds": [w, v],
                                         "error": str(exc)})
    return failures
