"""Model checking for knowledge, conditional belief, degrees of belief and safe belief.

Two modes are supported.  ``normal`` evaluates safe belief and belief spheres over the
normal plausibility relation (derived from the largest autobisimulation); ``raw`` uses
the model's own relation for those two modalities.  Knowledge and conditional belief
are the same in both modes.

World sets are handled internally as integer bitmasks over the model's world order.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable

from .bisim import _block_ranks, largest_autobisimulation, normal_relation
from .formula import (TOP, And, Atom, Bot, CondBelief, DegBelief, Formula, Implies, Know, Not, Or,
                      SafeBelief, Top, children, diamond)
from .model import PlausibilityModel, UnknownEntity, WorldId

MODES = ("normal", "raw")


@dataclass(frozen=True)
class LayerDecomposition:
    agent: str
    cls: frozenset[WorldId]
    layers: tuple[frozenset[WorldId], ...]

    @property
    def spheres(self) -> tuple[frozenset[WorldId], ...]:
        out, acc = [], frozenset()
        for layer in self.layers:
            acc = acc | layer
            out.append(acc)
        return tuple(out)

    @property
    def max_degree(self) -> int:
        return len(self.layers) - 1

    def sphere(self, n: int) -> frozenset[WorldId]:
        return self.spheres[min(n, self.max_degree)]


def _levels(worlds, key):
    groups = {}
    for w in worlds:
        groups.setdefault(key[w], []).append(w)
    return [groups[k] for k in sorted(groups)]


class _AgentFrame:
    __slots__ = ("classes", "class_of", "cond_levels", "spheres", "succ")


class _Frame:
    """Per-model, per-mode precomputation shared by all queries."""

    def __init__(self, model: PlausibilityModel, mode: str):
        self.model = model
        self.n = len(model.worlds)
        self.full = (1 << self.n) - 1
        idx = model.index
        self.bit = {w: 1 << i for w, i in idx.items()}
        self.atoms = {}
        for w in model.worlds:
            for p in model.valuation[w]:
                self.atoms[p] = self.atoms.get(p, 0) | self.bit[w]
        self.agents = {}
        Q = largest_autobisimulation(model) if mode == "normal" else None
        for a in model.agents:
            fr = _AgentFrame()
            seen = {}
            for w in model.worlds:
                c = model._classes[a][w]
                seen.setdefault(min(c), c)
            fr.classes = []
            fr.class_of = [0] * self.n
            raw = {w: len(model.successors(a, w)) for w in model.worlds}
            layer_key = _block_ranks(model, Q, a) if Q is not None else raw
            fr.cond_levels, fr.spheres = [], []
            for ci, c in enumerate(seen.values()):
                mask = self._mask(c)
                fr.classes.append(mask)
                for w in c:
                    fr.class_of[idx[w]] = ci
                fr.cond_levels.append([self._mask(l) for l in _levels(c, raw)])
                acc, sph = 0, []
                for l in _levels(c, layer_key):
                    acc |= self._mask(l)
                    sph.append(acc)
                fr.spheres.append(sph)
            rel = normal_relation(model, a) if mode == "normal" else model.plaus[a]
            fr.succ = [0] * self.n
            for x, y in rel:
                fr.succ[idx[x]] |= self.bit[y]
            self.agents[a] = fr

    def _mask(self, ws: Iterable[WorldId]) -> int:
        m = 0
        for w in ws:
            m |= self.bit[w]
        return m

    def worlds_of(self, mask: int) -> frozenset[WorldId]:
        return frozenset(w for w in self.model.worlds if mask & self.bit[w])

    def agent(self, a) -> _AgentFrame:
        try:
            return self.agents[a]
        except KeyError:
            raise UnknownEntity(f"unknown agent {a!r} in formula") from None

    def extension(self, f: Formula) -> int:
        # memo keyed by object identity: cheap, and valid while f is alive
        memo = {}
        try:
            return self._eval(f, memo)
        except RecursionError:
            stack = [(f, False)]
            while stack:
                g, ready = stack.pop()
                if id(g) in memo:
                    continue
                if ready:
                    memo[id(g)] = self._node(g, memo)
                else:
                    stack.append((g, True))
                    stack.extend((c, False) for c in children(g))
            return memo[id(f)]

    def _eval(self, g, memo) -> int:
        r = memo.get(id(g))
        if r is None:
            for c in children(g):
                if id(c) not in memo:
                    self._eval(c, memo)
            r = memo[id(g)] = self._node(g, memo)
        return r

    def _node(self, g, memo) -> int:
        match g:
            case Atom(p):
                return self.atoms.get(p, 0)
            case Top():
                return self.full
            case Bot():
                return 0
            case Not(h):
                return self.full & ~memo[id(h)]
            case And(l, r):
                return memo[id(l)] & memo[id(r)]
            case Or(l, r):
                return memo[id(l)] | memo[id(r)]
            case Implies(l, r):
                return (self.full & ~memo[id(l)]) | memo[id(r)]
            case Know(a, h):
                e = memo[id(h)]
                return sum(c for c in self.agent(a).classes if not c & ~e)
            case CondBelief(a, c, h):
                fr = self.agent(a)
                ec, eh = memo[id(c)], memo[id(h)]
                out = 0
                for mask, levels in zip(fr.classes, fr.cond_levels):
                    best = next((l & ec for l in levels if l & ec), 0)
                    if not best & ~eh:
                        out |= mask
                return out
            case DegBelief(a, n, h):
                fr = self.agent(a)
                e = memo[id(h)]
                out = 0
                for mask, sph in zip(fr.classes, fr.spheres):
                    if not sph[min(n, len(sph) - 1)] & ~e:
                        out |= mask
                return out
            case SafeBelief(a, h):
                fr = self.agent(a)
                e = memo[id(h)]
                out = 0
                for i, s in enumerate(fr.succ):
                    if not s & ~e:
                        out |= 1 << i
                return out
        raise TypeError(f"not a formula: {g!r}")


_FRAMES = weakref.WeakKeyDictionary()


def frame(model: PlausibilityModel, mode: str = "normal") -> _Frame:
    if mode not in MODES:
        raise ValueError(f"unknown semantics mode {mode!r}")
    per_model = _FRAMES.get(model)
    if per_model is None:
        per_model = _FRAMES.setdefault(model, {})
    fr = per_model.get(mode)
    if fr is None:
        fr = per_model.setdefault(mode, _Frame(model, mode))
    return fr


class Evaluator:
    """Evaluate many formulas on one model, sharing subformula results between calls."""

    def __init__(self, model: PlausibilityModel, mode: str = "normal"):
        self.frame = frame(model, mode)
        self.memo = {}

    def mask(self, f: Formula) -> int:
        r = self.memo.get(f)
        if r is None:
            r = self.memo[f] = self.frame.extension(f)
        return r

    def extension(self, f: Formula) -> frozenset[WorldId]:
        return self.frame.worlds_of(self.mask(f))

    def satisfies(self, w: WorldId, f: Formula) -> bool:
        self.frame.model.check_world(w)
        return bool(self.mask(f) & self.frame.bit[w])


def satisfies(model: PlausibilityModel, w: WorldId, f: Formula, mode: str = "normal") -> bool:
    model.check_world(w)
    fr = frame(model, mode)
    return bool(fr.extension(f) & fr.bit[w])


def extension(model: PlausibilityModel, f: Formula, mode: str = "normal") -> frozenset[WorldId]:
    fr = frame(model, mode)
    return fr.worlds_of(fr.extension(f))


def valid_on_model(model: PlausibilityModel, f: Formula, mode: str = "normal") -> bool:
    fr = frame(model, mode)
    return fr.extension(f) == fr.full


def spheres(model: PlausibilityModel, agent, w: WorldId, mode: str = "normal") -> LayerDecomposition:
    model.check_world(w)
    model.check_agent(agent)
    fr = frame(model, mode)
    af = fr.agents[agent]
    ci = af.class_of[model.index[w]]
    layers, prev = [], 0
    for s in af.spheres[ci]:
        layers.append(fr.worlds_of(s & ~prev))
        prev = s
    return LayerDecomposition(agent, fr.worlds_of(af.classes[ci]), tuple(layers))


def layers_of(model, agent, w, mode="normal"):
    return spheres(model, agent, w, mode).layers


def demey_counting_formula(n: int, agent: str = "a", prop: str = "p") -> Formula:
    """phi_0 = true; phi_n = <>(phi_{n-1} & p) for even n, <>(phi_{n-1} & ~p) for odd n."""
    if n < 0:
        raise ValueError("n must be a natural number")
    f = TOP
    for i in range(1, n + 1):
        lit = Atom(prop) if i % 2 == 0 else Not(Atom(prop))
        f = diamond(agent, And(f, lit))
    return f
