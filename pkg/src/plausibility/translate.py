"""Translations out of the conditional-belief language.

``cond_to_safe`` is global: it rewrites conditional belief through safe belief and is
truth-preserving everywhere.  ``cond_to_degrees`` depends on a pointed model and is only
guaranteed to agree with its input at that point.
"""
from __future__ import annotations

from .formula import (BOT, And, Atom, Bot, CondBelief, DegBelief, Formula, Implies, Know, Not, Or,
                      SafeBelief, Top, children, classify, deg_hat, disj, khat, subformulas,
                      to_text)
from .model import PlausibilityModel, WorldId, epistemic_class, min_set
from .semantics import Evaluator, spheres


class TranslationError(ValueError):
    pass


def _require_conditional(f: Formula):
    extra = classify(f) - {"C"}
    if extra:
        raise TranslationError(f"input uses modalities {sorted(extra)}; only conditional belief is allowed")


def _rebuild(g: Formula, cs: list[Formula]) -> Formula:
    match g:
        case Not():
            return Not(cs[0])
        case And():
            return And(*cs)
        case Or():
            return Or(*cs)
        case Implies():
            return Implies(*cs)
        case Know(a, _):
            return Know(a, cs[0])
        case CondBelief(a, _, _):
            return CondBelief(a, *cs)
        case DegBelief(a, n, _):
            return DegBelief(a, n, cs[0])
        case SafeBelief(a, _):
            return SafeBelief(a, cs[0])
    return g


def _map_bottom_up(f: Formula, rewrite) -> Formula:
    memo = {}
    for g in subformulas(f):
        memo[g] = rewrite(g, [memo[c] for c in children(g)])
    return memo[f]


def cond_to_safe(f: Formula) -> Formula:
    """Replace each ``B[a | c] g`` by ``Khat[a] c -> Khat[a] (c & [][a] (c -> g))``."""
    _require_conditional(f)

    def rewrite(g, cs):
        if isinstance(g, CondBelief):
            c, body = cs
            return Implies(khat(g.agent, c), khat(g.agent, And(c, SafeBelief(g.agent, Implies(c, body)))))
        return _rebuild(g, cs)

    return _map_bottom_up(f, rewrite)


def expand_knowledge(f: Formula) -> Formula:
    """Replace each ``K[a] g`` by ``B[a | ~g] false``."""

    def rewrite(g, cs):
        if isinstance(g, Know):
            return CondBelief(g.agent, Not(cs[0]), BOT)
        return _rebuild(g, cs)

    return _map_bottom_up(f, rewrite)


def layer_index(model: PlausibilityModel, w: WorldId, agent: str, psi: Formula,
                evaluator: Evaluator | None = None) -> int:
    """The layer holding the most plausible psi-worlds of w's class (normal layers)."""
    ev = evaluator or Evaluator(model)
    cls = epistemic_class(model, agent, w)
    best = min_set(model, agent, ev.extension(psi) & cls)
    if not best:
        raise TranslationError(f"no {to_text(psi)}-world in the {agent}-class of {w}")
    hits = [k for k, layer in enumerate(spheres(model, agent, w).layers) if best & layer]
    if len(hits) != 1 or not best <= spheres(model, agent, w).layers[hits[0]]:
        raise AssertionError(f"minimal set {sorted(best)} spans several layers")
    return hits[0]


def component(model: PlausibilityModel, w: WorldId) -> frozenset[WorldId]:
    """Worlds reachable from w through the epistemic classes of any agents."""
    seen, todo = {w}, [w]
    while todo:
        x = todo.pop()
        for a in model.agents:
            for y in epistemic_class(model, a, x):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return frozenset(seen)


def cond_to_degrees(model: PlausibilityModel, world: WorldId, f: Formula, *, verbatim: bool = False) -> Formula:
    """The pointed translation into degrees of belief.

    ``B[a | c] g`` at ``w`` becomes ``B[a # k] X & Bhat[a # k] Y`` with ``k`` the layer of the
    most plausible c-worlds, or ``K[a] Z`` when the class has no c-world.  With
    ``verbatim`` the renderings X, Y, Z are disjunctions of the pointed translations
    at every world of the class.  Such a disjunct can be vacuously true at a world it was
    not built for (its antecedent is a translation that fails there), so that form is not
    truth-preserving in general.  By default X, Y, Z instead use :func:`global_degrees`, a
    rendering that is exact on the whole connected component of ``world``.

    Big disjunctions are deduplicated, sorted by printed form and folded to the right, so
    translations at bisimilar points come out syntactically identical.
    """
    _require_conditional(f)
    model.check_world(world)
    ev = Evaluator(model)
    memo: dict[tuple[WorldId, Formula], Formula] = {}
    texts: dict[Formula, str] = {}
    exact = None if verbatim else _GlobalDegrees(model, world)

    def text(g):
        t = texts.get(g)
        if t is None:
            t = texts[g] = to_text(g)
        return t

    def big_or(fs):
        unique = {text(g): g for g in fs}
        assert unique, "empty disjunction"
        return disj([unique[t] for t in sorted(unique)])

    def across(cls, g):
        if exact is not None:
            return exact(g)
        return big_or(sigma(v, g) for v in cls)

    def sigma(w, g):
        key = (w, g)
        out = memo.get(key)
        if out is None:
            out = memo[key] = step(w, g)
        return out

    def step(w, g):
        match g:
            case Atom() | Top() | Bot():
                return g
            case Not(h):
                return Not(sigma(w, h))
            case And(l, r):
                return And(sigma(w, l), sigma(w, r))
            case Or(l, r):
                return Or(sigma(w, l), sigma(w, r))
            case Implies(l, r):
                return Implies(sigma(w, l), sigma(w, r))
            case Know(a, h):
                return sigma(w, CondBelief(a, Not(h), BOT))
            case CondBelief(a, psi, phi):
                cls = sorted(epistemic_class(model, a, w))
                if ev.extension(psi) & set(cls):
                    k = layer_index(model, w, a, psi, ev)
                    return And(DegBelief(a, k, across(cls, Implies(psi, phi))),
                               deg_hat(a, k, across(cls, psi)))
                return Know(a, across(cls, Not(psi)))
        raise TranslationError(f"cannot translate {g!r}")

    return sigma(world, f)


class _GlobalDegrees:
    """Rendering of conditional-belief formulas into degrees, exact on one component.

    ``B[a | c] g`` becomes ``K[a] ~c' | OR_k (B[a # k] (c' -> g') & Bhat[a # k] c')`` for
    k up to the largest layer index of agent a in the component.  A disjunct with k at or
    past the first layer holding c-worlds implies the conditional belief, and the disjunct
    at that layer is implied by it.
    """

    def __init__(self, model, world):
        self.memo = {}
        worlds = component(model, world)
        self.top = {}
        for a in model.agents:
            self.top[a] = max(len(spheres(model, a, w).layers) for w in worlds) - 1

    def __call__(self, g):
        out = self.memo.get(g)
        if out is None:
            out = self.memo[g] = self._step(g)
        return out

    def _step(self, g):
        match g:
            case Atom() | Top() | Bot():
                return g
            case Not(h):
                return Not(self(h))
            case And(l, r):
                return And(self(l), self(r))
            case Or(l, r):
                return Or(self(l), self(r))
            case Implies(l, r):
                return Implies(self(l), self(r))
            case Know(a, h):
                return Know(a, self(h))
            case CondBelief(a, psi, phi):
                c, b = self(psi), self(phi)
                imp = Implies(c, b)
                options = [And(DegBelief(a, k, imp), deg_hat(a, k, c)) for k in range(self.top[a] + 1)]
                return disj([Know(a, Not(c))] + options)
        raise TranslationError(f"cannot translate {g!r}")


def global_degrees(model: PlausibilityModel, world: WorldId, f: Formula) -> Formula:
    """Translation into degrees that agrees with ``f`` at every world connected to ``world``."""
    _require_conditional(f)
    model.check_world(world)
    return _GlobalDegrees(model, world)(f)


def no_translation(target: str) -> str:
    return f"no general translation exists into {target}"
