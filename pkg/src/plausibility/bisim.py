"""Autobisimulations over a single plausibility model and the constructions built on them.

The derived relation compares worlds through their most plausible relatives:
``w >=^R_a v`` iff ``Min_a([w]_R ∩ [w]_a) >=_a Min_a([v]_R ∩ [v]_a)``.  Minimal sets sit
on one plausibility level, so this amounts to comparing, for each world, the rank of
the best world of its R-block inside its epistemic class.
"""
from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .formula import TOP, And, Atom, Formula, Not, Or, bhat, conj, khat
from .model import PlausibilityModel, Pair, UnknownEntity, WorldId, disjoint_union

CLAUSES = ("atoms", "forth>=", "back>=", "forth<=", "back<=")


class BisimulationError(Exception):
    """Refinement produced an unverified relation and the brute-force fallback is out of range."""


class DomainTooLarge(ValueError):
    pass


class Bisimilar(ValueError):
    """Raised when a distinguishing formula is requested for bisimilar worlds."""


@dataclass(frozen=True)
class EquivRelation:
    """A partition of a model's worlds; blocks are sorted tuples ordered by least member."""

    blocks: tuple[tuple[WorldId, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[WorldId]]) -> "EquivRelation":
        bs = [tuple(sorted(b)) for b in blocks]
        bs = [b for b in bs if b]
        seen = [w for b in bs for w in b]
        if len(seen) != len(set(seen)):
            raise ValueError("blocks overlap")
        return cls(tuple(sorted(bs)))

    @classmethod
    def identity(cls, model: PlausibilityModel) -> "EquivRelation":
        return cls(tuple((w,) for w in model.worlds))

    @cached_property
    def rep(self) -> dict[WorldId, WorldId]:
        """Each world mapped to the least world of its block."""
        return {w: b[0] for b in self.blocks for w in b}

    @cached_property
    def block_of(self) -> dict[WorldId, tuple[WorldId, ...]]:
        return {w: b for b in self.blocks for w in b}

    def related(self, w: WorldId, v: WorldId) -> bool:
        return self.rep[w] == self.rep[v]

    def pairs(self) -> frozenset[Pair]:
        return frozenset((x, y) for b in self.blocks for x in b for y in b)

    def refines(self, other: "EquivRelation") -> bool:
        """Every block of ``self`` lies inside a block of ``other``."""
        return all(len({other.rep[w] for w in b}) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def as_lists(self) -> list[list[WorldId]]:
        return [list(b) for b in self.blocks]


def equivalence_closure(pairs: Iterable[Pair], model: PlausibilityModel) -> EquivRelation:
    parent = {w: w for w in model.worlds}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        for w in (x, y):
            if w not in parent:
                raise UnknownEntity(f"unknown world {w!r}")
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups = {}
    for w in model.worlds:
        groups.setdefault(find(w), []).append(w)
    return EquivRelation.from_blocks(groups.values())


def _as_equiv(model, R) -> EquivRelation:
    return R if isinstance(R, EquivRelation) else equivalence_closure(R, model)


# -- ranks -------------------------------------------------------------------------

def _ranks(model: PlausibilityModel, agent) -> dict[WorldId, int]:
    # number of worlds at least as plausible; smaller means more plausible
    return {w: len(model.successors(agent, w)) for w in model.worlds}


def _block_ranks(model, R: EquivRelation, agent) -> dict[WorldId, int]:
    """For each w, the raw rank of ``Min_a([w]_R ∩ [w]_a)``."""
    rank = _ranks(model, agent)
    classes = model._classes[agent]
    best = {}
    for w in model.worlds:
        key = (R.rep[w], min(classes[w]))
        best[key] = min(best.get(key, rank[w]), rank[w])
    return {w: best[(R.rep[w], min(classes[w]))] for w in model.worlds}


def derived_relation(model: PlausibilityModel, R, agent) -> frozenset[Pair]:
    """The relation ``>=^R_a`` as a set of pairs; ``R`` may be any set of pairs."""
    model.check_agent(agent)
    R = _as_equiv(model, R)
    r = _block_ranks(model, R, agent)
    classes = model._classes[agent]
    return frozenset((w, v) for w in model.worlds for v in classes[w] if r[w] >= r[v])


# -- checking ------------------------------------------------------------------------

@dataclass(frozen=True)
class BisimViolation:
    clause: str
    agent: str | None
    pair: Pair
    witness: WorldId | None

    def __str__(self):
        who = f" agent {self.agent}" if self.agent else ""
        wit = f" witness {self.witness}" if self.witness else ""
        return f"[{self.clause}]{who} at {self.pair}{wit}"


@dataclass(frozen=True)
class BisimReport:
    violations: tuple[BisimViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def check_autobisimulation(model: PlausibilityModel, R) -> BisimReport:
    """Check [atoms] and the four back/forth clauses for every pair of ``R``."""
    pairs = R.pairs() if isinstance(R, EquivRelation) else frozenset(R)
    closure = equivalence_closure(pairs, model)
    partners = {}
    for x, y in pairs:
        partners.setdefault(x, set()).add(y)
    violations = []
    for a in model.agents:
        ge = derived_relation(model, closure, a)
        below = {w: set() for w in model.worlds}
        above = {w: set() for w in model.worlds}
        for x, y in ge:
            below[x].add(y)
            above[y].add(x)
        for w, w2 in sorted(pairs):
            # forth: every step from w is matched by a step from w2
            for clause, side, other in (("forth>=", below[w], below[w2]), ("forth<=", above[w], above[w2])):
                for v in sorted(side):
                    if not partners.get(v, set()) & other:
                        violations.append(BisimViolation(clause, a, (w, w2), v))
            for clause, side, other in (("back>=", below[w2], below[w]), ("back<=", above[w2], above[w])):
                for v2 in sorted(side):
                    if not any(v2 in partners.get(v, ()) for v in other):
                        violations.append(BisimViolation(clause, a, (w, w2), v2))
    for w, w2 in sorted(pairs):
        if model.valuation[w] != model.valuation[w2]:
            violations.insert(0, BisimViolation("atoms", None, (w, w2), None))
    return BisimReport(tuple(violations))


# -- refinement -------------------------------------------------------------------------

def _valuation_partition(model):
    groups = {}
    for w in model.worlds:
        groups.setdefault(model.valuation[w], []).append(w)
    return EquivRelation.from_blocks(groups.values())


def _signatures(model, P: EquivRelation):
    sig = {w: [P.rep[w]] for w in model.worlds}
    for a in model.agents:
        r = _block_ranks(model, P, a)
        classes = model._classes[a]
        for w in model.worlds:
            below = frozenset(P.rep[v] for v in classes[w] if r[w] >= r[v])
            above = frozenset(P.rep[v] for v in classes[w] if r[v] >= r[w])
            sig[w].append(below)
            sig[w].append(above)
    return {w: tuple(s) for w, s in sig.items()}


def _split(model, P, sig):
    groups = {}
    for w in model.worlds:
        groups.setdefault(sig[w], []).append(w)
    return EquivRelation.from_blocks(groups.values())


def _refine(model):
    """Yield the successive partitions until the fixpoint (inclusive)."""
    P = _valuation_partition(model)
    yield P, None
    while True:
        sig = _signatures(model, P)
        Q = _split(model, P, sig)
        if len(Q) == len(P):
            return
        yield Q, sig
        P = Q


_LARGEST = weakref.WeakKeyDictionary()


def largest_autobisimulation(model: PlausibilityModel, max_brute: int = 8) -> EquivRelation:
    """The largest autobisimulation, computed by signature refinement and then verified."""
    cached = _LARGEST.get(model)
    if cached is not None:
        return cached
    for P, _ in _refine(model):
        pass
    if not check_autobisimulation(model, P).ok:
        if len(model.worlds) > max_brute:
            raise BisimulationError(
                f"refinement fixpoint failed verification on a {len(model.worlds)}-world model "
                f"and brute force is limited to {max_brute} worlds")
        P = brute_force_largest(model, max_brute)
    _LARGEST[model] = P
    return P


def partitions(items: list) -> Iterable[list[list]]:
    """All set partitions, via restricted-growth strings."""
    n = len(items)
    if n == 0:
        yield []
        return
    codes = [0] * n

    def rec(i, top):
        if i == n:
            blocks = [[] for _ in range(top + 1)]
            for item, c in zip(items, codes):
                blocks[c].append(item)
            yield blocks
            return
        for c in range(top + 2):
            codes[i] = c
            yield from rec(i + 1, max(top, c))

    codes[0] = 0
    yield from rec(1, 0)


def brute_force_largest(model: PlausibilityModel, max_brute: int = 8) -> EquivRelation:
    """Enumerate every partition and keep the coarsest autobisimulation."""
    if len(model.worlds) > max_brute:
        raise DomainTooLarge(f"{len(model.worlds)} worlds exceeds the brute-force bound {max_brute}")
    val = _valuation_partition(model)
    passing = []
    for blocks in partitions(list(model.worlds)):
        E = EquivRelation.from_blocks(blocks)
        if E.refines(val) and check_autobisimulation(model, E).ok:
            passing.append(E)
    best = min(passing, key=len)
    if not all(E.refines(best) for E in passing):
        raise BisimulationError("no unique largest autobisimulation among partitions")
    return best


# -- normalization and contraction -----------------------------------------------------

def normal_relation(model: PlausibilityModel, agent) -> frozenset[Pair]:
    return derived_relation(model, largest_autobisimulation(model), agent)


def normalize(model: PlausibilityModel) -> PlausibilityModel:
    return model.with_plaus({a: normal_relation(model, a) for a in model.agents})


def contract(model: PlausibilityModel) -> tuple[PlausibilityModel, dict[WorldId, WorldId]]:
    """Quotient by the largest autobisimulation; blocks are named ``c:`` + least member."""
    Q = largest_autobisimulation(model)
    name = {w: f"c:{Q.rep[w]}" for w in model.worlds}
    valuation = {name[b[0]]: model.valuation[b[0]] for b in Q.blocks}
    edges = {a: {(name[x], name[y]) for x, y in normal_relation(model, a)} for a in model.agents}
    return PlausibilityModel.build(valuation, model.agents, edges), name


def bisimilar(p1: tuple[PlausibilityModel, WorldId], p2: tuple[PlausibilityModel, WorldId], max_brute: int = 8):
    """Decide bisimilarity of two pointed models; on success also return the cross relation."""
    (m1, w1), (m2, w2) = p1, p2
    m1.check_world(w1)
    m2.check_world(w2)
    union, left, right = disjoint_union(m1, m2)
    Q = largest_autobisimulation(union, max_brute)
    if not Q.related(left[w1], right[w2]):
        return False, None
    cross = frozenset((x, y) for x in m1.worlds for y in m2.worlds if Q.related(left[x], right[y]))
    return True, cross


# -- distinguishing formulas -------------------------------------------------------------

def _literals(model, valuation):
    out = [Atom(p) if p in valuation else Not(Atom(p)) for p in model.props]
    return conj(out) if out else TOP


def _component_formula(a, kind, delta_B, delta_X) -> Formula:
    """A formula true at w in B iff block X appears in the given signature component of w."""
    cond = Or(delta_B, delta_X)
    if kind == "below":
        return bhat(a, cond, delta_X)
    return And(khat(a, delta_X), bhat(a, cond, delta_B))


def _separator(model, sig_w, sig_v, delta, old) -> Formula:
    """A formula true on the part with signature ``sig_w`` and false on ``sig_v``."""
    for i, a in enumerate(model.agents):
        for j, kind in enumerate(("below", "above")):
            sw, sv = sig_w[1 + 2 * i + j], sig_v[1 + 2 * i + j]
            if sw == sv:
                continue
            x = min(sw - sv) if sw - sv else min(sv - sw)
            f = _component_formula(a, kind, delta[old], delta[x])
            return f if x in sw else Not(f)
    raise AssertionError("signatures do not differ")


_ROUNDS = weakref.WeakKeyDictionary()


def characteristic_formulas(model: PlausibilityModel):
    """Run refinement while tracking formulas; returns the rounds as (partition, delta, separators).

    ``delta`` maps each block representative to an L^C formula whose extension is exactly
    the block.  ``separators`` maps (rep_w, rep_v) of parts split in that round to a formula
    true on the first part and false on the second.
    """
    cached = _ROUNDS.get(model)
    if cached is not None:
        return cached
    rounds = []
    prev = None
    delta = {}
    for P, sig in _refine(model):
        seps = {}
        if sig is None:
            delta = {b[0]: _literals(model, model.valuation[b[0]]) for b in P.blocks}
        else:
            new_delta = {}
            parts_of = {}
            for b in P.blocks:
                parts_of.setdefault(prev.rep[b[0]], []).append(b[0])
            for old, parts in parts_of.items():
                if len(parts) == 1:
                    new_delta[parts[0]] = delta[old]
                    continue
                for pw, pv in itertools.permutations(parts, 2):
                    seps[(pw, pv)] = _separator(model, sig[pw], sig[pv], delta, old)
                for pw in parts:
                    new_delta[pw] = conj([delta[old]] + [seps[(pw, pv)] for pv in parts if pv != pw])
            delta = new_delta
        rounds.append((P, delta, seps))
        prev = P
    rounds = tuple(rounds)
    _ROUNDS[model] = rounds
    return rounds


def distinguishing_formula(model: PlausibilityModel, w: WorldId, v: WorldId) -> Formula:
    """An L^C formula true at ``w`` and false at ``v``; raises ``Bisimilar`` if none exists."""
    from .semantics import satisfies

    model.check_world(w)
    model.check_world(v)
    Q = largest_autobisimulation(model)
    if Q.related(w, v):
        raise Bisimilar(f"{w} and {v} are bisimilar")
    rounds = characteristic_formulas(model)
    if rounds[-1][0] != Q:
        # only happens if the brute-force fallback was needed, which refinement rules out
        raise BisimulationError("refinement fixpoint differs from the largest autobisimulation")
    f = None
    P0 = rounds[0][0]
    if not P0.related(w, v):
        diff = sorted(model.valuation[w] ^ model.valuation[v])[0]
        f = Atom(diff) if diff in model.valuation[w] else Not(Atom(diff))
    else:
        for (P, _, seps), (prevP, _, _) in zip(rounds[1:], rounds):
            if prevP.related(w, v) and not P.related(w, v):
                f = seps[(P.rep[w], P.rep[v])]
                break
    if f is None or not satisfies(model, w, f) or satisfies(model, v, f):
        raise BisimulationError(f"could not verify a distinguishing formula for {w}, {v}")
    return f
