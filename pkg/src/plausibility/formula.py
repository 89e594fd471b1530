"""Formulas of the doxastic language: AST, parser, printer and structural measures.

Concrete syntax::

    true  false  p  ~f  f & g  f | g  f -> g  (f)
    K[a] f   Khat[a] f
    B[a] f   B[a | c] f   Bhat[a | c] f   B[a # n] f
    [][a] f  <>[a] f

Prefix operators bind tightest, then ``&``, ``|``, and ``->`` (right-associative).
Dual operators are parsed to negations of the primitive ones and re-sugared by the printer.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class Formula:
    """Base class.  Equality is structural; the hash is computed at construction.

    Children exist before their parents, so hashing bottom-up never recurses and
    equality walks an explicit stack: arbitrarily deep formulas stay usable.
    """

    __slots__ = ()

    def _key(self):
        raise NotImplementedError

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self._key())))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            x, y = stack.pop()
            if x is y:
                continue
            if type(x) is not type(y) or x._hash != y._hash:
                return False
            for u, v in zip(x._key(), y._key()):
                if isinstance(u, Formula):
                    stack.append((u, v))
                elif u != v:
                    return False
        return True

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)

    # operator sugar for building formulas in code
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str

    def _key(self):
        return (self.name,)


@dataclass(frozen=True, eq=False)
class Top(Formula):
    def _key(self):
        return ()


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    def _key(self):
        return ()


@dataclass(frozen=True, eq=False)
class Not(Formula):
    body: Formula

    def _key(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula

    def _key(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula

    def _key(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def _key(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Know(Formula):
    agent: str
    body: Formula

    def _key(self):
        return (self.agent, self.body)


@dataclass(frozen=True, eq=False)
class CondBelief(Formula):
    agent: str
    condition: Formula
    body: Formula

    def _key(self):
        return (self.agent, self.condition, self.body)


@dataclass(frozen=True, eq=False)
class DegBelief(Formula):
    agent: str
    degree: int
    body: Formula

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ValueError(f"degree must be a natural number, got {self.degree!r}")
        super().__post_init__()

    def _key(self):
        return (self.agent, self.degree, self.body)


@dataclass(frozen=True, eq=False)
class SafeBelief(Formula):
    agent: str
    body: Formula

    def _key(self):
        return (self.agent, self.body)


TOP = Top()
BOT = Bot()


# -- duals and abbreviations ----------------------------------------------------

def khat(agent, f):
    return Not(Know(agent, Not(f)))


def belief(agent, f):
    return CondBelief(agent, TOP, f)


def bhat(agent, cond, f):
    return Not(CondBelief(agent, cond, Not(f)))


def deg_hat(agent, n, f):
    return Not(DegBelief(agent, n, Not(f)))


def diamond(agent, f):
    return Not(SafeBelief(agent, Not(f)))


def conj(fs) -> Formula:
    """Right-folded conjunction; the empty conjunction is ``true``."""
    fs = list(fs)
    if not fs:
        return TOP
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(fs) -> Formula:
    """Right-folded disjunction; the empty disjunction is ``false``."""
    fs = list(fs)
    if not fs:
        return BOT
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


# -- parsing ------------------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


RESERVED = {"true", "false", "K", "Khat", "B", "Bhat"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym>\[\]|<>|->|[~&|()\[\]\#])
  | (?P<nat>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind == "eof":
            found = "end of input" if kind == "eof" else repr(text)
            raise FormulaSyntaxError(f"expected {value!r}, found {found}", pos)

    def agent(self):
        kind, text, pos = self.take()
        if kind != "ident":
            raise FormulaSyntaxError("expected an agent name", pos)
        return text

    def formula(self):
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.prefix()
        while self.peek()[1] == "&":
            self.take()
            left = And(left, self.prefix())
        return left

    def prefix(self):
        kind, text, pos = self.take()
        match kind, text:
            case "sym", "~":
                depth = 1
                while self.peek()[1] == "~":
                    self.take()
                    depth += 1
                f = self.prefix()
                for _ in range(depth):
                    f = Not(f)
                return f
            case "sym", "(":
                inner = self.formula()
                self.expect(")")
                return inner
            case "sym", "[]":
                self.expect("[")
                a = self.agent()
                self.expect("]")
                return SafeBelief(a, self.prefix())
            case "sym", "<>":
                self.expect("[")
                a = self.agent()
                self.expect("]")
                return diamond(a, self.prefix())
            case "ident", "true":
                return TOP
            case "ident", "false":
                return BOT
            case "ident", "K" | "Khat":
                self.expect("[")
                a = self.agent()
                self.expect("]")
                body = self.prefix()
                return Know(a, body) if text == "K" else khat(a, body)
            case "ident", "B" | "Bhat":
                return self.belief(text == "Bhat", pos)
            case "ident", _:
                return Atom(text)
            case "eof", _:
                raise FormulaSyntaxError("unexpected end of input", pos)
        raise FormulaSyntaxError(f"unexpected token {text!r}", pos)

    def belief(self, dual, pos):
        self.expect("[")
        a = self.agent()
        kind, text, tpos = self.take()
        match text:
            case "]":
                cond = TOP
                body = self.prefix()
                return bhat(a, cond, body) if dual else CondBelief(a, cond, body)
            case "|":
                cond = self.formula()
                self.expect("]")
                body = self.prefix()
                return bhat(a, cond, body) if dual else CondBelief(a, cond, body)
            case "#":
                nkind, ntext, npos = self.take()
                if nkind != "nat":
                    raise FormulaSyntaxError("expected a degree", npos)
                self.expect("]")
                body = self.prefix()
                n = int(ntext)
                return deg_hat(a, n, body) if dual else DegBelief(a, n, body)
        raise FormulaSyntaxError(f"expected ']', '|' or '#', found {text!r}", tpos)


def parse(text: str) -> Formula:
    p = _Parser(text)
    try:
        f = p.formula()
    except RecursionError:
        raise FormulaSyntaxError("formula nested too deeply", 0) from None
    kind, tok, pos = p.peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"unexpected token {tok!r}", pos)
    return f


# -- printing -----------------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3}


def to_text(f: Formula) -> str:
    memo = {}

    def go(f):
        key = id(f)
        if key not in memo:
            memo[key] = render(f)
        return memo[key]

    def unary(f):
        s = go(f)
        return f"({s})" if type(f) in _PREC else s

    def binary(f, op, left_ok, right_ok):
        l = go(f.left)
        r = go(f.right)
        if type(f.left) in _PREC and not left_ok(_PREC[type(f.left)]):
            l = f"({l})"
        if type(f.right) in _PREC and not right_ok(_PREC[type(f.right)]):
            r = f"({r})"
        return f"{l} {op} {r}"

    def render(f):
        match f:
            case Atom(name):
                return name
            case Top():
                return "true"
            case Bot():
                return "false"
            case Not(Know(a, Not(g))):
                return f"Khat[{a}] {unary(g)}"
            case Not(CondBelief(a, Top(), Not(g))):
                return f"Bhat[{a}] {unary(g)}"
            case Not(CondBelief(a, c, Not(g))):
                return f"Bhat[{a} | {go(c)}] {unary(g)}"
            case Not(DegBelief(a, n, Not(g))):
                return f"Bhat[{a} # {n}] {unary(g)}"
            case Not(SafeBelief(a, Not(g))):
                return f"<>[{a}] {unary(g)}"
            case Not(g):
                return f"~{unary(g)}"
            case And():
                return binary(f, "&", lambda p: p == 3, lambda p: p > 3)
            case Or():
                return binary(f, "|", lambda p: p >= 2, lambda p: p > 2)
            case Implies():
                return binary(f, "->", lambda p: p > 1, lambda p: p >= 1)
            case Know(a, g):
                return f"K[{a}] {unary(g)}"
            case CondBelief(a, Top(), g):
                return f"B[{a}] {unary(g)}"
            case CondBelief(a, c, g):
                return f"B[{a} | {go(c)}] {unary(g)}"
            case DegBelief(a, n, g):
                return f"B[{a} # {n}] {unary(g)}"
            case SafeBelief(a, g):
                return f"[][{a}] {unary(g)}"
        raise TypeError(f"not a formula: {f!r}")

    # fill the memo children first so render never recurses deeply
    for g in _post_order(f):
        memo[id(g)] = render(g)
    return memo[id(f)]


# -- traversal and measures ------------------------------------------------------

_CHILDREN = {
    Atom: lambda f: (),
    Top: lambda f: (),
    Bot: lambda f: (),
    Not: lambda f: (f.body,),
    And: lambda f: (f.left, f.right),
    Or: lambda f: (f.left, f.right),
    Implies: lambda f: (f.left, f.right),
    Know: lambda f: (f.body,),
    CondBelief: lambda f: (f.condition, f.body),
    DegBelief: lambda f: (f.body,),
    SafeBelief: lambda f: (f.body,),
}


def children(f: Formula) -> tuple[Formula, ...]:
    try:
        return _CHILDREN[type(f)](f)
    except KeyError:
        raise TypeError(f"not a formula: {f!r}") from None


def subformulas(f: Formula) -> Iterator[Formula]:
    """Distinct subformulas, children before parents."""
    seen = set()
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if done:
            yield g
            continue
        if g in seen:
            continue
        seen.add(g)
        stack.append((g, True))
        stack.extend((c, False) for c in children(g))


def _post_order(f: Formula) -> list[Formula]:
    """Nodes in children-first order, deduplicated by identity."""
    out, seen = [], set()
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if done:
            out.append(g)
        elif id(g) not in seen:
            seen.add(id(g))
            stack.append((g, True))
            stack.extend((c, False) for c in children(g))
    return out


def _fold(f, leaf, node):
    memo = {}
    for g in subformulas(f):
        memo[g] = node(g, [memo[c] for c in children(g)]) if children(g) else leaf(g)
    return memo[f]


_MODAL = (Know, CondBelief, DegBelief, SafeBelief)


def modal_depth(f: Formula) -> int:
    return _fold(f, lambda g: 0,
                 lambda g, ds: max(ds) + (1 if isinstance(g, _MODAL) else 0))


def size(f: Formula) -> int:
    """Number of nodes in the tree (shared subterms counted every time)."""
    return _fold(f, lambda g: 1, lambda g, ss: 1 + sum(ss))


def classify(f: Formula) -> frozenset[str]:
    """Modalities used besides knowledge, as a subset of {"C", "D", "S"}."""
    tags = set()
    for g in subformulas(f):
        match g:
            case CondBelief():
                tags.add("C")
            case DegBelief():
                tags.add("D")
            case SafeBelief():
                tags.add("S")
    return frozenset(tags)


def props(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def agents(f: Formula) -> frozenset[str]:
    return frozenset(g.agent for g in subformulas(f) if isinstance(g, _MODAL))


def max_degree(f: Formula) -> int:
    """Largest degree of any graded belief operator, or -1 if there is none."""
    return max((g.degree for g in subformulas(f) if isinstance(g, DegBelief)), default=-1)


def desugar(f: Formula, filler: str = "p") -> Formula:
    """Rewrite into atoms, negation, conjunction and modalities.

    ``true`` becomes ``~(filler & ~filler)`` for a fixed atom; any atom works.
    """
    contradiction = And(Atom(filler), Not(Atom(filler)))

    def node(g, cs):
        match g:
            case Not():
                return Not(cs[0])
            case And():
                return And(cs[0], cs[1])
            case Or():
                return Not(And(Not(cs[0]), Not(cs[1])))
            case Implies():
                return Not(And(cs[0], Not(cs[1])))
            case Know(a, _):
                return Know(a, cs[0])
            case CondBelief(a, _, _):
                return CondBelief(a, cs[0], cs[1])
            case DegBelief(a, n, _):
                return DegBelief(a, n, cs[0])
            case SafeBelief(a, _):
                return SafeBelief(a, cs[0])

    def leaf(g):
        match g:
            case Top():
                return Not(contradiction)
            case Bot():
                return contradiction
        return g

    return _fold(f, leaf, node)
