"""Propositional formulas and decidable entailment for CPL, LP and L3R.

All three core logics are decided by brute-force valuation enumeration over
an explicit, finite signature.  Truth values are encoded as small integers
ordered 0 < 1 < 2:

    CPL   0 = false, 2 = true                 designated {2}
    LP    0 = f, 1 = b, 2 = t                 designated {1, 2}
    L3R   0 = 0, 1 = u, 2 = 1                 designated {2}

Conjunction is ``min`` and disjunction is ``max`` in every logic.  The weak
negation ``~`` is LP's paraconsistent negation in LP and the external
(Bochvar) negation in L3R.  Classical negation ``-`` is superimposed: ``-A``
is designated iff ``A`` is not.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Formula",
    "Var",
    "WeakNeg",
    "ClassNeg",
    "And",
    "Or",
    "ParseError",
    "SignatureError",
    "LogicError",
    "CoreLogic",
    "parse_formula",
    "atoms_of",
    "disjoin",
    "sort_formulas",
    "entails",
    "models_of",
    "is_consistent",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class SignatureError(ValueError):
    """An atom outside the logic's signature was used."""


class LogicError(ValueError):
    """A formula is not admissible in the chosen core logic."""


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


class Formula:
    """Base class of the formula tree.  Subclasses are frozen dataclasses."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return WeakNeg(self)

    def __neg__(self) -> "Formula":
        return ClassNeg(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class WeakNeg(Formula):
    sub: Formula

    def __repr__(self):
        return f"WeakNeg({self.sub!r})"


@dataclass(frozen=True, repr=False)
class ClassNeg(Formula):
    sub: Formula

    def __repr__(self):
        return f"ClassNeg({self.sub!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


# precedence levels used by the printer
_PREC = {Or: 1, And: 2, WeakNeg: 3, ClassNeg: 3, Var: 4}


@lru_cache(maxsize=1 << 16)
def to_text(f: Formula) -> str:
    """Canonical ASCII rendering; ``parse_formula(to_text(f)) == f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, (WeakNeg, ClassNeg)):
        op = "~" if isinstance(f, WeakNeg) else "-"
        inner = to_text(f.sub)
        if _PREC[type(f.sub)] < 3:
            inner = f"({inner})"
        return op + inner
    op = " | " if isinstance(f, Or) else " & "
    prec = _PREC[type(f)]
    left = to_text(f.left)
    if _PREC[type(f.left)] < prec:
        left = f"({left})"
    right = to_text(f.right)
    # left associativity: a right operand of equal precedence needs parens
    if _PREC[type(f.right)] <= prec:
        right = f"({right})"
    return left + op + right


def atoms_of(f: Formula | Iterable[Formula]) -> frozenset[str]:
    if isinstance(f, Formula):
        return _atoms(f)
    out: set[str] = set()
    for g in f:
        out |= _atoms(g)
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def _atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, (WeakNeg, ClassNeg)):
        return _atoms(f.sub)
    return _atoms(f.left) | _atoms(f.right)


def _has_weak_neg(f: Formula) -> bool:
    if isinstance(f, Var):
        return False
    if isinstance(f, WeakNeg):
        return True
    if isinstance(f, ClassNeg):
        return _has_weak_neg(f.sub)
    return _has_weak_neg(f.left) or _has_weak_neg(f.right)


def sort_formulas(fs: Iterable[Formula]) -> list[Formula]:
    return sorted(fs, key=to_text)


def disjoin(fs: Iterable[Formula]) -> Formula | None:
    """Left-nested disjunction of ``fs`` in canonical order, ``None`` if empty."""
    out = None
    for f in sort_formulas(set(fs)):
        out = f if out is None else Or(out, f)
    return out


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-zA-Z0-9_]*)|([~\-&|()]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append(("", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.disjunction()
        tok, pos = self.peek()
        if tok:
            raise ParseError(f"unexpected {tok!r}", pos)
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek()[0] == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok, pos = self.take()
        if tok == "~":
            return WeakNeg(self.unary())
        if tok == "-":
            return ClassNeg(self.unary())
        if tok == "(":
            f = self.disjunction()
            tok, pos = self.take()
            if tok != ")":
                raise ParseError("expected ')'", pos)
            return f
        if tok and ATOM_RE.fullmatch(tok):
            return Var(tok)
        if not tok:
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {tok!r}", pos)


@lru_cache(maxsize=1 << 14)
def parse_formula(text: str) -> Formula:
    """Parse the ASCII formula grammar (``~``/``-`` bind tighter than ``&``,
    which binds tighter than ``|``; binary operators associate left).

    >>> parse_formula("~p & (q | r)")
    And(WeakNeg(Var('p')), Or(Var('q'), Var('r')))
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Core logics
# ---------------------------------------------------------------------------

CPL, LP, L3R = "cpl", "lp", "l3r"

_LABELS = {
    CPL: {0: "0", 2: "1"},
    LP: {0: "f", 1: "b", 2: "t"},
    L3R: {0: "0", 1: "u", 2: "1"},
}


@dataclass(frozen=True)
class CoreLogic:
    """A core logic over a finite signature.

    ``pairs`` is only used by L3R: each ``(a, b)`` forces ``v(b)`` to be the
    Kleene negation of ``v(a)`` (1 <-> 0, u <-> u).
    """

    tag: str
    signature: frozenset[str] = frozenset()
    pairs: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        if self.tag not in _LABELS:
            raise ValueError(f"unknown core logic {self.tag!r}")
        if self.pairs and self.tag != L3R:
            raise ValueError("contrary pairs are only meaningful for l3r")
        object.__setattr__(self, "signature", frozenset(self.signature))
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in self.pairs))
        for a, b in self.pairs:
            if a not in self.signature or b not in self.signature:
                raise SignatureError(f"contrary pair ({a}, {b}) outside signature")

    @classmethod
    def cpl(cls, atoms: Iterable[str] = ()) -> "CoreLogic":
        return cls(CPL, frozenset(atoms))

    @classmethod
    def lp(cls, atoms: Iterable[str] = ()) -> "CoreLogic":
        return cls(LP, frozenset(atoms))

    @classmethod
    def l3r(cls, atoms: Iterable[str] = (), contraries: Mapping[str, str] | Iterable[tuple[str, str]] = ()) -> "CoreLogic":
        if isinstance(contraries, Mapping):
            contraries = contraries.items()
        pairs = frozenset(contraries)
        atoms = set(atoms)
        for a, b in pairs:
            atoms.update((a, b))
        return cls(L3R, frozenset(atoms), pairs)

    def extend(self, atoms: Iterable[str]) -> "CoreLogic":
        extra = frozenset(atoms) - self.signature
        if not extra:
            return self
        return CoreLogic(self.tag, self.signature | extra, self.pairs)

    @property
    def designated(self) -> frozenset[int]:
        return frozenset((1, 2)) if self.tag == LP else frozenset((2,))

    def label(self, value: int) -> str:
        return _LABELS[self.tag][value]

    def check(self, formulas: Iterable[Formula]) -> None:
        for f in formulas:
            missing = _atoms(f) - self.signature
            if missing:
                raise SignatureError(
                    f"atoms {sorted(missing)} of {to_text(f)!r} are outside the signature"
                )
            if self.tag == CPL and _has_weak_neg(f):
                raise LogicError(f"weak negation in CPL formula {to_text(f)!r}")

    def __str__(self):
        return self.tag


# --- compiled evaluation ----------------------------------------------------

Evaluator = Callable[[Sequence[int]], int]


def _compile(f: Formula, index: Mapping[str, int], tag: str) -> Evaluator:
    if isinstance(f, Var):
        i = index[f.name]
        return lambda v: v[i]
    if isinstance(f, ClassNeg):
        g = _compile(f.sub, index, tag)
        if tag == LP:
            return lambda v: 2 if g(v) == 0 else 0
        return lambda v: 0 if g(v) == 2 else 2
    if isinstance(f, WeakNeg):
        g = _compile(f.sub, index, tag)
        if tag == LP:
            return lambda v: 2 - g(v)
        # L3R external negation; CPL never gets here
        return lambda v: 0 if g(v) == 2 else 2
    left = _compile(f.left, index, tag)
    right = _compile(f.right, index, tag)
    if isinstance(f, And):
        return lambda v: min(left(v), right(v))
    return lambda v: max(left(v), right(v))


@lru_cache(maxsize=1 << 16)
def _evaluator(f: Formula, order: tuple[str, ...], tag: str) -> Evaluator:
    return _compile(f, {a: i for i, a in enumerate(order)}, tag)


def _components(logic: CoreLogic, order: tuple[str, ...]) -> list[tuple[int, list[tuple[int, bool]]]]:
    """Group paired atoms into components; each member is (index, flipped)
    relative to the component root.  Odd cycles force the value u."""
    index = {a: i for i, a in enumerate(order)}
    adj: dict[int, list[int]] = {i: [] for i in range(len(order))}
    for a, b in logic.pairs:
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    seen: dict[int, bool] = {}
    comps = []
    for root in range(len(order)):
        if root in seen:
            continue
        seen[root] = False
        members = [(root, False)]
        stack = [root]
        odd = False
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen[y] = not seen[x]
                    members.append((y, seen[y]))
                    stack.append(y)
                elif seen[y] == seen[x]:
                    odd = True
        comps.append((1 if odd else -1, members))
    return comps


@lru_cache(maxsize=256)
def _valuations(logic: CoreLogic) -> tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]:
    order = tuple(sorted(logic.signature))
    if logic.tag == CPL:
        return order, tuple(itertools.product((2, 0), repeat=len(order)))
    if logic.tag == LP:
        return order, tuple(itertools.product((2, 1, 0), repeat=len(order)))
    comps = _components(logic, order)
    choices = [((forced,) if forced >= 0 else (2, 1, 0)) for forced, _ in comps]
    out = []
    for picks in itertools.product(*choices):
        vals = [0] * len(order)
        for value, (_, members) in zip(picks, comps):
            for i, flipped in members:
                vals[i] = 2 - value if flipped else value
        out.append(tuple(vals))
    out.sort(key=lambda v: tuple(-x for x in v))
    return order, tuple(out)


@lru_cache(maxsize=1 << 16)
def _models(logic: CoreLogic, premises: frozenset[Formula]) -> tuple[tuple[int, ...], ...]:
    order, vals = _valuations(logic)
    des = logic.designated
    evs = [_evaluator(p, order, logic.tag) for p in sort_formulas(premises)]
    return tuple(v for v in vals if all(e(v) in des for e in evs))


def designates(logic: CoreLogic, valuation: Sequence[int], f: Formula) -> bool:
    order, _ = _valuations(logic)
    return _evaluator(f, order, logic.tag)(valuation) in logic.designated


@lru_cache(maxsize=1 << 18)
def _entails(logic: CoreLogic, premises: frozenset[Formula], goal: Formula) -> bool:
    order, _ = _valuations(logic)
    ev = _evaluator(goal, order, logic.tag)
    des = logic.designated
    return all(ev(v) in des for v in _models(logic, premises))


def entails(logic: CoreLogic, premises: Iterable[Formula], goal: Formula) -> bool:
    """True iff every valuation designating all ``premises`` designates ``goal``."""
    premises = frozenset(premises)
    logic.check(premises)
    logic.check((goal,))
    return _entails(logic, premises, goal)


def models_of(logic: CoreLogic, premises: Iterable[Formula]) -> list[dict[str, str]]:
    """All models of ``premises`` over the signature, as ``atom -> label`` maps.

    Atoms are keyed in name order; models are listed with higher values
    first (``1`` before ``0``; ``t`` before ``b`` before ``f``).
    """
    premises = frozenset(premises)
    logic.check(premises)
    order, _ = _valuations(logic)
    return [{a: logic.label(x) for a, x in zip(order, v)} for v in _models(logic, premises)]


def raw_models(logic: CoreLogic, premises: Iterable[Formula]) -> tuple[tuple[int, ...], ...]:
    """Models as integer tuples indexed by ``sorted(logic.signature)``."""
    premises = frozenset(premises)
    logic.check(premises)
    return _models(logic, premises)


def fresh_atom(taken: Iterable[str], stem: str = "fresh") -> str:
    taken = set(taken)
    for k in itertools.count():
        name = f"{stem}{k}"
        if name not in taken:
            return name
    raise AssertionError  # pragma: no cover


def is_consistent(logic: CoreLogic, premises: Iterable[Formula]) -> bool:
    """A premise set is consistent iff it does not entail every formula.

    Decided by adding a fresh atom ``x``: the set is trivial iff it entails
    both ``x`` and ``-x``.
    """
    premises = frozenset(premises)
    x = Var(fresh_atom(logic.signature | atoms_of(premises)))
    wide = logic.extend(atoms_of(premises) | {x.name})
    return not (entails(wide, premises, x) and entails(wide, premises, ClassNeg(x)))


def iter_subsets(items: Sequence, *, reverse: bool = False) -> Iterator[tuple]:
    """Subsets of ``items`` by increasing (or decreasing) size."""
    sizes = range(len(items), -1, -1) if reverse else range(len(items) + 1)
    for k in sizes:
        yield from itertools.combinations(items, k)
