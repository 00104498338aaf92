"""ASPIC+ without preferences.

Arguments are built bottom-up as trees over strict and defeasible rules.
Cyclic rule sets would give infinitely many trees, so construction refuses
to repeat a conclusion along any root-to-leaf path; such repetitions never
reach a new conclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .aba import Mode, Semantics
from .logic import ClassNeg, Formula, Var, atoms_of, fresh_atom, sort_formulas, to_text

PREMISE, STRICT, DEFEASIBLE = "premise", "strict", "defeasible"
UNDERMINE, REBUT, UNDERCUT = "undermine", "rebut", "undercut"


class ArgumentLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AspicRule:
    antecedents: tuple[Formula, ...]
    consequent: Formula
    defeasible: bool = False
    name: Formula | None = None

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(self.antecedents))

    def __str__(self):
        arrow = "=>" if self.defeasible else "->"
        body = ", ".join(to_text(a) for a in self.antecedents)
        text = f"{body} {arrow} {to_text(self.consequent)}" if body else f"{arrow} {to_text(self.consequent)}"
        return f"{to_text(self.name)}: {text}" if self.name is not None else text

    def sentences(self) -> frozenset[Formula]:
        return frozenset(self.antecedents) | {self.consequent}


@dataclass(frozen=True)
class DefeasibleTheory:
    """Strict and defeasible rules, each carrying a unique name sentence.

    Rules given without a name receive fresh atoms ``rn_<k>``.
    """

    strict_rules: tuple[AspicRule, ...]
    defeasible_rules: tuple[AspicRule, ...]

    def __post_init__(self):
        strict = [AspicRule(r.antecedents, r.consequent, False, r.name) for r in self.strict_rules]
        defeasible = [AspicRule(r.antecedents, r.consequent, True, r.name) for r in self.defeasible_rules]
        taken = set(atoms_of(s for r in strict + defeasible for s in r.sentences()))
        taken |= {r.name.name for r in strict + defeasible if isinstance(r.name, Var)}
        named = []
        for k, r in enumerate(strict + defeasible):
            if r.name is None:
                stem = fresh_atom(taken, "rn_")
                taken.add(stem)
                r = AspicRule(r.antecedents, r.consequent, r.defeasible, Var(stem))
            named.append(r)
        names = [r.name for r in named]
        if len(set(names)) != len(names):
            raise ValueError("rule names must be unique")
        object.__setattr__(self, "strict_rules", tuple(named[: len(strict)]))
        object.__setattr__(self, "defeasible_rules", tuple(named[len(strict):]))

    @property
    def rules(self) -> tuple[AspicRule, ...]:
        return self.strict_rules + self.defeasible_rules


def classical_contrary(f: Formula) -> Formula:
    """``-A`` for ``A``, and ``A`` for ``-A``."""
    return f.sub if isinstance(f, ClassNeg) else ClassNeg(f)


class Contrariness:
    """Contrariness function ``L -> 2^L``.

    Explicit entries are merged with the classical contrary when
    ``classical`` is set.
    """

    def __init__(self, table: Mapping[Formula, Iterable[Formula]] | None = None, classical: bool = False):
        self.table = {k: frozenset(v) for k, v in (table or {}).items()}
        self.classical = classical

    def __call__(self, f: Formula) -> frozenset[Formula]:
        out = self.table.get(f, frozenset())
        if self.classical:
            out = out | {classical_contrary(f)}
        return out

    def __repr__(self):
        return f"Contrariness(classical={self.classical}, entries={len(self.table)})"


@dataclass
class ArgumentationSystem:
    theory: DefeasibleTheory
    contrary: Contrariness = field(default_factory=Contrariness)


@dataclass(frozen=True)
class KnowledgeBase:
    axioms: frozenset[Formula]
    plausible: frozenset[Formula]

    def __post_init__(self):
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "plausible", frozenset(self.plausible))
        clash = self.axioms & self.plausible
        if clash:
            raise ValueError(f"axioms and plausible premises overlap: {sorted(map(to_text, clash))}")

    @property
    def all(self) -> frozenset[Formula]:
        return self.axioms | self.plausible


class Argument:
    """One node of an argument tree.  Compare arguments by ``key``."""

    __slots__ = ("conc", "rule", "children", "kind", "key", "sub", "prem",
                 "concs", "rules_used", "height", "ident")

    def __init__(self, conc: Formula, rule: AspicRule | None, children: tuple["Argument", ...]):
        self.conc = conc
        self.rule = rule
        self.children = children
        if rule is None:
            self.kind = PREMISE
        else:
            self.kind = DEFEASIBLE if rule.defeasible else STRICT
        self.key = (to_text(conc),) if rule is None else (str(rule), tuple(c.key for c in children))
        self.sub: frozenset[Argument] = frozenset({self}).union(*(c.sub for c in children))
        self.prem = frozenset({conc}) if rule is None else frozenset().union(*(c.prem for c in children))
        self.concs = frozenset({conc}).union(*(c.concs for c in children))
        own = frozenset({rule}) if rule is not None else frozenset()
        self.rules_used: frozenset[AspicRule] = own.union(*(c.rules_used for c in children))
        self.height = 1 + max((c.height for c in children), default=0)
        self.ident = ""

    def __eq__(self, other):
        return isinstance(other, Argument) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    @property
    def defeasible_rules(self) -> frozenset[AspicRule]:
        return frozenset(r for r in self.rules_used if r.defeasible)

    def describe(self) -> str:
        """Shallow rendering ``<a1, a2 => B>`` referring to children by id."""
        if self.rule is None:
            return f"<{to_text(self.conc)}>"
        arrow = "=>" if self.rule.defeasible else "|->"
        kids = ", ".join(c.ident for c in self.children)
        return f"<{kids} {arrow} {to_text(self.conc)}>" if kids else f"<{arrow} {to_text(self.conc)}>"

    def __repr__(self):
        return f"{self.ident or 'arg'}={self.describe()}"


def _sort_key(a: Argument):
    return (a.height, to_text(a.conc), a.kind, a.key)


def build_arguments(
    system: ArgumentationSystem, kb: KnowledgeBase, max_arguments: int = 20000
) -> list[Argument]:
    """All arguments over ``kb``, in canonical order and named ``a1, a2, ...``."""
    found: dict[tuple, Argument] = {}

    def add(arg: Argument, into: dict[Formula, list[Argument]]) -> None:
        if len(found) >= max_arguments:
            raise ArgumentLimitExceeded(f"more than {max_arguments} arguments")
        found[arg.key] = arg
        into.setdefault(arg.conc, []).append(arg)

    # semi-naive evaluation: each round combines at least one argument
    # first found in the previous round
    old: dict[Formula, list[Argument]] = {}
    delta: dict[Formula, list[Argument]] = {}
    for s in sort_formulas(kb.all):
        add(Argument(s, None, ()), delta)
    rules = sorted(system.theory.rules, key=str)
    for r in rules:
        if not r.antecedents and (str(r), ()) not in found:
            add(Argument(r.consequent, r, ()), delta)
    while delta:
        every = {c: old.get(c, []) + delta.get(c, []) for c in old.keys() | delta.keys()}
        fresh: dict[Formula, list[Argument]] = {}
        for r in rules:
            ants = r.antecedents
            name = str(r)
            for i in range(len(ants)):
                pools = (
                    [old.get(a, ()) for a in ants[:i]]
                    + [delta.get(ants[i], ())]
                    + [every.get(a, ()) for a in ants[i + 1:]]
                )
                for kids in itertools.product(*pools):
                    if (name, tuple(k.key for k in kids)) in found:
                        continue
                    if any(r.consequent in k.concs for k in kids):
                        continue
                    add(Argument(r.consequent, r, tuple(kids)), fresh)
        old, delta = every, fresh
    out = sorted(found.values(), key=_sort_key)
    for i, a in enumerate(out, 1):
        a.ident = f"a{i}"
    return out


@dataclass(frozen=True)
class StructuredAF:
    arguments: tuple[Argument, ...]
    attacks: frozenset[tuple[int, int, str]]

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, j, _ in self.attacks)


def compute_attacks(system: ArgumentationSystem, kb: KnowledgeBase, arguments: Sequence[Argument]) -> frozenset[tuple[int, int, str]]:
    """Attack triples ``(attacker index, target index, kind)``."""
    contrary = system.contrary
    targets = []
    for b in arguments:
        undermine = frozenset().union(*(contrary(p) for p in b.prem & kb.plausible))
        dsubs = [s for s in b.sub if s.kind == DEFEASIBLE]
        rebut = frozenset().union(*(contrary(s.conc) for s in dsubs))
        undercut = frozenset().union(*(contrary(s.rule.name) for s in dsubs))
        targets.append(((UNDERMINE, undermine), (REBUT, rebut), (UNDERCUT, undercut)))
    out = set()
    for i, a in enumerate(arguments):
        for j, kinds in enumerate(targets):
            for kind, vulnerable in kinds:
                if a.conc in vulnerable:
                    out.add((i, j, kind))
    return frozenset(out)


def structured_af(system: ArgumentationSystem, kb: KnowledgeBase, max_arguments: int = 20000) -> StructuredAF:
    args = build_arguments(system, kb, max_arguments)
    return StructuredAF(tuple(args), compute_attacks(system, kb, args))


# ---------------------------------------------------------------------------
# Dung semantics over bitmasks
# ---------------------------------------------------------------------------


def _popcount(m: int) -> int:
    return bin(m).count("1")


class _Dung:
    def __init__(self, n: int, pairs: Iterable[tuple[int, int]]):
        self.n = n
        self.full = (1 << n) - 1
        self.out = [0] * n  # whom i attacks
        self.inc = [0] * n  # who attacks i
        for i, j in pairs:
            self.out[i] |= 1 << j
            self.inc[j] |= 1 << i
        self.selfish = {i for i in range(n) if self.out[i] >> i & 1}

    def attacked_by(self, s: int) -> int:
        m = 0
        for i in range(self.n):
            if s >> i & 1:
                m |= self.out[i]
        return m

    def conflict_free(self, s: int) -> bool:
        return not (self.attacked_by(s) & s)

    def admissible(self, s: int) -> bool:
        if not self.conflict_free(s):
            return False
        hit = self.attacked_by(s)
        return all(self.inc[i] & ~hit == 0 for i in range(self.n) if s >> i & 1)

    def grounded(self) -> int:
        s = 0
        while True:
            hit = self.attacked_by(s)
            nxt = 0
            for i in range(self.n):
                if self.inc[i] & ~hit == 0:
                    nxt |= 1 << i
            if nxt == s:
                return s
            s = nxt

    def conflict_free_sets(self, forced: int = 0, banned: int = 0):
        """Yield every conflict-free superset of ``forced`` avoiding ``banned``."""
        free = [i for i in range(self.n)
                if not (forced >> i & 1) and not (banned >> i & 1) and i not in self.selfish]

        def rec(k: int, s: int, blocked: int):
            if k == len(free):
                yield s
                return
            i = free[k]
            bit = 1 << i
            if not blocked & bit:
                yield from rec(k + 1, s | bit, blocked | self.out[i] | self.inc[i])
            yield from rec(k + 1, s, blocked)

        if not self.conflict_free(forced):
            return
        blocked = 0
        for i in range(self.n):
            if forced >> i & 1:
                blocked |= self.out[i] | self.inc[i]
        yield from rec(0, forced, blocked)

    def naive(self) -> list[int]:
        out = []
        for s in self.conflict_free_sets():
            if all(
                i in self.selfish or s >> i & 1 or (self.out[i] | self.inc[i]) & s
                for i in range(self.n)
            ):
                out.append(s)
        return out

    def _core(self) -> tuple[int, int]:
        g = self.grounded()
        return g, self.attacked_by(g)

    def preferred(self) -> list[int]:
        g, banned = self._core()
        adm = [s for s in self.conflict_free_sets(g, banned) if self.admissible(s)]
        adm.sort(key=_popcount, reverse=True)
        keep: list[int] = []
        for s in adm:
            if not any(s & t == s for t in keep):
                keep.append(s)
        return keep

    def stable(self) -> list[int]:
        g, banned = self._core()
        return [s for s in self.conflict_free_sets(g, banned) if s | self.attacked_by(s) == self.full]


def dung_extensions(n: int, pairs: Iterable[tuple[int, int]], semantics: Semantics | str) -> list[frozenset[int]]:
    """Extensions (as sets of argument indices) of an abstract framework."""
    d = _Dung(n, pairs)
    sem = Semantics(semantics)
    masks = {Semantics.NAIVE: d.naive, Semantics.PREFERRED: d.preferred, Semantics.STABLE: d.stable}[sem]()
    sets = [frozenset(i for i in range(n) if m >> i & 1) for m in masks]
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def argument_extensions(af: StructuredAF, semantics: Semantics | str) -> list[frozenset[Argument]]:
    idx = dung_extensions(len(af.arguments), af.pairs, semantics)
    return [frozenset(af.arguments[i] for i in s) for s in idx]


def aspic_consequence(af: StructuredAF, semantics: Semantics | str, mode: Mode | str, goal: Formula) -> bool:
    mode = Mode(mode)
    exts = dung_extensions(len(af.arguments), af.pairs, semantics)
    concluding = {i for i, a in enumerate(af.arguments) if a.conc == goal}
    if mode is Mode.CREDULOUS:
        return any(concluding & e for e in exts)
    if mode is Mode.SKEPTICAL:
        return all(concluding & e for e in exts)
    common = set(range(len(af.arguments)))
    for e in exts:
        common &= e
    return bool(concluding & common)


def argument_ids(args: Iterable[Argument]) -> list[str]:
    return sorted((a.ident for a in args), key=lambda s: int(s[1:]))
