"""Assumption-based argumentation over rule-based deductive systems.

Extensions are found by scanning the whole lattice of assumption sets, so
frameworks are expected to have a handful of assumptions, not hundreds.
Subsets are handled internally as bitmasks over the canonically sorted
assumption list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .logic import CoreLogic, Formula, atoms_of, entails, sort_formulas, to_text


class Semantics(str, enum.Enum):
    NAIVE = "niv"
    PREFERRED = "prf"
    STABLE = "stb"


class Mode(str, enum.Enum):
    CREDULOUS = "cup"  # some extension
    SKEPTICAL = "cap"  # every extension
    INTERSECTION = "dcap"  # the intersection of all extensions


@dataclass(frozen=True)
class Rule:
    antecedents: tuple[Formula, ...]
    consequent: Formula

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(self.antecedents))

    def __str__(self):
        body = ", ".join(to_text(a) for a in self.antecedents)
        return f"{body} -> {to_text(self.consequent)}" if body else f"-> {to_text(self.consequent)}"

    def sentences(self) -> frozenset[Formula]:
        return frozenset(self.antecedents) | {self.consequent}


class IntensionalRules(Exception):
    """Raised when a closure is requested from an oracle-backed rule set."""


class RuleSet:
    """A finite, explicitly listed rule set.  Derivability is forward chaining."""

    extensional = True

    def __init__(self, rules: Iterable[Rule] = ()):
        self.rules = frozenset(rules)
        self._by_body: dict[Formula, list[Rule]] = {}
        self._axioms = []
        for r in sorted(self.rules, key=str):
            if not r.antecedents:
                self._axioms.append(r)
            for a in set(r.antecedents):
                self._by_body.setdefault(a, []).append(r)

    def __iter__(self):
        return iter(sorted(self.rules, key=str))

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        return isinstance(other, RuleSet) and type(other) is type(self) and other.rules == self.rules

    def __hash__(self):
        return hash(self.rules)

    def closure(self, base: Iterable[Formula]) -> frozenset[Formula]:
        known = set(base)
        agenda = list(known)
        waiting = {r: len(set(r.antecedents)) for r in self.rules}
        for r in self._axioms:
            if r.consequent not in known:
                known.add(r.consequent)
                agenda.append(r.consequent)
        while agenda:
            s = agenda.pop()
            for r in self._by_body.get(s, ()):
                waiting[r] -= 1
                if waiting[r] == 0 and r.consequent not in known:
                    known.add(r.consequent)
                    agenda.append(r.consequent)
        return frozenset(known)

    def derives(self, base: Iterable[Formula], goal: Formula) -> bool:
        return goal in self.closure(base)

    def sentences(self) -> frozenset[Formula]:
        out: set[Formula] = set()
        for r in self.rules:
            out |= r.sentences()
        return frozenset(out)


class OracleRules(RuleSet):
    """All rules ``A1,...,An -> A`` with ``{A1..An}`` entailing ``A`` in a core logic.

    The rule universe is infinite, so only goal-directed queries are
    supported; they are answered by the logic's entailment relation.
    """

    extensional = False

    def __init__(self, logic: CoreLogic):
        super().__init__(())
        self.logic = logic

    def __eq__(self, other):
        return isinstance(other, OracleRules) and other.logic == self.logic

    def __hash__(self):
        return hash(("oracle", self.logic))

    def closure(self, base):
        raise IntensionalRules("closure of an oracle-backed rule set is infinite; query derives() per goal")

    def derives(self, base, goal):
        base = frozenset(base)
        logic = self.logic.extend(atoms_of(base) | atoms_of(goal))
        return entails(logic, base, goal)


def derives(rules: RuleSet, base: Iterable[Formula], goal: Formula) -> bool:
    return rules.derives(base, goal)


def closure(rules: RuleSet, base: Iterable[Formula]) -> frozenset[Formula]:
    return rules.closure(base)


class ABF:
    """An assumption-based framework ``(R, gamma, Ab, contrary)``."""

    def __init__(
        self,
        rules: RuleSet | Iterable[Rule],
        gamma: Iterable[Formula],
        ab: Iterable[Formula],
        contrary: Mapping[Formula, Formula],
    ):
        self.rules = rules if isinstance(rules, RuleSet) else RuleSet(rules)
        self.gamma = frozenset(gamma)
        self.ab = frozenset(ab)
        if not self.ab:
            raise ValueError("the assumption set must be non-empty")
        missing = [to_text(a) for a in self.ab if a not in contrary]
        if missing:
            raise ValueError(f"no contrary given for assumptions {sorted(missing)}")
        self.contrary = {a: contrary[a] for a in self.ab}
        self.order: tuple[Formula, ...] = tuple(sort_formulas(self.ab))
        self._bit = {a: 1 << i for i, a in enumerate(self.order)}
        self._derived: dict[int, tuple[int, int]] = {}
        self._table: dict[str, list[int]] | None = None

    def __repr__(self):
        return f"ABF(|R|={'oracle' if not self.rules.extensional else len(self.rules)}, gamma={len(self.gamma)}, ab={len(self.ab)})"

    # --- bitmask helpers ---------------------------------------------------

    def mask(self, assumptions: Iterable[Formula]) -> int:
        m = 0
        for a in assumptions:
            if a not in self._bit:
                raise ValueError(f"{to_text(a)} is not an assumption")
            m |= self._bit[a]
        return m

    def members(self, mask: int) -> frozenset[Formula]:
        return frozenset(a for i, a in enumerate(self.order) if mask >> i & 1)

    def _info(self, mask: int) -> tuple[int, int]:
        """(assumptions derived, assumptions whose contrary is derived) from gamma + mask."""
        hit = self._derived.get(mask)
        if hit is not None:
            return hit
        base = self.gamma | self.members(mask)
        if self.rules.extensional:
            cl = self.rules.closure(base)
            der = self.mask(a for a in self.order if a in cl)
            att = self.mask(a for a in self.order if self.contrary[a] in cl)
        else:
            der = self.mask(a for a in self.order if self.rules.derives(base, a))
            att = self.mask(a for a in self.order if self.rules.derives(base, self.contrary[a]))
        self._derived[mask] = (der, att)
        return der, att

    def derives(self, assumptions: Iterable[Formula], goal: Formula) -> bool:
        return self.rules.derives(self.gamma | frozenset(assumptions), goal)

    # --- Def.-level predicates ---------------------------------------------

    def is_closed(self, mask: int) -> bool:
        return self._info(mask)[0] == mask

    def is_conflict_free(self, mask: int) -> bool:
        der, att = self._info(mask)
        return not (der & att)

    def attacks(self, attacker: int, target: int) -> bool:
        return bool(self._info(attacker)[1] & target)

    def _tables(self) -> dict[str, list[int]]:
        if self._table is not None:
            return self._table
        full = (1 << len(self.order)) - 1
        subsets = range(full + 1)
        closed = [m for m in subsets if self.is_closed(m)]
        cf = [m for m in closed if self.is_conflict_free(m)]
        naive = _maximal(cf)
        admissible = [
            m for m in cf
            if all(self.attacks(m, x) for x in closed if self.attacks(x, m))
        ]
        preferred = _maximal(admissible)
        stable = [m for m in cf if self._info(m)[1] | m == full]
        self._table = {
            "closed": closed,
            "cf": cf,
            "adm": admissible,
            Semantics.NAIVE.value: naive,
            Semantics.PREFERRED.value: preferred,
            Semantics.STABLE.value: stable,
        }
        return self._table

    def extension_masks(self, semantics: Semantics | str) -> list[int]:
        return list(self._tables()[Semantics(semantics).value])

    def admissible_masks(self) -> list[int]:
        return list(self._tables()["adm"])


def _maximal(masks: Sequence[int]) -> list[int]:
    return [m for m in masks if not any(m != n and m & n == m for n in masks)]


def _key(s: Iterable[Formula]) -> tuple:
    names = sorted(to_text(f) for f in s)
    return (len(names), names)


def sort_sets(family: Iterable[Iterable[Formula]]) -> list[frozenset[Formula]]:
    return sorted((frozenset(s) for s in family), key=_key)


def set_attacks(abf: ABF, attacker: Iterable[Formula], target: Formula | Iterable[Formula]) -> bool:
    """Whether ``attacker`` derives (with gamma) the contrary of some targeted assumption."""
    if isinstance(target, Formula):
        target = (target,)
    return abf.attacks(abf.mask(attacker), abf.mask(target))


def extensions(abf: ABF, semantics: Semantics | str) -> list[frozenset[Formula]]:
    return sort_sets(abf.members(m) for m in abf.extension_masks(semantics))


def aba_consequence(abf: ABF, semantics: Semantics | str, mode: Mode | str, goal: Formula) -> bool:
    """``cup``: some extension derives goal; ``cap``: all do; ``dcap``: their
    intersection does.  With no extensions ``cap`` holds vacuously and
    ``dcap`` uses the empty intersection, i.e. every assumption."""
    mode = Mode(mode)
    masks = abf.extension_masks(semantics)
    if mode is Mode.CREDULOUS:
        return any(abf.derives(abf.members(m), goal) for m in masks)
    if mode is Mode.SKEPTICAL:
        return all(abf.derives(abf.members(m), goal) for m in masks)
    common = (1 << len(abf.order)) - 1
    for m in masks:
        common &= m
    return abf.derives(abf.members(common), goal)


def satisfies_ex(abf: ABF) -> bool:
    """Every naive set derives the contrary of each assumption it leaves out."""
    full = (1 << len(abf.order)) - 1
    return all(abf._info(m)[1] | m == full for m in abf.extension_masks(Semantics.NAIVE))


def is_normal(abf: ABF) -> bool:
    stable = set(abf.extension_masks(Semantics.STABLE))
    return all(m in stable for m in abf.extension_masks(Semantics.NAIVE))


def status(abf: ABF, assumptions: Iterable[Formula]) -> dict[str, bool]:
    """Flags of one assumption set under every notion the framework defines."""
    m = abf.mask(assumptions)
    t = abf._tables()
    return {
        "closed": m in t["closed"],
        "conflict_free": abf.is_conflict_free(m),
        "naive": m in t["niv"],
        "admissible": m in t["adm"],
        "preferred": m in t["prf"],
        "stable": m in t["stb"],
    }
