"""Line-oriented problem files.

Each non-blank line is ``key: value``; ``#`` starts a comment.  List values
are separated by ``;``.  Example::

    kind: al
    logic: lp
    premises: ~p; ~q; p | q; p | r; q | s
    abnormalities: contradictions(p, q, r, s)
    strategy: ma
    query: r | s
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .aba import ABF, Mode, OracleRules, Rule, RuleSet, Semantics
from .adaptive import AdaptiveTheory, DefaultTheory, Strategy, contradictions
from .aspic import ArgumentationSystem, AspicRule, Contrariness, DefeasibleTheory, KnowledgeBase
from .logic import CoreLogic, Formula, ParseError, atoms_of, parse_formula, sort_formulas, to_text

KINDS = ("al", "da", "aba", "aspic")
KEYS = {
    "kind", "logic", "atoms", "premises", "abnormalities", "assumptions", "contraries",
    "rules", "strict_rules", "defeasible_rules", "axioms", "plausible", "query",
    "strategy", "semantics", "mode",
}
REQUIRED = {
    "al": ("logic", "abnormalities"),
    "da": ("assumptions",),
    "aba": ("assumptions", "contraries", "rules"),
    "aspic": (),
}


class ProblemError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class ProblemFile:
    kind: str
    entries: dict[str, str] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)

    # --- raw access ---------------------------------------------------------

    def get(self, key: str, default: str | None = None) -> str | None:
        return self.entries.get(key, default)

    def _formula(self, text: str, key: str) -> Formula:
        try:
            return parse_formula(text.strip())
        except ParseError as e:
            raise ProblemError(f"{key}: {e}", self.lines.get(key)) from None

    def formulas(self, key: str) -> list[Formula]:
        return [self._formula(t, key) for t in split_list(self.entries.get(key, ""))]

    @property
    def query(self) -> Formula | None:
        text = self.entries.get("query")
        return self._formula(text, "query") if text else None

    @property
    def strategy(self) -> Strategy:
        return Strategy.parse(self.entries.get("strategy", "ma"))

    @property
    def semantics(self) -> Semantics:
        return Semantics(self.entries.get("semantics", "prf"))

    @property
    def mode(self) -> Mode:
        return Mode(self.entries.get("mode", "cap"))

    def declared_atoms(self) -> frozenset[str]:
        return frozenset(self.entries.get("atoms", "").replace(",", " ").split())

    # --- object builders ------------------------------------------------------

    def logic(self) -> CoreLogic:
        tag = self.entries.get("logic", "cpl").strip()
        atoms = set(self.declared_atoms())
        for key in ("premises", "abnormalities", "assumptions", "query"):
            if key == "abnormalities" and _contradictions_arg(self.entries.get(key, "")) is not None:
                continue
            atoms |= atoms_of(self.formulas(key)) if key != "query" else atoms_of(self.query or [])
        if tag == "l3r":
            pairs = [(a.name, c.name) for a, c in self.pairs()]
            atoms |= {x for p in pairs for x in p}
            return CoreLogic.l3r(atoms, pairs)
        try:
            return CoreLogic(tag, frozenset(atoms))
        except ValueError as e:
            raise ProblemError(str(e), self.lines.get("logic")) from None

    def pairs(self) -> list[tuple[Formula, Formula]]:
        out = []
        for item in split_list(self.entries.get("contraries", "")):
            if item.strip() == "classical":
                continue
            if "->" not in item:
                raise ProblemError(f"contrary entry {item!r} needs '->'", self.lines.get("contraries"))
            lhs, rhs = item.split("->", 1)
            out.append((self._formula(lhs, "contraries"), self._formula(rhs, "contraries")))
        return out

    def classical_contraries(self) -> bool:
        return any(i.strip() == "classical" for i in split_list(self.entries.get("contraries", "")))

    def adaptive_theory(self) -> AdaptiveTheory:
        logic = self.logic()
        gamma = self.formulas("premises")
        text = self.entries.get("abnormalities", "")
        names = _contradictions_arg(text)
        if names is not None:
            atoms = names or sorted(logic.signature | atoms_of(gamma))
            omega = contradictions(atoms)
        else:
            omega = self.formulas("abnormalities")
        return AdaptiveTheory(logic, frozenset(gamma), frozenset(omega))

    def default_theory(self) -> DefaultTheory:
        return DefaultTheory(self.logic(), frozenset(self.formulas("premises")), frozenset(self.formulas("assumptions")))

    def abf(self) -> ABF:
        ab = self.formulas("assumptions")
        rules_text = self.entries.get("rules", "").strip()
        if rules_text == "classical":
            rules: RuleSet = OracleRules(self.logic())
        else:
            rules = RuleSet(self.rules("rules", defeasible=False))
        contrary = dict(self.pairs())
        if self.classical_contraries():
            from .aspic import classical_contrary

            for a in ab:
                contrary.setdefault(a, classical_contrary(a))
        try:
            return ABF(rules, self.formulas("premises"), ab, contrary)
        except ValueError as e:
            raise ProblemError(str(e)) from None

    def rules(self, key: str, defeasible: bool) -> list:
        out = []
        arrow = "=>" if defeasible else "->"
        for item in split_list(self.entries.get(key, "")):
            name = None
            head, sep, rest = item.partition(":")
            if sep:
                name, item = self._formula(head, key), rest
            if arrow not in item:
                raise ProblemError(f"rule {item.strip()!r} needs '{arrow}'", self.lines.get(key))
            body, consequent = item.rsplit(arrow, 1)
            body_f = tuple(self._formula(b, key) for b in body.split(",") if b.strip())
            cons = self._formula(consequent, key)
            if key == "rules":
                if name is not None:
                    raise ProblemError("ABA rules carry no names", self.lines.get(key))
                out.append(Rule(body_f, cons))
            else:
                out.append(AspicRule(body_f, cons, defeasible, name))
        return out

    def aspic(self) -> tuple[ArgumentationSystem, KnowledgeBase]:
        theory = DefeasibleTheory(
            tuple(self.rules("strict_rules", False)), tuple(self.rules("defeasible_rules", True))
        )
        table: dict[Formula, set[Formula]] = {}
        for a, c in self.pairs():
            table.setdefault(a, set()).add(c)
        system = ArgumentationSystem(theory, Contrariness(table, self.classical_contraries()))
        try:
            kb = KnowledgeBase(frozenset(self.formulas("axioms")), frozenset(self.formulas("plausible")))
        except ValueError as e:
            raise ProblemError(str(e)) from None
        return system, kb


_CONTRA_RE = re.compile(r"\s*contradictions\s*\((.*)\)\s*")


def _contradictions_arg(text: str) -> list[str] | None:
    m = _CONTRA_RE.fullmatch(text)
    if not m:
        return None
    return [a for a in m.group(1).replace(",", " ").split()]


def split_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(";") if t.strip()]


def parse_problem(text: str) -> ProblemFile:
    entries: dict[str, str] = {}
    lines: dict[str, int] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in KEYS:
            raise ProblemError(f"expected 'key: value' with a known key, got {raw.strip()!r}", no)
        value = value.strip()
        if key in entries and value:
            entries[key] = f"{entries[key]}; {value}" if entries[key] else value
        else:
            entries.setdefault(key, value)
        lines.setdefault(key, no)
    kind = entries.get("kind")
    if kind not in KINDS:
        raise ProblemError(f"kind must be one of {', '.join(KINDS)}", lines.get("kind"))
    for key in REQUIRED[kind]:
        if key not in entries:
            raise ProblemError(f"{kind} problems need a '{key}:' line")
    return ProblemFile(kind, entries, lines)


def read_problem(path: str) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _join(fs: Iterable[Formula]) -> str:
    return "; ".join(to_text(f) for f in sort_formulas(fs))


def _tail(query: Formula | None, extra: Mapping[str, str]) -> list[str]:
    out = [f"{k}: {v}" for k, v in extra.items() if v is not None]
    if query is not None:
        out.append(f"query: {to_text(query)}")
    return out


def format_al(theory: AdaptiveTheory, query: Formula | None = None, **extra: str) -> str:
    lines = ["kind: al", f"logic: {theory.logic.tag}", f"atoms: {' '.join(sorted(theory.logic.signature))}"]
    lines.append(f"premises: {_join(theory.gamma)}")
    lines.append(f"abnormalities: {_join(theory.omega)}")
    if theory.logic.pairs:
        lines.append("contraries: " + "; ".join(f"{a} -> {b}" for a, b in sorted(theory.logic.pairs)))
    return "\n".join(lines + _tail(query, extra)) + "\n"


def format_da(theory: DefaultTheory, query: Formula | None = None, **extra: str) -> str:
    lines = ["kind: da", f"logic: {theory.logic.tag}", f"atoms: {' '.join(sorted(theory.logic.signature))}"]
    lines.append(f"premises: {_join(theory.gamma)}")
    lines.append(f"assumptions: {_join(theory.delta)}")
    return "\n".join(lines + _tail(query, extra)) + "\n"


def format_aba(abf: ABF, query: Formula | None = None, **extra: str) -> str:
    lines = ["kind: aba"]
    if isinstance(abf.rules, OracleRules):
        logic = abf.rules.logic
        lines += [f"logic: {logic.tag}", f"atoms: {' '.join(sorted(logic.signature))}", "rules: classical"]
    else:
        lines.append("rules: " + "; ".join(str(r) for r in abf.rules))
    lines.append(f"premises: {_join(abf.gamma)}")
    lines.append(f"assumptions: {_join(abf.ab)}")
    lines.append(
        "contraries: " + "; ".join(f"{to_text(a)} -> {to_text(abf.contrary[a])}" for a in abf.order)
    )
    return "\n".join(lines + _tail(query, extra)) + "\n"


def format_aspic(system: ArgumentationSystem, kb: KnowledgeBase, query: Formula | None = None, **extra: str) -> str:
    theory = system.theory
    lines = [
        "kind: aspic",
        "strict_rules: " + "; ".join(str(r) for r in theory.strict_rules),
        "defeasible_rules: " + "; ".join(str(r) for r in theory.defeasible_rules),
        f"axioms: {_join(kb.axioms)}",
        f"plausible: {_join(kb.plausible)}",
    ]
    entries = [f"{to_text(a)} -> {to_text(c)}" for a in sort_formulas(system.contrary.table)
               for c in sort_formulas(system.contrary.table[a])]
    if system.contrary.classical:
        entries.insert(0, "classical")
    lines.append("contraries: " + "; ".join(entries))
    return "\n".join(lines + _tail(query, extra)) + "\n"
