"""Translations between adaptive logics, ABA and ASPIC+.

    al_to_aba      adaptive theory      -> ABF with oracle-backed rules
    aspic_to_aba   ASPIC+ system + KB   -> ABF simulating defeasible rules
    aba_to_al      token ABF            -> adaptive theory over L3R
    al_to_aspic    adaptive theory      -> ASPIC+ (via ABA, materialised rules)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .aba import ABF, OracleRules, Rule, RuleSet
from .adaptive import AdaptiveTheory
from .aspic import ArgumentationSystem, AspicRule, Contrariness, DefeasibleTheory, KnowledgeBase
from .logic import (
    ClassNeg,
    CoreLogic,
    Formula,
    Or,
    Var,
    WeakNeg,
    atoms_of,
    entails,
    fresh_atom,
    sort_formulas,
    to_text,
)

# AdaptiveTheory over L3R with premises gamma + translated rules
L3Theory = AdaptiveTheory


class TranslationError(ValueError):
    """The source object lies outside the fragment a translation handles."""


@dataclass
class TranslationReport:
    direction: str
    names: dict[str, dict[str, str]] = field(default_factory=dict)
    abnormalities: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "direction": self.direction,
            "names": {k: dict(sorted(v.items())) for k, v in sorted(self.names.items())},
            "abnormalities": dict(sorted(self.abnormalities.items())),
            "notes": list(self.notes),
        }

    def lines(self) -> list[str]:
        out = [f"direction: {self.direction}"]
        for rule, names in sorted(self.names.items()):
            out.append(f"name: {rule} => " + ", ".join(f"{k}={v}" for k, v in sorted(names.items())))
        for src, dst in sorted(self.abnormalities.items()):
            out.append(f"abnormality: {src} => {dst}")
        out.extend(f"note: {n}" for n in self.notes)
        return out


# ---------------------------------------------------------------------------
# AL -> ABA
# ---------------------------------------------------------------------------


def al_to_aba(theory: AdaptiveTheory) -> tuple[ABF, TranslationReport]:
    """Assumptions are the negated abnormalities; each one's contrary is the
    abnormality itself; rules are every inference valid in the core logic."""
    if not theory.omega:
        raise TranslationError("the abnormality set is empty, so the framework would have no assumptions")
    contrary = {ClassNeg(a): a for a in theory.omega}
    abf = ABF(OracleRules(theory.logic), theory.gamma, contrary, contrary)
    report = TranslationReport("al2aba")
    report.abnormalities = {to_text(a): to_text(ClassNeg(a)) for a in theory.omega}
    report.notes.append(f"rules: every inference valid in {theory.logic.tag}")
    return abf, report


# ---------------------------------------------------------------------------
# ASPIC+ -> ABA
# ---------------------------------------------------------------------------


def aspic_to_aba(system: ArgumentationSystem, kb: KnowledgeBase) -> tuple[ABF, TranslationReport]:
    """Defeasible rules become strict rules guarded by a fresh name assumption.

    For a defeasible rule ``r: A1..An => B`` with fresh name ``n`` and fresh
    contrary token ``nc``::

        n, A1, ..., An -> B
        C -> nc          for each contrary C of B          (rebuttal)
        C -> nc          for each contrary C of r's name   (undercut)

    Only contraries that some argument can conclude get a rule.  A plausible
    premise with several concludable contraries gets a fresh contrary token
    fed by one rule per contrary.
    """
    theory = system.theory
    contrary = system.contrary
    source_sentences = set(kb.all)
    for r in theory.rules:
        source_sentences |= r.sentences() | {r.name}
    taken = set(atoms_of(source_sentences))
    concludable = set(kb.all) | {r.consequent for r in theory.rules}

    def fresh(stem: str) -> Var:
        name = stem if stem not in taken else fresh_atom(taken, stem + "_")
        taken.add(name)
        return Var(name)

    report = TranslationReport("aspic2aba")
    rules: list[Rule] = [Rule(r.antecedents, r.consequent) for r in theory.strict_rules]
    ab: list[Formula] = list(kb.plausible)
    ab_contrary: dict[Formula, Formula] = {}

    for k, r in enumerate(theory.defeasible_rules):
        n, nc = fresh(f"n__{k}"), fresh(f"nc__{k}")
        ab.append(n)
        ab_contrary[n] = nc
        rules.append(Rule((n,) + r.antecedents, r.consequent))
        for c in sort_formulas((contrary(r.consequent) | contrary(r.name)) & concludable):
            rules.append(Rule((c,), nc))
        report.names[to_text(r.name)] = {"name": to_text(n), "contrary": to_text(nc)}

    for k, a in enumerate(sort_formulas(kb.plausible)):
        options = contrary(a)
        live = sort_formulas(options & concludable)
        if len(options) == 1:
            ab_contrary[a] = next(iter(options))
        elif len(live) == 1:
            ab_contrary[a] = live[0]
        else:
            token = fresh(f"ct__{k}")
            ab_contrary[a] = token
            rules.extend(Rule((c,), token) for c in live)
            report.notes.append(f"contrary of {to_text(a)} encoded by {to_text(token)}")

    abf = ABF(RuleSet(rules), kb.axioms, ab, ab_contrary)
    return abf, report


# ---------------------------------------------------------------------------
# ABA -> AL over L3R
# ---------------------------------------------------------------------------


def rule_formula(rule: Rule) -> Formula:
    """``~A1 | ... | ~An | B`` for the rule ``A1, ..., An -> B``."""
    out: Formula | None = None
    for a in rule.antecedents:
        out = WeakNeg(a) if out is None else Or(out, WeakNeg(a))
    return rule.consequent if out is None else Or(out, rule.consequent)


def contrary_pairs(abf: ABF) -> frozenset[tuple[str, str]]:
    """The contrary mapping as an atom pairing; raises outside the fragment.

    Every sentence must be an atom and every atom may sit in at most one
    pair (a mutual pair ``a <-> b`` counts once).
    """
    if not abf.rules.extensional:
        raise TranslationError("aba2al needs an explicitly listed rule set")
    sentences = set(abf.gamma) | set(abf.ab) | set(abf.contrary.values()) | set(abf.rules.sentences())
    compound = sorted(to_text(s) for s in sentences if not isinstance(s, Var))
    if compound:
        raise TranslationError(
            "aba2al handles frameworks over atomic sentences only; compound: " + ", ".join(compound)
        )
    edges = {frozenset((a.name, c.name)) for a, c in abf.contrary.items()}
    partner: dict[str, frozenset[str]] = {}
    for e in edges:
        for x in e:
            if x in partner and partner[x] != e:
                others = sorted(set(partner[x] | e) - {x})
                raise TranslationError(
                    f"contraries do not form a pairing: {x} is paired with {', '.join(others)}"
                )
            partner[x] = e
    pairs = set()
    for a, c in abf.contrary.items():
        if (c.name, a.name) not in pairs:
            pairs.add((a.name, c.name))
    return frozenset(pairs)


def aba_to_al(abf: ABF) -> tuple[L3Theory, TranslationReport]:
    pairs = contrary_pairs(abf)
    premises = set(abf.gamma) | {rule_formula(r) for r in abf.rules}
    omega = frozenset(WeakNeg(a) for a in abf.ab)
    atoms = atoms_of(premises) | atoms_of(omega) | atoms_of(abf.contrary.values())
    logic = CoreLogic.l3r(atoms, pairs)
    report = TranslationReport("aba2al")
    report.abnormalities = {to_text(a): to_text(WeakNeg(a)) for a in abf.ab}
    report.notes.append(f"{len(abf.rules)} rules translated to disjunctions")
    return AdaptiveTheory(logic, frozenset(premises), omega), report


def r_consistent(abf: ABF, base: Iterable[Formula]) -> bool:
    """No assumption is derivable together with its contrary from ``base``."""
    base = frozenset(base)
    return not any(
        abf.rules.derives(base, a) and abf.rules.derives(base, c) for a, c in abf.contrary.items()
    )


# ---------------------------------------------------------------------------
# AL -> ASPIC+ (composition through ABA)
# ---------------------------------------------------------------------------


def subformulas(fs: Iterable[Formula]) -> frozenset[Formula]:
    out: set[Formula] = set()
    stack = list(fs)
    while stack:
        f = stack.pop()
        if f in out:
            continue
        out.add(f)
        if isinstance(f, (WeakNeg, ClassNeg)):
            stack.append(f.sub)
        elif not isinstance(f, Var):
            stack.extend((f.left, f.right))
    return frozenset(out)


def materialise_rules(
    logic: CoreLogic, candidates: Iterable[Formula], max_antecedents: int = 3
) -> list[Rule]:
    """Finite slice of the core logic's rule universe over ``candidates``.

    Keeps ``S -> A`` only when ``S`` entails ``A``, ``A`` is not in ``S`` and
    no proper subset of ``S`` already entails ``A``.
    """
    cands = sort_formulas(set(candidates))
    logic = logic.extend(atoms_of(cands))
    rules = []
    for goal in cands:
        found: list[frozenset[Formula]] = []
        pool = [c for c in cands if c != goal]
        for k in range(max_antecedents + 1):
            for body in itertools.combinations(pool, k):
                s = frozenset(body)
                if any(f <= s for f in found):
                    continue
                if entails(logic, s, goal):
                    found.append(s)
                    rules.append(Rule(tuple(body), goal))
    return rules


def aba_to_aspic(abf: ABF) -> tuple[ArgumentationSystem, KnowledgeBase]:
    """ABA rules become strict rules, assumptions plausible premises and the
    theory the axioms; an assumption's only contrary is its ABA contrary."""
    if not abf.rules.extensional:
        raise TranslationError("aba_to_aspic needs an explicitly listed rule set")
    strict = tuple(AspicRule(r.antecedents, r.consequent) for r in abf.rules)
    system = ArgumentationSystem(
        DefeasibleTheory(strict, ()),
        Contrariness({a: {c} for a, c in abf.contrary.items()}),
    )
    kb = KnowledgeBase(abf.gamma, abf.ab - abf.gamma)
    return system, kb


def al_to_aspic(
    theory: AdaptiveTheory, query: Formula | None = None, max_antecedents: int = 3
) -> tuple[ArgumentationSystem, KnowledgeBase, TranslationReport]:
    abf, report = al_to_aba(theory)
    seeds = set(theory.gamma) | set(theory.omega) | set(abf.ab)
    if query is not None:
        seeds.add(query)
    rules = materialise_rules(theory.logic, subformulas(seeds), max_antecedents)
    finite = ABF(RuleSet(rules), abf.gamma, abf.ab, abf.contrary)
    system, kb = aba_to_aspic(finite)
    report.direction = "al2aspic"
    report.notes = [
        f"rules: {len(rules)} minimal inferences of {theory.logic.tag} over the subformulas "
        f"of premises, abnormalities{' and query' if query is not None else ''} "
        f"(at most {max_antecedents} antecedents)"
    ]
    return system, kb, report
