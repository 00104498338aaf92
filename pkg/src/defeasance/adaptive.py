"""Adaptive-logic consequence, its preferential-model semantics, and
default-assumption consequence over maximal consistent subsets.

Consequence is computed through the representation in terms of minimal
Dab-sets (``sigma_of``) and their minimal choice sets (``phi_of``); the
model-theoretic route in ``al_consequence_semantic`` is kept independent of
both and serves as an oracle for it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .logic import (
    And,
    ClassNeg,
    CoreLogic,
    Formula,
    Or,
    Var,
    WeakNeg,
    atoms_of,
    designates,
    disjoin,
    entails,
    is_consistent,
    iter_subsets,
    raw_models,
    sort_formulas,
    to_text,
)


class Strategy(str, enum.Enum):
    RELIABILITY = "r"
    MINIMAL_ABNORMALITY = "ma"
    NORMAL_SELECTIONS = "ns"

    @classmethod
    def parse(cls, text: "str | Strategy") -> "Strategy":
        if isinstance(text, Strategy):
            return text
        aliases = {"reliability": "r", "minimal_abnormality": "ma", "normal_selections": "ns"}
        return cls(aliases.get(text, text))


@dataclass(frozen=True)
class AdaptiveTheory:
    """Core logic, premises and a finite set of abnormalities.

    The logic's signature is widened to cover every atom of ``gamma`` and
    ``omega`` on construction.
    """

    logic: CoreLogic
    gamma: frozenset[Formula]
    omega: frozenset[Formula]

    def __post_init__(self):
        gamma = frozenset(self.gamma)
        omega = frozenset(self.omega)
        logic = self.logic.extend(atoms_of(gamma) | atoms_of(omega))
        logic.check(gamma | omega)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "logic", logic)


@dataclass(frozen=True)
class DabFamily:
    sigma: frozenset[frozenset[Formula]]
    phi: frozenset[frozenset[Formula]]
    union_sigma: frozenset[Formula] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "union_sigma", frozenset().union(*self.sigma))


@dataclass(frozen=True)
class DefaultTheory:
    logic: CoreLogic
    gamma: frozenset[Formula]
    delta: frozenset[Formula]

    def __post_init__(self):
        gamma = frozenset(self.gamma)
        delta = frozenset(self.delta)
        logic = self.logic.extend(atoms_of(gamma) | atoms_of(delta))
        logic.check(gamma | delta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "logic", logic)


def sort_family(family: Iterable[Iterable[Formula]]) -> list[list[Formula]]:
    """Canonical listing of a family of formula sets."""
    rows = [sort_formulas(s) for s in family]
    rows.sort(key=lambda r: (len(r), [to_text(f) for f in r]))
    return rows


def contradictions(atoms: Iterable[str]) -> frozenset[Formula]:
    """``{a & ~a}`` for every atom -- the usual inconsistency abnormalities."""
    return frozenset(And(Var(a), WeakNeg(Var(a))) for a in atoms)


# ---------------------------------------------------------------------------
# Dab-sets and choice sets
# ---------------------------------------------------------------------------


def sigma_of(theory: AdaptiveTheory) -> frozenset[frozenset[Formula]]:
    """Minimal non-empty ``D`` within omega whose disjunction follows from gamma."""
    found: list[frozenset[Formula]] = []
    omega = sort_formulas(theory.omega)
    for k in range(1, len(omega) + 1):
        for combo in itertools.combinations(omega, k):
            cand = frozenset(combo)
            if any(f <= cand for f in found):
                continue
            if entails(theory.logic, theory.gamma, disjoin(cand)):
                found.append(cand)
    return frozenset(found)


def phi_of(sigma: Iterable[Iterable[Formula]]) -> frozenset[frozenset[Formula]]:
    """All inclusion-minimal hitting sets of ``sigma`` (``{{}}`` when empty)."""
    sigma = [frozenset(s) for s in sigma]
    if any(not s for s in sigma):
        return frozenset()  # an empty member cannot be hit
    universe = sort_formulas(frozenset().union(*sigma)) if sigma else []
    found: list[frozenset[Formula]] = []
    for k in range(len(universe) + 1):
        for combo in itertools.combinations(universe, k):
            cand = frozenset(combo)
            if any(f <= cand for f in found):
                continue
            if all(s & cand for s in sigma):
                found.append(cand)
    return frozenset(found)


def dab_family(theory: AdaptiveTheory) -> DabFamily:
    sigma = sigma_of(theory)
    return DabFamily(sigma, phi_of(sigma))


def is_choice_set(theta: Iterable[Formula], sigma: Iterable[Iterable[Formula]]) -> bool:
    theta = frozenset(theta)
    return all(frozenset(s) & theta for s in sigma)


# ---------------------------------------------------------------------------
# Consequence via the representation theorems
# ---------------------------------------------------------------------------


def _weakened(goal: Formula, delta: Iterable[Formula]) -> Formula:
    rest = disjoin(delta)
    return goal if rest is None else Or(goal, rest)


def dab_witness(theory: AdaptiveTheory, goal: Formula, pool: Iterable[Formula]) -> frozenset[Formula] | None:
    """Smallest ``D`` within ``pool`` such that gamma entails ``goal | OR(D)``.

    Weakening the disjunction is monotone, so the whole pool is tried first
    and the search only runs when some witness exists.
    """
    pool = sort_formulas(frozenset(pool))
    logic, gamma = theory.logic, theory.gamma
    if not entails(logic, gamma, _weakened(goal, pool)):
        return None
    for combo in iter_subsets(pool):
        if entails(logic, gamma, _weakened(goal, combo)):
            return frozenset(combo)
    raise AssertionError("monotonicity violated")  # pragma: no cover


def _derivable_from(theory: AdaptiveTheory, goal: Formula, pool: frozenset[Formula]) -> bool:
    return entails(theory.logic, theory.gamma, _weakened(goal, pool))


def al_consequence(
    theory: AdaptiveTheory,
    strategy: Strategy | str,
    goal: Formula,
    family: DabFamily | None = None,
) -> bool:
    strategy = Strategy.parse(strategy)
    theory.logic.check((goal,))
    family = family or dab_family(theory)
    omega = theory.omega
    if strategy is Strategy.RELIABILITY:
        return _derivable_from(theory, goal, omega - family.union_sigma)
    if strategy is Strategy.MINIMAL_ABNORMALITY:
        return all(_derivable_from(theory, goal, omega - theta) for theta in family.phi)
    return any(_derivable_from(theory, goal, omega - theta) for theta in family.phi)


def al_witness(theory: AdaptiveTheory, strategy: Strategy | str, goal: Formula) -> list[dict]:
    """Per-choice-set witnesses backing an ``al_consequence`` verdict.

    Each entry maps ``theta`` (a member of phi, or ``None`` for reliability)
    to the smallest condition ``delta`` found, or ``None`` when none exists.
    """
    strategy = Strategy.parse(strategy)
    family = dab_family(theory)
    if strategy is Strategy.RELIABILITY:
        pool = theory.omega - family.union_sigma
        return [{"theta": None, "delta": dab_witness(theory, goal, pool)}]
    out = []
    for theta in sort_family(family.phi):
        theta = frozenset(theta)
        out.append({"theta": theta, "delta": dab_witness(theory, goal, theory.omega - theta)})
    return out


# ---------------------------------------------------------------------------
# Preferential semantics
# ---------------------------------------------------------------------------


def al_consequence_semantic(theory: AdaptiveTheory, strategy: Strategy | str, goal: Formula) -> bool:
    """Consequence by enumerating models and their abnormal parts.

    Follows the three model-selection clauses literally; in particular a
    premise set without models has no minimally abnormal model, so normal
    selections yields nothing there while the other two hold vacuously.
    """
    strategy = Strategy.parse(strategy)
    logic = theory.logic
    logic.check((goal,))
    models = raw_models(logic, theory.gamma)
    omega = sort_formulas(theory.omega)
    ab = [frozenset(a for a in omega if designates(logic, m, a)) for m in models]
    minimal = [i for i, s in enumerate(ab) if not any(t < s for t in ab)]
    verifies = [designates(logic, m, goal) for m in models]

    if strategy is Strategy.MINIMAL_ABNORMALITY:
        return all(verifies[i] for i in minimal)
    if strategy is Strategy.RELIABILITY:
        unreliable = frozenset().union(*(ab[i] for i in minimal)) if minimal else frozenset()
        return all(verifies[i] for i in range(len(models)) if ab[i] <= unreliable)
    return any(
        all(verifies[j] for j in range(len(models)) if ab[j] == ab[i]) for i in minimal
    )


# ---------------------------------------------------------------------------
# Default assumptions
# ---------------------------------------------------------------------------


def mcs_of(theory: DefaultTheory) -> frozenset[frozenset[Formula]]:
    """Maximal subsets of delta consistent with gamma."""
    found: list[frozenset[Formula]] = []
    delta = sort_formulas(theory.delta)
    for combo in iter_subsets(delta, reverse=True):
        cand = frozenset(combo)
        if any(cand <= f for f in found):
            continue
        if is_consistent(theory.logic, theory.gamma | cand):
            found.append(cand)
    return frozenset(found)


def da_consequence(theory: DefaultTheory, goal: Formula) -> bool:
    theory.logic.check((goal,))
    return all(entails(theory.logic, theory.gamma | m, goal) for m in mcs_of(theory))


def negated(formulas: Iterable[Formula]) -> frozenset[Formula]:
    return frozenset(ClassNeg(f) for f in formulas)
