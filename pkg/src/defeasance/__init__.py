"""Adaptive logics, assumption-based argumentation and ASPIC+, with the
translations that relate their consequence relations."""

from .aba import ABF, Mode, OracleRules, Rule, RuleSet, Semantics, aba_consequence, extensions, satisfies_ex
from .adaptive import (
    AdaptiveTheory,
    DefaultTheory,
    Strategy,
    al_consequence,
    al_consequence_semantic,
    contradictions,
    da_consequence,
    dab_family,
    mcs_of,
    phi_of,
    sigma_of,
)
from .aspic import (
    ArgumentationSystem,
    AspicRule,
    Contrariness,
    DefeasibleTheory,
    KnowledgeBase,
    aspic_consequence,
    build_arguments,
    compute_attacks,
    structured_af,
)
from .logic import CoreLogic, Formula, entails, models_of, parse_formula, to_text
from .problem import parse_problem, read_problem
from .translate import aba_to_al, al_to_aba, al_to_aspic, aspic_to_aba

__version__ = "0.1.0"
