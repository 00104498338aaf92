"""Seeded differential and property checks for the representation results.

Every check draws ``trials`` random instances; trial ``i`` gets its own
``random.Random`` seeded from ``(theorem, seed, i)``, so results do not
depend on evaluation order or on how many worker threads are used.
Generators are biased toward instances with at least one conflict, since
uniform sampling mostly yields frameworks where nothing interesting happens.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .aba import ABF, Mode, OracleRules, Rule, RuleSet, Semantics, aba_consequence, satisfies_ex
from .adaptive import (
    AdaptiveTheory,
    DefaultTheory,
    Strategy,
    al_consequence,
    al_consequence_semantic,
    contradictions,
    da_consequence,
    dab_family,
    is_choice_set,
    negated,
    phi_of,
)
from .aspic import (
    ArgumentationSystem,
    AspicRule,
    Contrariness,
    DefeasibleTheory,
    KnowledgeBase,
    aspic_consequence,
    structured_af,
)
from .logic import (
    CPL,
    LP,
    And,
    ClassNeg,
    CoreLogic,
    Formula,
    Or,
    Var,
    WeakNeg,
    atoms_of,
    disjoin,
    entails,
    is_consistent,
    iter_subsets,
    to_text,
)
from .problem import format_aba, format_al, format_aspic, format_da
from .translate import aba_to_al, al_to_aba, aspic_to_aba, r_consistent

SEMANTICS = (Semantics.NAIVE, Semantics.PREFERRED, Semantics.STABLE)
# ABA mode <-> adaptive strategy pairing of the representation theorems
MODE_STRATEGY = ((Mode.CREDULOUS, Strategy.NORMAL_SELECTIONS),
                 (Mode.SKEPTICAL, Strategy.MINIMAL_ABNORMALITY),
                 (Mode.INTERSECTION, Strategy.RELIABILITY))
ATOMS = ("p", "q", "r", "s")
MAX_TRIES = 40


@dataclass
class CheckConfig:
    theorem: str
    trials: int = 100
    seed: int = 0
    atoms: int = 3
    rules: int = 5
    premises: int = 4
    jobs: int = 1

    def __post_init__(self):
        self.theorem = self.theorem.upper()
        if self.theorem not in CHECKS:
            raise ValueError(f"unknown theorem id {self.theorem!r}; expected one of {', '.join(CHECKS)}")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if not 1 <= self.atoms <= 4:
            raise ValueError("atoms must be between 1 and 4")
        if self.rules < 1 or self.premises < 0:
            raise ValueError("rules must be positive and premises non-negative")


@dataclass
class Outcome:
    applicable: bool = True
    failure: str | None = None  # problem text plus a comment header


@dataclass
class CheckReport:
    theorem: str
    trials: int
    passed: int
    applicable: int
    counterexample: str | None = None
    failures: int = field(init=False)

    def __post_init__(self):
        self.failures = self.trials - self.passed

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def text(self) -> str:
        lines = [f"{self.theorem}: {self.passed}/{self.trials} pass"]
        if self.applicable != self.trials:
            lines.append(f"applicable: {self.applicable}/{self.trials}")
        if self.counterexample:
            lines += ["first counterexample:", self.counterexample.rstrip("\n")]
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures,
            "applicable": self.applicable,
            "counterexample": self.counterexample,
        }


def run_check(config: CheckConfig) -> CheckReport:
    fn = CHECKS[config.theorem]

    def trial(i: int) -> Outcome:
        return fn(random.Random(f"{config.theorem}:{config.seed}:{i}"), config)

    if config.jobs > 1:
        with ThreadPoolExecutor(config.jobs) as pool:
            outcomes = list(pool.map(trial, range(config.trials)))
    else:
        outcomes = [trial(i) for i in range(config.trials)]
    first = next((o.failure for o in outcomes if o.failure), None)
    return CheckReport(
        config.theorem,
        config.trials,
        sum(o.failure is None for o in outcomes),
        sum(o.applicable for o in outcomes),
        first,
    )


def _fail(header: str, problem: str) -> Outcome:
    comment = "".join(f"# {line}\n" for line in header.splitlines())
    return Outcome(True, comment + problem)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def random_formula(rng: random.Random, atoms, depth: int = 2, weak: bool = True) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        return Var(rng.choice(atoms))
    op = rng.choice(("-", "&", "|", "~") if weak else ("-", "&", "|"))
    if op == "-":
        return ClassNeg(random_formula(rng, atoms, depth - 1, weak))
    if op == "~":
        return WeakNeg(random_formula(rng, atoms, depth - 1, weak))
    left = random_formula(rng, atoms, depth - 1, weak)
    right = random_formula(rng, atoms, depth - 1, weak)
    return And(left, right) if op == "&" else Or(left, right)


def _literal(rng: random.Random, atoms) -> Formula:
    a = Var(rng.choice(atoms))
    return ClassNeg(a) if rng.random() < 0.5 else a


def random_goals(rng: random.Random, atoms, weak: bool, extra=()) -> list[Formula]:
    goals = {_literal(rng, atoms), random_formula(rng, atoms, 2, weak), random_formula(rng, atoms, 1, weak)}
    goals |= set(extra)
    return sorted(goals, key=to_text)


def random_al(rng: random.Random, config: CheckConfig, consistent: bool = False,
              tag: str | None = None) -> AdaptiveTheory:
    """Adaptive theory over CPL or LP with at most three abnormalities.

    Instances with a derivable Dab-disjunction are preferred: up to
    ``MAX_TRIES`` draws are made until one turns up.
    """
    want_conflict = rng.random() < 0.85
    best = None
    for _ in range(MAX_TRIES):
        tag_ = tag or rng.choice((CPL, LP))
        atoms = ATOMS[: rng.randint(1, config.atoms)]
        weak = tag_ == LP
        omega: set[Formula] = set()
        for _ in range(rng.randint(1, 3)):
            if weak and rng.random() < 0.6:
                omega |= contradictions([rng.choice(atoms)])
            elif rng.random() < 0.5:
                omega.add(_literal(rng, atoms))
            else:
                omega.add(random_formula(rng, atoms, 1, weak))
        gamma = {random_formula(rng, atoms, 2, weak) for _ in range(rng.randint(0, config.premises))}
        theory = AdaptiveTheory(CoreLogic(tag_, frozenset(atoms)), frozenset(gamma), frozenset(omega))
        if consistent and not is_consistent(theory.logic, theory.gamma):
            continue
        best = theory
        if not want_conflict or dab_family(theory).sigma:
            return theory
    if best is None:  # only reachable when every draw was inconsistent
        return AdaptiveTheory(CoreLogic(tag or CPL, frozenset("p")), frozenset(), frozenset([Var("p")]))
    return best


def random_default(rng: random.Random, config: CheckConfig) -> DefaultTheory:
    best = None
    for _ in range(MAX_TRIES):
        atoms = ATOMS[: rng.randint(1, config.atoms)]
        gamma = {random_formula(rng, atoms, 2, False) for _ in range(rng.randint(0, config.premises))}
        delta = {random_formula(rng, atoms, 1, False) for _ in range(rng.randint(1, 3))}
        best = DefaultTheory(CoreLogic.cpl(atoms), frozenset(gamma), frozenset(delta))
        if not is_consistent(best.logic, best.gamma | best.delta):
            return best
    return best


def random_aspic(rng: random.Random, config: CheckConfig) -> tuple[ArgumentationSystem, KnowledgeBase]:
    """Small ASPIC+ theory over literals with classical contrariness.

    Some instances add an asymmetric contrary or an undercutter
    (a rule concluding the negated name of a defeasible rule).  Theories
    are kept flat: a sentence that heads a rule is never a plausible
    premise.  Theories without any attack are redrawn.
    """
    atoms = ("a", "b", "c", "d")[: max(2, config.atoms)]
    system = kb = None
    for _ in range(MAX_TRIES):
        names: list[Var] = []
        rules = []
        for k in range(rng.randint(1, config.rules)):
            body = tuple(dict.fromkeys(_literal(rng, atoms) for _ in range(rng.randint(0, 2))))
            head = _literal(rng, atoms)
            if names and rng.random() < 0.15:
                head = ClassNeg(rng.choice(names))
            if head in body:
                continue
            if rng.random() < 0.5:
                name = Var(f"d{k}")
                names.append(name)
                rules.append(AspicRule(body, head, True, name))
            else:
                rules.append(AspicRule(body, head))
        theory = DefeasibleTheory(
            tuple(r for r in rules if not r.defeasible), tuple(r for r in rules if r.defeasible)
        )
        table = {}
        if rng.random() < 0.3:
            x, y = rng.sample(atoms, 2)
            table = {Var(x): {Var(y)}}
        system = ArgumentationSystem(theory, Contrariness(table, classical=True))
        sentences = list(dict.fromkeys(_literal(rng, atoms) for _ in range(rng.randint(1, 4))))
        heads = {r.consequent for r in rules}
        axioms = frozenset(s for s in sentences if s in heads or rng.random() < 0.35)
        kb = KnowledgeBase(axioms, frozenset(sentences) - axioms)
        if structured_af(system, kb).attacks:
            break
    return system, kb


def random_token_abf(rng: random.Random, config: CheckConfig, r_consistent_theory: bool = False) -> ABF:
    """ABF over atoms whose contraries form a matching.

    Assumptions are drawn from ``a b c``; each gets a private non-assumption
    contrary, or is paired with another assumption, or with itself.
    """
    for _ in range(MAX_TRIES):
        ab_atoms = ["a", "b", "c"][: rng.randint(1, 3)]
        others = ["x", "y", "z", "w"]
        rng.shuffle(others)
        contrary: dict[str, str] = {}
        free = list(ab_atoms)
        rng.shuffle(free)
        while free:
            a = free.pop()
            roll = rng.random()
            if roll < 0.3 and free:
                b = free.pop()
                contrary[a], contrary[b] = b, a
            elif roll < 0.38:
                contrary[a] = a
            else:
                contrary[a] = others.pop()
        plain = sorted(set(["x", "y", "z", "w"]) - set(others) | {"x", "y"})
        language = ab_atoms + plain
        rules = set()
        for _ in range(rng.randint(1, config.rules)):
            body = tuple(sorted(set(rng.sample(language, rng.randint(0, 2)))))
            pool = plain if rng.random() < 0.85 else ab_atoms
            head = rng.choice(pool)
            if head in body:
                continue
            rules.add(Rule(tuple(Var(b) for b in body), Var(head)))
        gamma = {Var(x) for x in rng.sample(plain, rng.randint(0, min(2, len(plain))))}
        abf = ABF(
            RuleSet(rules), gamma, [Var(a) for a in ab_atoms],
            {Var(a): Var(c) for a, c in contrary.items()},
        )
        if r_consistent_theory and not r_consistent(abf, abf.gamma):
            continue
        attacked = any(abf.attacks((1 << len(abf.order)) - 1, 1 << i) for i in range(len(abf.order)))
        if attacked or rng.random() < 0.15:
            return abf
    return abf


# ---------------------------------------------------------------------------
# Adaptive-logic checks
# ---------------------------------------------------------------------------


def _goals_for(rng, theory: AdaptiveTheory) -> list[Formula]:
    atoms = sorted(atoms_of(theory.gamma | theory.omega)) or ["p"]
    return random_goals(rng, atoms, theory.logic.tag != CPL, extra=[rng.choice(sorted(theory.omega, key=to_text))])


def check_t6(rng: random.Random, config: CheckConfig) -> Outcome:
    theory = random_al(rng, config, consistent=True)
    family = dab_family(theory)
    for goal in _goals_for(rng, theory):
        for strategy in Strategy:
            syn = al_consequence(theory, strategy, goal, family)
            sem = al_consequence_semantic(theory, strategy, goal)
            if syn != sem:
                return _fail(
                    f"T6 {strategy.value}: syntactic={syn} semantic={sem}",
                    format_al(theory, goal, strategy=strategy.value),
                )
    return Outcome()


def check_t7(rng: random.Random, config: CheckConfig) -> Outcome:
    da = random_default(rng, config)
    al = AdaptiveTheory(da.logic, da.gamma, negated(da.delta))
    family = dab_family(al)
    atoms = sorted(da.logic.signature)
    for goal in random_goals(rng, atoms, False, extra=list(da.delta)[:1]):
        lhs = da_consequence(da, goal)
        rhs = al_consequence(al, Strategy.MINIMAL_ABNORMALITY, goal, family)
        if lhs != rhs:
            return _fail(f"T7: da={lhs} ma={rhs}", format_da(da, goal))
    return Outcome()


def check_t8(rng: random.Random, config: CheckConfig) -> Outcome:
    theory = random_al(rng, config, consistent=True)
    abf, _ = al_to_aba(theory)
    family = dab_family(theory)
    for goal in _goals_for(rng, theory):
        for mode, strategy in MODE_STRATEGY:
            al = al_consequence(theory, strategy, goal, family)
            for sem in SEMANTICS:
                aba = aba_consequence(abf, sem, mode, goal)
                if aba != al:
                    return _fail(
                        f"T8 {sem.value}/{mode.value} vs {strategy.value}: aba={aba} al={al}",
                        format_al(theory, goal, strategy=strategy.value),
                    )
    return Outcome()


def check_chain(rng: random.Random, config: CheckConfig) -> Outcome:
    theory = random_al(rng, config)
    family = dab_family(theory)
    for goal in _goals_for(rng, theory):
        r, ma, ns = (al_consequence(theory, s, goal, family) for s in Strategy)
        if (r and not ma) or (ma and not ns):
            return _fail(f"chain: r={r} ma={ma} ns={ns}", format_al(theory, goal))
    return Outcome()


def _random_family(rng: random.Random) -> list[frozenset[Formula]]:
    tokens = [Var(t) for t in ("a", "b", "c", "d", "e")[: rng.randint(1, 5)]]
    return [frozenset(rng.sample(tokens, rng.randint(1, len(tokens)))) for _ in range(rng.randint(0, 4))]


def check_f1(rng: random.Random, config: CheckConfig) -> Outcome:
    if rng.random() < 0.5:
        theory = random_al(rng, config)
        sigma = list(dab_family(theory).sigma)
    else:
        raw = _random_family(rng)
        sigma = [s for s in raw if not any(t < s for t in raw)]
    sigma = list(dict.fromkeys(sigma))
    phi = phi_of(sigma)
    universe = sorted(frozenset().union(*sigma) | {Var("extra")}, key=to_text)
    desc = "sigma = " + " ; ".join("{" + ", ".join(sorted(map(to_text, s))) + "}" for s in sigma)
    if frozenset().union(*phi) != frozenset().union(*sigma):
        return _fail(f"F1 union of phi differs from union of sigma\n{desc}", "")
    for theta in map(frozenset, iter_subsets(universe)):
        choice = is_choice_set(theta, sigma)
        if choice and not any(f <= theta for f in phi):
            return _fail(f"F1.1 choice set without a member of phi below it\n{desc}", "")
        witnessed = choice and all(any(s & theta == {a} for s in sigma) for a in theta)
        if witnessed != (theta in phi):
            return _fail(f"F1.2 witness property fails for {sorted(map(to_text, theta))}\n{desc}", "")
    return Outcome()


def check_f11(rng: random.Random, config: CheckConfig) -> Outcome:
    tag = rng.choice((CPL, LP))
    atoms = ATOMS[: rng.randint(1, config.atoms)]
    weak = tag == LP
    logic = CoreLogic(tag, frozenset(atoms))
    gamma = frozenset(random_formula(rng, atoms, 2, weak) for _ in range(rng.randint(0, config.premises)))
    delta = frozenset(random_formula(rng, atoms, 1, weak) for _ in range(rng.randint(1, 3)))
    goal = random_formula(rng, atoms, 2, weak)
    lhs = entails(logic, gamma | negated(delta), goal)
    rhs = entails(logic, gamma, Or(disjoin(delta), goal))
    if lhs != rhs:
        theory = DefaultTheory(logic, gamma, delta)
        return _fail(f"F11: with negated assumptions={lhs} weakened goal={rhs}", format_da(theory, goal))
    return Outcome()


def _random_pairs(rng: random.Random, atoms) -> list[tuple[str, str]]:
    pool = list(atoms)
    rng.shuffle(pool)
    pairs = []
    while len(pool) >= 2 and rng.random() < 0.7:
        pairs.append((pool.pop(), pool.pop()))
    if pool and rng.random() < 0.2:
        a = pool.pop()
        pairs.append((a, a))
    return pairs


def check_f30(rng: random.Random, config: CheckConfig) -> Outcome:
    atoms = ATOMS[: rng.randint(1, config.atoms)]
    pairs = _random_pairs(rng, atoms)
    logic = CoreLogic.l3r(atoms, pairs)
    gamma = frozenset(random_formula(rng, atoms, 2, True) for _ in range(rng.randint(0, config.premises)))
    delta = frozenset(random_formula(rng, atoms, 1, True) for _ in range(rng.randint(1, 3)))
    goal = random_formula(rng, atoms, 2, True)
    theory = AdaptiveTheory(logic, gamma, delta)
    for a, b in pairs:
        for x, y in ((a, b), (b, a)):
            if not entails(logic, frozenset([Var(y)]), WeakNeg(Var(x))):
                return _fail(f"F30(i): contrary {y} of {x} does not entail ~{x}", format_al(theory, goal))
    lhs = entails(logic, gamma, Or(disjoin(WeakNeg(d) for d in delta), goal))
    rhs = entails(logic, gamma | delta, goal)
    if lhs != rhs:
        return _fail(f"F30(ii): weakened={lhs} with delta={rhs} (abnormalities list delta)", format_al(theory, goal))
    return Outcome()


def check_l10(rng: random.Random, config: CheckConfig) -> Outcome:
    theory = random_al(rng, config, consistent=True)
    abf, _ = al_to_aba(theory)
    stable = abf.extension_masks(Semantics.STABLE)
    for phi in dab_family(theory).phi:
        m = abf.mask(abf.ab - negated(phi))
        if m not in stable:
            return _fail(f"L10: complement of {sorted(map(to_text, phi))} is not stable", format_al(theory))
    return Outcome()


def check_l12(rng: random.Random, config: CheckConfig) -> Outcome:
    theory = random_al(rng, config, consistent=True)
    abf, _ = al_to_aba(theory)
    expected = sorted(abf.mask(abf.ab - negated(phi)) for phi in dab_family(theory).phi)
    for sem in SEMANTICS:
        got = sorted(abf.extension_masks(sem))
        if got != expected:
            return _fail(f"L12: {sem.value} extensions differ from the choice-set complements", format_al(theory))
    return Outcome()


# ---------------------------------------------------------------------------
# Translation checks
# ---------------------------------------------------------------------------


def check_c27(rng: random.Random, config: CheckConfig) -> Outcome:
    system, kb = random_aspic(rng, config)
    abf, _ = aspic_to_aba(system, kb)
    af = structured_af(system, kb)
    goals = set(kb.all)
    for r in system.theory.rules:
        goals |= r.sentences()
    for goal in sorted(goals, key=to_text):
        for sem in (Semantics.STABLE, Semantics.PREFERRED):
            for mode in Mode:
                lhs = aba_consequence(abf, sem, mode, goal)
                rhs = aspic_consequence(af, sem, mode, goal)
                if lhs != rhs:
                    return _fail(
                        f"C27 {sem.value}/{mode.value}: aba={lhs} aspic={rhs}",
                        format_aspic(system, kb, goal, semantics=sem.value, mode=mode.value),
                    )
    return Outcome()


def _token_goals(abf: ABF) -> list[Formula]:
    sentences = set(abf.gamma) | set(abf.ab) | set(abf.contrary.values()) | set(abf.rules.sentences())
    return sorted(sentences, key=to_text)


def _check_aba_to_al(rng, config, semantics, require_ex: bool, theorem: str) -> Outcome:
    abf = random_token_abf(rng, config, r_consistent_theory=True)
    if require_ex and not satisfies_ex(abf):
        return Outcome(applicable=False)
    theory, _ = aba_to_al(abf)
    family = dab_family(theory)
    for goal in _token_goals(abf):
        for mode, strategy in MODE_STRATEGY:
            al = al_consequence(theory, strategy, goal, family)
            for sem in semantics:
                aba = aba_consequence(abf, sem, mode, goal)
                if aba != al:
                    return _fail(
                        f"{theorem} {sem.value}/{mode.value} vs {strategy.value}: aba={aba} al={al}",
                        format_aba(abf, goal, semantics=sem.value, mode=mode.value),
                    )
    return Outcome()


def check_t31(rng: random.Random, config: CheckConfig) -> Outcome:
    abf = random_token_abf(rng, config, r_consistent_theory=True)
    theory, _ = aba_to_al(abf)
    expected = sorted(
        abf.mask(a for a in abf.ab if WeakNeg(a) not in phi) for phi in dab_family(theory).phi
    )
    got = sorted(abf.extension_masks(Semantics.NAIVE))
    if got != expected:
        return _fail("T31: naive extensions differ from the choice-set complements", format_aba(abf))
    return Outcome()


def check_t32(rng: random.Random, config: CheckConfig) -> Outcome:
    return _check_aba_to_al(rng, config, (Semantics.NAIVE,), False, "T32")


def check_t33(rng: random.Random, config: CheckConfig) -> Outcome:
    return _check_aba_to_al(rng, config, SEMANTICS, True, "T33")


def check_l28(rng: random.Random, config: CheckConfig) -> Outcome:
    abf = random_token_abf(rng, config)
    theory, _ = aba_to_al(abf)
    rules_tilde = theory.gamma - abf.gamma
    for extra in map(frozenset, iter_subsets(abf.order)):
        base = abf.gamma | extra
        guarded = r_consistent(abf, base)
        for goal in _token_goals(abf):
            derived = abf.rules.derives(base, goal)
            sem = entails(theory.logic, base | rules_tilde, goal)
            if derived and not sem:
                return _fail(f"L28.1: derivable but not entailed from base {sorted(map(to_text, base))}",
                             format_aba(abf, goal))
            if guarded and sem and not derived:
                return _fail(f"L28.2: entailed but not derivable from R-consistent base {sorted(map(to_text, base))}",
                             format_aba(abf, goal))
    return Outcome()


CHECKS: dict[str, Callable[[random.Random, CheckConfig], Outcome]] = {
    "T6": check_t6,
    "T7": check_t7,
    "T8": check_t8,
    "C27": check_c27,
    "T31": check_t31,
    "T32": check_t32,
    "T33": check_t33,
    "F1": check_f1,
    "F11": check_f11,
    "F30": check_f30,
    "L10": check_l10,
    "L12": check_l12,
    "L28": check_l28,
    "CHAIN": check_chain,
}
