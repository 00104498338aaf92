import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defeasance.aba import Semantics
from defeasance.aspic import (
    ArgumentationSystem,
    ArgumentLimitExceeded,
    AspicRule,
    Contrariness,
    DefeasibleTheory,
    KnowledgeBase,
    argument_extensions,
    argument_ids,
    aspic_consequence,
    build_arguments,
    classical_contrary,
    compute_attacks,
    dung_extensions,
    structured_af,
)
from defeasance.logic import Var, to_text

from conftest import REBUTTAL_ARGUMENTS, REBUTTAL_ATTACKS, f, fs, label_arguments


class TestRebuttalExample:
    def test_seven_arguments(self, rebuttal_aspic):
        args = build_arguments(*rebuttal_aspic)
        assert len(args) == 7
        assert [a.ident for a in args] == [f"a{i}" for i in range(1, 8)]

    def test_arguments_match_by_structure(self, rebuttal_aspic):
        af = structured_af(*rebuttal_aspic)
        mapping = label_arguments(af)
        assert sorted(mapping.values()) == sorted(REBUTTAL_ARGUMENTS)

    def test_attack_relation(self, rebuttal_aspic):
        af = structured_af(*rebuttal_aspic)
        mapping = label_arguments(af)
        got = {(mapping[af.arguments[i].ident], mapping[af.arguments[j].ident]) for i, j in af.pairs}
        assert got == REBUTTAL_ATTACKS
        assert len(af.attacks) == 6

    def test_attack_kinds(self, rebuttal_aspic):
        af = structured_af(*rebuttal_aspic)
        kinds = sorted(k for _, _, k in af.attacks)
        assert kinds == ["rebut", "rebut", "undermine", "undermine", "undermine", "undermine"]

    def test_stable_extensions_snapshot(self, rebuttal_aspic):
        af = structured_af(*rebuttal_aspic)
        exts = [argument_ids(e) for e in argument_extensions(af, "stb")]
        assert exts == [["a1", "a3", "a4"], ["a1", "a2", "a3", "a5"]]
        assert [argument_ids(e) for e in argument_extensions(af, "prf")] == exts

    def test_consequences(self, rebuttal_aspic):
        af = structured_af(*rebuttal_aspic)
        assert aspic_consequence(af, "prf", "cup", f("-s"))
        assert not aspic_consequence(af, "prf", "cap", f("s"))


class TestConstruction:
    def test_single_premise(self):
        system = ArgumentationSystem(DefeasibleTheory((), ()), Contrariness(classical=True))
        args = build_arguments(system, KnowledgeBase(frozenset(), fs("a")))
        assert [a.describe() for a in args] == ["<a>"]

    def test_path_guard_blocks_cycles(self):
        theory = DefeasibleTheory((AspicRule((f("a"),), f("b")), AspicRule((f("b"),), f("a"))), ())
        system = ArgumentationSystem(theory, Contrariness(classical=True))
        args = build_arguments(system, KnowledgeBase(frozenset(), fs("a")))
        assert [a.describe() for a in args] == ["<a>", "<a1 |-> b>"]

    def test_no_defeasible_no_plausible_no_attacks(self):
        theory = DefeasibleTheory((AspicRule((f("a"),), f("-b")),), ())
        system = ArgumentationSystem(theory, Contrariness(classical=True))
        assert structured_af(system, KnowledgeBase(fs("a", "b"), frozenset())).attacks == frozenset()

    def test_undercut(self, rebuttal_aspic):
        system, kb = rebuttal_aspic
        # a plausible premise -r1 undercuts every use of the rule named r1
        kb2 = KnowledgeBase(kb.axioms, kb.plausible | {f("-r1")})
        af = structured_af(system, kb2)
        undercutter = next(i for i, a in enumerate(af.arguments) if a.conc == f("-r1"))
        hit = {to_text(af.arguments[j].conc) for i, j, k in af.attacks if i == undercutter and k == "undercut"}
        assert hit == {"s"}

    def test_argument_limit(self):
        rules = tuple(AspicRule((f(x),), f(y)) for x, y in itertools.permutations("abcd", 2))
        system = ArgumentationSystem(DefeasibleTheory(rules, ()), Contrariness(classical=True))
        with pytest.raises(ArgumentLimitExceeded):
            build_arguments(system, KnowledgeBase(frozenset(), fs("a", "b", "c", "d")), max_arguments=10)

    def test_rule_names_are_unique(self):
        with pytest.raises(ValueError):
            DefeasibleTheory((), (AspicRule((), f("a"), True, Var("r")), AspicRule((), f("b"), True, Var("r"))))

    def test_axioms_and_plausible_disjoint(self):
        with pytest.raises(ValueError):
            KnowledgeBase(fs("a"), fs("a"))

    def test_classical_contrary(self):
        assert classical_contrary(f("p")) == f("-p")
        assert classical_contrary(f("-p")) == f("p")
        assert Contrariness({f("a"): [f("c")]}, classical=True)(f("a")) == {f("-a"), f("c")}

    def test_subargument_closure(self, rebuttal_aspic):
        args = build_arguments(*rebuttal_aspic)
        for a in args:
            assert a.sub <= set(args)
            assert a.prem <= rebuttal_aspic[1].all


def brute_force(n, pairs, sem):
    att = set(pairs)

    def cf(s):
        return not any((x, y) in att for x in s for y in s)

    def defended(s, x):
        return all(any((z, y) in att for z in s) for y in range(n) if (y, x) in att)

    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]
    cfs = [s for s in subsets if cf(s)]
    if sem == "niv":
        pick = [s for s in cfs if not any(s < t for t in cfs)]
    elif sem == "prf":
        adm = [s for s in cfs if all(defended(s, x) for x in s)]
        pick = [s for s in adm if not any(s < t for t in adm)]
    else:
        pick = [s for s in cfs if all(any((x, y) in att for x in s) for y in range(n) if y not in s)]
    return sorted(pick, key=lambda s: (len(s), sorted(s)))


@st.composite
def frameworks(draw):
    n = draw(st.integers(0, 6))
    if n == 0:
        return 0, []
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))
    return n, pairs


class TestDungSemantics:
    @settings(max_examples=300)
    @given(frameworks(), st.sampled_from(["niv", "prf", "stb"]))
    def test_against_brute_force(self, af, sem):
        n, pairs = af
        assert dung_extensions(n, pairs, sem) == brute_force(n, pairs, sem)

    def test_attack_free(self):
        assert dung_extensions(3, [], Semantics.PREFERRED) == [frozenset({0, 1, 2})]

    def test_mutual_attack(self):
        assert dung_extensions(2, [(0, 1), (1, 0)], "prf") == [frozenset({0}), frozenset({1})]
