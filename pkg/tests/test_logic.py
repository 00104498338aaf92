import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defeasance.logic import (
    And,
    ClassNeg,
    CoreLogic,
    LogicError,
    Or,
    ParseError,
    SignatureError,
    Var,
    WeakNeg,
    atoms_of,
    designates,
    disjoin,
    entails,
    is_consistent,
    models_of,
    parse_formula,
    raw_models,
    to_text,
)

from conftest import f, formulas, fs

p, q, r = Var("p"), Var("q"), Var("r")


class TestParsing:
    def test_precedence(self):
        assert parse_formula("~p & (q | r)") == And(WeakNeg(p), Or(q, r))

    def test_left_associative(self):
        assert parse_formula("p | q | r") == Or(Or(p, q), r)
        assert parse_formula("p & q & r") == And(And(p, q), r)

    def test_and_binds_tighter_than_or(self):
        assert parse_formula("p | q & r") == Or(p, And(q, r))

    def test_negations_stack(self):
        assert parse_formula("-~p") == ClassNeg(WeakNeg(p))

    def test_incomplete_input_reports_offset(self):
        with pytest.raises(ParseError) as err:
            parse_formula("p &")
        assert err.value.offset == 3

    @pytest.mark.parametrize("text", ["", "p q", "(p", "p)", "P", "p && q", "1p"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_formula(text)

    def test_printer_uses_minimal_parentheses(self):
        assert to_text(parse_formula("(-p) | (-q)")) == "-p | -q"
        assert to_text(parse_formula("-(p & ~p)")) == "-(p & ~p)"
        assert to_text(parse_formula("p & (q | r)")) == "p & (q | r)"
        assert to_text(parse_formula("p | (q | r)")) == "p | (q | r)"

    def test_operator_sugar(self):
        assert (~p & -q) | r == parse_formula("~p & -q | r")

    def test_bad_atom_name(self):
        with pytest.raises(ValueError):
            Var("Bad")

    @given(formulas(("p", "q", "r_1", "sX")))
    def test_print_parse_roundtrip(self, g):
        assert parse_formula(to_text(g)) == g


class TestSignatures:
    def test_atom_outside_signature(self):
        with pytest.raises(SignatureError):
            entails(CoreLogic.cpl("p"), [p], q)

    def test_weak_negation_rejected_in_cpl(self):
        with pytest.raises(LogicError):
            entails(CoreLogic.cpl("p"), [], WeakNeg(p))

    def test_pairs_only_for_l3r(self):
        with pytest.raises(ValueError):
            CoreLogic("lp", frozenset("ab"), frozenset({("a", "b")}))

    def test_unknown_logic(self):
        with pytest.raises(ValueError):
            CoreLogic("k3", frozenset("p"))

    def test_atoms_and_disjoin(self):
        assert atoms_of(f("p & ~q | r")) == {"p", "q", "r"}
        assert disjoin([]) is None
        assert disjoin(fs("q", "p")) == f("p | q")


class TestEntailment:
    def test_lp_weakened_disjunctive_syllogism(self):
        assert entails(CoreLogic.lp("pr"), fs("~p", "p | r"), f("r | p & ~p"))

    def test_lp_rejects_disjunctive_syllogism(self):
        assert not entails(CoreLogic.lp("pr"), fs("p", "~p | r"), r)

    def test_l3r_contrary_entails_external_negation(self):
        logic = CoreLogic.l3r("ab", {"a": "b"})
        assert entails(logic, fs("b"), f("~a"))

    def test_cpl_disjunctive_syllogism(self):
        assert entails(CoreLogic.cpl("pq"), fs("p | q", "-p"), q)

    def test_l3r_excluded_middle_for_external_negation(self):
        assert entails(CoreLogic.l3r("a"), [], f("a | ~a"))

    def test_lp_classical_negation_is_two_valued(self):
        logic = CoreLogic.lp("p")
        assert entails(logic, [], f("p | -p"))
        assert not is_consistent(logic, fs("p", "-p"))
        assert is_consistent(logic, fs("p", "~p"))

    def test_l3r_self_pair_forces_undecided(self):
        logic = CoreLogic.l3r("a", [("a", "a")])
        assert models_of(logic, []) == [{"a": "u"}]
        assert entails(logic, [], f("~a"))


class TestModels:
    def test_single_cpl_model(self):
        assert models_of(CoreLogic.cpl("p"), fs("p")) == [{"p": "1"}]

    def test_cpl_contradiction_has_no_models(self):
        assert models_of(CoreLogic.cpl("p"), fs("p", "-p")) == []

    def test_lp_glut(self):
        assert models_of(CoreLogic.lp("p"), fs("p", "~p")) == [{"p": "b"}]

    def test_l3r_pair_respected(self):
        models = models_of(CoreLogic.l3r("ab", {"a": "b"}), [])
        assert models == [{"a": "1", "b": "0"}, {"a": "u", "b": "u"}, {"a": "0", "b": "1"}]


LOGICS = [CoreLogic.cpl("pqr"), CoreLogic.lp("pqr"), CoreLogic.l3r("pqr", {"p": "q"})]


def premise_sets(weak):
    return st.frozensets(formulas(weak=weak, max_leaves=4), max_size=4)


@st.composite
def logic_instance(draw):
    logic = draw(st.sampled_from(LOGICS))
    weak = logic.tag != "cpl"
    return logic, draw(premise_sets(weak)), draw(formulas(weak=weak, max_leaves=4)), weak


class TestTarskiProperties:
    @given(logic_instance())
    def test_reflexive(self, inst):
        logic, gamma, goal, _ = inst
        assert entails(logic, gamma | {goal}, goal)

    @given(logic_instance(), st.data())
    def test_monotone(self, inst, data):
        logic, gamma, goal, weak = inst
        extra = data.draw(formulas(weak=weak, max_leaves=3))
        if entails(logic, gamma, goal):
            assert entails(logic, gamma | {extra}, goal)

    @given(logic_instance(), st.data())
    def test_cut(self, inst, data):
        logic, gamma, goal, weak = inst
        middle = data.draw(formulas(weak=weak, max_leaves=3))
        if entails(logic, gamma, middle) and entails(logic, gamma | {middle}, goal):
            assert entails(logic, gamma, goal)

    @given(logic_instance())
    def test_entailment_agrees_with_models(self, inst):
        logic, gamma, goal, _ = inst
        expected = all(designates(logic, m, goal) for m in raw_models(logic, gamma))
        assert entails(logic, gamma, goal) == expected
        assert len(models_of(logic, gamma)) == len(raw_models(logic, gamma))


class TestDeduction:
    """Classical negation lets a negated assumption move into a weakened goal."""

    @settings(max_examples=300)
    @given(st.sampled_from(LOGICS[:2]), st.data())
    def test_negated_assumptions_to_disjunction(self, logic, data):
        weak = logic.tag != "cpl"
        gamma = data.draw(premise_sets(weak))
        delta = data.draw(st.frozensets(formulas(weak=weak, max_leaves=3), min_size=1, max_size=3))
        goal = data.draw(formulas(weak=weak, max_leaves=4))
        lhs = entails(logic, gamma | {ClassNeg(d) for d in delta}, goal)
        assert lhs == entails(logic, gamma, Or(disjoin(delta), goal))

    @settings(max_examples=300)
    @given(st.data())
    def test_l3r_external_negation_deduction(self, data):
        logic = LOGICS[2]
        gamma = data.draw(premise_sets(True))
        delta = data.draw(st.frozensets(formulas(max_leaves=3), min_size=1, max_size=3))
        goal = data.draw(formulas(max_leaves=4))
        lhs = entails(logic, gamma, Or(disjoin(WeakNeg(d) for d in delta), goal))
        assert lhs == entails(logic, gamma | delta, goal)


def test_valuation_count():
    # 3^3 LP valuations with no premises; L3R pair p/q leaves 3 * 3
    assert len(models_of(CoreLogic.lp("pqr"), [])) == 27
    assert len(models_of(LOGICS[2], [])) == 9
    assert len(models_of(CoreLogic.cpl("pqr"), [])) == len(list(itertools.product((0, 1), repeat=3)))
