import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defeasance.aba import (
    ABF,
    IntensionalRules,
    Mode,
    OracleRules,
    Rule,
    RuleSet,
    Semantics,
    aba_consequence,
    closure,
    derives,
    extensions,
    is_normal,
    satisfies_ex,
    set_attacks,
    status,
)
from defeasance.logic import CoreLogic, Var

from conftest import f, fs

a, b, c, d, t, u = (Var(x) for x in "abcdtu")


def rule(body, head):
    return Rule(tuple(Var(x) for x in body), Var(head))


class TestRules:
    def test_classical_rules(self):
        rules = OracleRules(CoreLogic.cpl("pq"))
        assert derives(rules, fs("p", "q"), f("-(-p | -q)"))

    def test_base_membership(self):
        assert derives(RuleSet(), {a}, a)

    def test_chaining(self):
        assert derives(RuleSet([rule("a", "b"), rule("b", "c")]), {a}, c)

    def test_closure(self):
        assert closure(RuleSet([rule("a", "b")]), {a}) == {a, b}
        assert closure(RuleSet(), set()) == frozenset()
        assert closure(RuleSet([rule("", "t"), rule("t", "u")]), set()) == {t, u}

    def test_oracle_closure_refused(self):
        with pytest.raises(IntensionalRules):
            closure(OracleRules(CoreLogic.cpl("p")), {Var("p")})

    def test_rule_printing(self):
        assert str(rule("ab", "c")) == "a, b -> c"
        assert str(rule("", "t")) == "-> t"

    @settings(max_examples=200)
    @given(
        st.lists(st.tuples(st.lists(st.sampled_from("abcd"), max_size=2), st.sampled_from("abcd")), max_size=5),
        st.frozensets(st.sampled_from("abcd")),
        st.sampled_from("abcd"),
    )
    def test_closure_properties(self, raw, base, extra):
        rules = RuleSet(rule(body, head) for body, head in raw)
        base = {Var(x) for x in base}
        cl = closure(rules, base)
        assert base <= cl
        assert closure(rules, cl) == cl
        assert cl <= closure(rules, base | {Var(extra)})


class TestDefaultFramework:
    def test_attacks(self, default_abf):
        assert set_attacks(default_abf, fs("q"), fs("-p | -q"))
        assert set_attacks(default_abf, fs("-p | -q"), f("q"))
        assert not set_attacks(default_abf, frozenset(), fs("q", "-p | -q"))

    @pytest.mark.parametrize("sem", list(Semantics))
    def test_extensions(self, default_abf, sem):
        assert set(extensions(default_abf, sem)) == {fs("q"), fs("-p | -q")}

    def test_consequence(self, default_abf):
        assert aba_consequence(default_abf, "prf", "cup", f("-q"))
        assert aba_consequence(default_abf, "prf", "cap", f("p"))
        assert not aba_consequence(default_abf, "prf", "dcap", f("q"))

    def test_ex_and_normality(self, default_abf):
        assert satisfies_ex(default_abf)
        assert is_normal(default_abf)

    def test_status_flags(self, default_abf):
        flags = status(default_abf, fs("q"))
        assert flags == dict.fromkeys(
            ["closed", "conflict_free", "naive", "admissible", "preferred", "stable"], True
        )
        both = status(default_abf, fs("q", "-p | -q"))
        assert not both["conflict_free"] and not both["naive"]


class TestSmallFrameworks:
    def test_unattackable_singleton(self):
        abf = ABF(RuleSet(), [], [a], {a: b})
        for sem in Semantics:
            assert extensions(abf, sem) == [frozenset({a})]
        assert satisfies_ex(abf) and is_normal(abf)

    @pytest.fixture
    def ex_failing(self):
        return ABF(RuleSet([rule("a", "c")]), [], [a, b], {b: c, a: d})

    def test_ex_failure(self, ex_failing):
        assert not satisfies_ex(ex_failing)
        assert extensions(ex_failing, "niv") == [frozenset({a}), frozenset({b})]

    def test_not_normal(self, ex_failing):
        assert not is_normal(ex_failing)
        assert extensions(ex_failing, "stb") == [frozenset({a})]

    def test_empty_assumptions_rejected(self):
        with pytest.raises(ValueError):
            ABF(RuleSet(), [], [], {})

    def test_missing_contrary_rejected(self):
        with pytest.raises(ValueError):
            ABF(RuleSet(), [], [a, b], {a: b})

    def test_no_extensions_conventions(self):
        # gamma derives a and its contrary: nothing closed is conflict-free
        abf = ABF(RuleSet([rule("", "a"), rule("", "b")]), [], [a], {a: b})
        assert extensions(abf, "prf") == []
        assert aba_consequence(abf, "prf", Mode.SKEPTICAL, c)
        assert not aba_consequence(abf, "prf", Mode.CREDULOUS, a)
        assert aba_consequence(abf, "prf", Mode.INTERSECTION, a)

    def test_closedness_enforced(self):
        # {a} derives the assumption b, so only {a, b} is closed among sets with a
        abf = ABF(RuleSet([rule("a", "b")]), [], [a, b], {a: c, b: d})
        assert extensions(abf, "prf") == [frozenset({a, b})]
        assert not status(abf, {a})["closed"]


@st.composite
def token_abfs(draw):
    ab = [Var(x) for x in draw(st.lists(st.sampled_from("abc"), min_size=1, max_size=3, unique=True))]
    language = "abcxyz"
    raw = draw(st.lists(st.tuples(st.lists(st.sampled_from(language), max_size=2), st.sampled_from(language)), max_size=5))
    contrary = {x: Var(draw(st.sampled_from(language))) for x in ab}
    gamma = [Var(x) for x in draw(st.lists(st.sampled_from("xyz"), max_size=2))]
    return ABF(RuleSet(rule(body, head) for body, head in raw), gamma, ab, contrary)


class TestSemanticsProperties:
    @settings(max_examples=300, deadline=None)
    @given(token_abfs())
    def test_inclusions(self, abf):
        t = abf._tables()
        assert set(t["stb"]) <= set(t["cf"])
        assert set(t["prf"]) <= set(t["adm"]) <= set(t["cf"]) <= set(t["closed"])
        if satisfies_ex(abf):
            assert sorted(t["niv"]) == sorted(t["stb"]) == sorted(t["prf"])

    @settings(max_examples=200, deadline=None)
    @given(token_abfs())
    def test_set_attack_lifts_single_attacks(self, abf):
        full = abf.order
        for target in full:
            assert set_attacks(abf, full, target) == abf.rules.derives(abf.gamma | set(full), abf.contrary[target])
