from pathlib import Path

import pytest
from hypothesis import strategies as st

from defeasance.aba import ABF, OracleRules
from defeasance.adaptive import AdaptiveTheory, contradictions
from defeasance.aspic import ArgumentationSystem, AspicRule, Contrariness, DefeasibleTheory, KnowledgeBase
from defeasance.logic import And, ClassNeg, CoreLogic, Or, Var, WeakNeg, parse_formula

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

# structure of each argument in the rebuttal example, by shallow rendering
REBUTTAL_ARGUMENTS = {
    "1": "<-q>",
    "2": "<-p>",
    "3": "<[1] |-> -p>",
    "4": "<[3] => s>",
    "5": "<[2] => s>",
    "6": "<q>",
    "7": "<-s>",
}
REBUTTAL_ATTACKS = {("1", "6"), ("6", "1"), ("6", "3"), ("6", "4"), ("7", "4"), ("7", "5")}


def label_arguments(af):
    """Map our argument ids onto the labels of REBUTTAL_ARGUMENTS."""
    ours = {a.ident: a for a in af.arguments}
    mapping: dict[str, str] = {}
    for _ in range(3):
        for label, shape in REBUTTAL_ARGUMENTS.items():
            for ident, arg in ours.items():
                rendered = arg.describe()
                for child in arg.children:
                    if child.ident in mapping:
                        rendered = rendered.replace(child.ident, f"[{mapping[child.ident]}]")
                if rendered == shape:
                    mapping[ident] = label
    return mapping


def f(text):
    return parse_formula(text)


def fs(*texts):
    return frozenset(parse_formula(t) for t in texts)


def formulas(atoms=("p", "q", "r"), weak=True, max_leaves=6):
    leaves = st.sampled_from([Var(a) for a in atoms])

    def extend(children):
        unary = [st.builds(ClassNeg, children)]
        if weak:
            unary.append(st.builds(WeakNeg, children))
        return st.one_of(
            *unary,
            st.builds(And, children, children),
            st.builds(Or, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@pytest.fixture
def problems_dir():
    return PROBLEMS


@pytest.fixture
def lp_theory():
    """LP premises ~p, ~q, p|q, p|r, q|s with contradiction abnormalities."""
    gamma = fs("~p", "~q", "p | q", "p | r", "q | s")
    return AdaptiveTheory(CoreLogic.lp("pqrs"), gamma, contradictions("pqrs"))


@pytest.fixture
def default_abf():
    """Fact p with the conflicting defaults q and -p | -q, classical rules."""
    q, d = f("q"), f("-p | -q")
    return ABF(OracleRules(CoreLogic.cpl("pq")), fs("p"), [q, d], {q: f("-q"), d: f("-(-p | -q)")})


@pytest.fixture
def rebuttal_aspic():
    theory = DefeasibleTheory(
        (AspicRule((f("-q"),), f("-p")),),
        (AspicRule((f("-p"),), f("s"), True, Var("r1")),),
    )
    system = ArgumentationSystem(theory, Contrariness(classical=True))
    kb = KnowledgeBase(fs("-s"), fs("-q", "-p", "q"))
    return system, kb


# --- acceptance summary -------------------------------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    entry = _CRITERIA.setdefault(number[0], {"title": number[1], "ok": True})
    if report.failed or (report.when == "call" and report.outcome != "passed"):
        entry["ok"] = False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        verdict = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {entry['title']}")
