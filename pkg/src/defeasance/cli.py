"""``defeasance`` command-line front end.

Exit codes: 0 when a query holds (or a command succeeds), 1 when a query
fails or a check finds a counterexample, 2 on any input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence

from .aba import Mode, Semantics, aba_consequence, extensions
from .adaptive import (
    AdaptiveTheory,
    Strategy,
    al_consequence,
    al_witness,
    da_consequence,
    dab_family,
    mcs_of,
    negated,
    sort_family,
)
from .aspic import ArgumentLimitExceeded, argument_extensions, argument_ids, aspic_consequence, structured_af
from .checks import CHECKS, CheckConfig, run_check
from .logic import Formula, LogicError, ParseError, SignatureError, entails, sort_formulas, to_text
from .problem import ProblemError, ProblemFile, format_aba, format_al, format_aspic, read_problem
from .translate import TranslationError, aba_to_al, al_to_aba, al_to_aspic, aspic_to_aba

DIRECTIONS = {"al2aba": "al", "aspic2aba": "aspic", "aba2al": "aba", "al2aspic": "al"}


class UsageError(ValueError):
    pass


def show_set(fs: Iterable[Formula]) -> str:
    return "{" + ", ".join(to_text(f) for f in sort_formulas(fs)) + "}"


def _texts(fs: Iterable[Formula] | None):
    return None if fs is None else [to_text(f) for f in sort_formulas(fs)]


class Result:
    """Collected output: printed as text lines or one JSON object."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {"verdict": None, "witnesses": None, "extensions": None, "report": None}
        self.code = 0

    def emit(self, as_json: bool, out) -> None:
        if as_json:
            out.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            out.write("".join(line + "\n" for line in self.lines))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _theory(problem: ProblemFile) -> AdaptiveTheory:
    if problem.kind == "al":
        return problem.adaptive_theory()
    if problem.kind == "da":
        da = problem.default_theory()
        return AdaptiveTheory(da.logic, da.gamma, negated(da.delta))
    raise UsageError(f"sigma/phi need an al or da problem, not {problem.kind}")


def cmd_solve(problem: ProblemFile, args) -> Result:
    goal = problem.query
    if goal is None:
        raise UsageError("solve needs a 'query:' line")
    res = Result()
    res.lines.append(f"goal: {to_text(goal)}")
    res.data["goal"] = to_text(goal)
    kind = problem.kind

    if kind == "al":
        theory = problem.adaptive_theory()
        strategy = Strategy.parse(args.strategy or problem.strategy)
        verdict = al_consequence(theory, strategy, goal)
        witnesses = al_witness(theory, strategy, goal)
        res.lines.append(f"strategy: {strategy.value}")
        res.data["strategy"] = strategy.value
        res.data["witnesses"] = [{"theta": _texts(w["theta"]), "delta": _texts(w["delta"])} for w in witnesses]
        wl = []
        for w in witnesses:
            delta = "none" if w["delta"] is None else show_set(w["delta"])
            prefix = "" if w["theta"] is None else f"theta={show_set(w['theta'])} "
            wl.append(f"witness: {prefix}delta={delta}")
    elif kind == "da":
        theory = problem.default_theory()
        verdict = da_consequence(theory, goal)
        rows = [sort_formulas(m) for m in sort_family(mcs_of(theory))]
        res.data["witnesses"] = [
            {"mcs": _texts(m), "entails": entails(theory.logic, theory.gamma | frozenset(m), goal)} for m in rows
        ]
        wl = [f"mcs: {show_set(w_m)} entails={str(w['entails']).lower()}" for w_m, w in zip(rows, res.data["witnesses"])]
    elif kind == "aba":
        abf = problem.abf()
        sem = Semantics(args.semantics or problem.semantics)
        mode = Mode(args.mode or problem.mode)
        verdict = aba_consequence(abf, sem, mode, goal)
        exts = extensions(abf, sem)
        res.lines += [f"semantics: {sem.value}", f"mode: {mode.value}"]
        res.data.update(semantics=sem.value, mode=mode.value)
        res.data["extensions"] = _extension_rows(exts)
        res.data["witnesses"] = [{"extension": _texts(e), "derives": abf.derives(e, goal)} for e in exts]
        wl = [f"extension: {show_set(e)} derives={str(abf.derives(e, goal)).lower()}" for e in exts]
    else:
        system, kb = problem.aspic()
        af = structured_af(system, kb)
        sem = Semantics(args.semantics or problem.semantics)
        mode = Mode(args.mode or problem.mode)
        verdict = aspic_consequence(af, sem, mode, goal)
        concluding = [a for a in af.arguments if a.conc == goal]
        res.lines += [f"semantics: {sem.value}", f"mode: {mode.value}"]
        res.data.update(semantics=sem.value, mode=mode.value)
        exts = argument_extensions(af, sem)
        res.data["extensions"] = [argument_ids(e) for e in exts]
        res.data["witnesses"] = [{"argument": a.ident, "structure": a.describe()} for a in concluding]
        wl = [f"argument: {a.ident} {a.describe()}" for a in concluding]

    res.lines.append(f"verdict: {str(verdict).lower()}")
    res.lines += wl
    res.data["verdict"] = verdict
    res.code = 0 if verdict else 1
    return res


def _extension_rows(exts) -> list[list[str]]:
    return sorted((_texts(e) for e in exts), key=lambda r: show_set_text(r))


def show_set_text(items: Sequence[str]) -> str:
    return "{" + ", ".join(items) + "}"


def cmd_extensions(problem: ProblemFile, args) -> Result:
    res = Result()
    sem = Semantics(args.sem or args.semantics or problem.semantics)
    res.data["semantics"] = sem.value
    if problem.kind == "aba":
        rows = _extension_rows(extensions(problem.abf(), sem))
        res.lines += sorted(show_set_text(r) for r in rows)
        res.data["extensions"] = rows
    elif problem.kind == "aspic":
        system, kb = problem.aspic()
        af = structured_af(system, kb)
        rows = sorted((argument_ids(e) for e in argument_extensions(af, sem)), key=lambda r: [int(x[1:]) for x in r])
        res.lines += [show_set_text(r) for r in rows]
        res.data["extensions"] = rows
        res.data["arguments"] = {a.ident: a.describe() for a in af.arguments}
        if args.arguments:
            res.lines.append("")
            res.lines += [f"{a.ident} = {a.describe()}" for a in af.arguments]
    else:
        raise UsageError(f"extensions needs an aba or aspic problem, not {problem.kind}; translate it first")
    return res


def _carry(problem: ProblemFile, *keys: str) -> dict[str, str]:
    return {k: problem.get(k) for k in keys if problem.get(k)}


def cmd_translate(problem: ProblemFile, args) -> Result:
    direction = args.direction
    if DIRECTIONS[direction] != problem.kind:
        raise UsageError(f"{direction} expects a {DIRECTIONS[direction]} problem, not {problem.kind}")
    query = problem.query
    if direction == "al2aba":
        abf, report = al_to_aba(problem.adaptive_theory())
        text = format_aba(abf, query, **_carry(problem, "semantics", "mode"))
    elif direction == "aspic2aba":
        system, kb = problem.aspic()
        abf, report = aspic_to_aba(system, kb)
        text = format_aba(abf, query, **_carry(problem, "semantics", "mode"))
    elif direction == "aba2al":
        theory, report = aba_to_al(problem.abf())
        text = format_al(theory, query, **_carry(problem, "strategy"))
    else:
        system, kb, report = al_to_aspic(problem.adaptive_theory(), query)
        text = format_aspic(system, kb, query, **_carry(problem, "semantics", "mode"))
    res = Result()
    res.lines += text.rstrip("\n").splitlines()
    res.lines += [f"# {line}" for line in report.lines()]
    res.data["report"] = report.as_dict()
    res.data["problem"] = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return res


def cmd_family(problem: ProblemFile, args) -> Result:
    family = dab_family(_theory(problem))
    sets = family.sigma if args.command == "sigma" else family.phi
    rows = sort_family(sets)
    res = Result()
    res.lines += [show_set(r) for r in rows]
    res.data[args.command] = [_texts(r) for r in rows]
    return res


def cmd_check(args) -> Result:
    config = CheckConfig(
        args.theorem, trials=args.trials, seed=args.seed, atoms=args.atoms,
        rules=args.rules, premises=args.premises, jobs=args.jobs,
    )
    report = run_check(config)
    res = Result()
    res.lines += report.text().rstrip("\n").splitlines()
    res.data["report"] = report.as_dict()
    res.data["verdict"] = report.ok
    res.code = 0 if report.ok else 1
    return res


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defeasance",
        description="Adaptive logics, assumption-based argumentation and ASPIC+ with translations between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    semantics = [s.value for s in Semantics]

    def common(p):
        p.add_argument("--json", action="store_true", help="emit one JSON object")

    p = sub.add_parser("solve", help="answer the query of a problem file")
    p.add_argument("file")
    p.add_argument("--strategy", choices=[s.value for s in Strategy])
    p.add_argument("--semantics", choices=semantics)
    p.add_argument("--mode", choices=[m.value for m in Mode])
    common(p)

    p = sub.add_parser("extensions", help="list extensions of an aba or aspic problem")
    p.add_argument("file")
    p.add_argument("sem", nargs="?", choices=semantics, help="semantics (also via --semantics)")
    p.add_argument("--semantics", choices=semantics)
    p.add_argument("--arguments", action="store_true", help="aspic: also list every argument")
    common(p)

    p = sub.add_parser("translate", help="translate a problem into another formalism")
    p.add_argument("file")
    p.add_argument("direction", choices=sorted(DIRECTIONS))
    p.add_argument("-o", "--output", help="also write the translated problem file here")
    common(p)

    p = sub.add_parser("check", help="run a seeded theorem check")
    p.add_argument("theorem", type=str.upper, choices=list(CHECKS))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--rules", type=int, default=5)
    p.add_argument("--premises", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    for name, what in (("sigma", "minimal Dab-sets"), ("phi", "minimal choice sets")):
        p = sub.add_parser(name, help=f"print the {what} of an al or da problem")
        p.add_argument("file")
        common(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            res = cmd_check(args)
        else:
            problem = read_problem(args.file)
            handler = {
                "solve": cmd_solve,
                "extensions": cmd_extensions,
                "translate": cmd_translate,
                "sigma": cmd_family,
                "phi": cmd_family,
            }[args.command]
            res = handler(problem, args)
    except (ProblemError, ParseError, SignatureError, LogicError, TranslationError, UsageError,
            ArgumentLimitExceeded, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    res.emit(args.json, sys.stdout)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
