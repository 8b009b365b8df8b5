"""Command-line front end.

Exit codes, for every command: 0 affirmative (valid, entailed, satisfiable,
all blocks checked, no audit violations), 1 negative or refuted, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import modelfile
from .canonical import InconsistentSeed, build_canonical, countermodel, lindenbaum_extend, truth_lemma_audit
from .decide import DEFAULT_ATOM_BUDGET, BudgetExceeded, Outcome, global_consequence, local_consequence, sat_universal, valid
from .formula import Atom, Box, Formula, Impl, closure, decode, encode
from .hilbert import Mode
from .script import ScriptSyntaxError, check_script
from .syntax import SyntaxError_, parse, parse_list, pretty

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sigma", type=int, default=None, help="atom signature size (default: inferred)")
    common.add_argument("--nec-mode", choices=["restricted", "unrestricted"], default="restricted")
    common.add_argument("--atom-budget", type=int, default=DEFAULT_ATOM_BUDGET)
    common.add_argument("--out", metavar="PATH", default=None, help="write the model/witness here")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(
        prog="s5kit",
        description="S5 modal logic: proof checking, decision, canonical models.",
        epilog="exit codes: 0 affirmative, 1 negative or refuted, 2 usage or parse error",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="show the syntax tree of a formula")
    sp.add_argument("formula")
    sp = sub.add_parser("print", parents=[common], help="pretty-print a formula in ASCII")
    sp.add_argument("formula")

    sp = sub.add_parser("check", parents=[common], help="check a proof script")
    sp.add_argument("script")

    sp = sub.add_parser("decide", parents=[common], help="decide validity, satisfiability, consequence")
    sp.add_argument("kind", choices=["valid", "sat", "local", "global"])
    sp.add_argument("formula", help="formula (for sat: comma-separated formulas)")
    sp.add_argument("--ctx", default="", help="comma-separated premises")

    sp = sub.add_parser("canonical", parents=[common], help="build the canonical model of a closure")
    sp.add_argument("formula")
    sp.add_argument("--ctx", default="")
    sp.add_argument("--audit", action="store_true", help="run the truth-lemma audit")
    sp.add_argument("--countermodel", action="store_true", help="designate a world refuting ctx |= formula")

    sp = sub.add_parser("lindenbaum", parents=[common], help="trace the extension of a seed to a world")
    sp.add_argument("formula", help="formula whose closure (with the seed) is the universe")
    sp.add_argument("--ctx", default="", help="seed formulas")
    sp.add_argument("--full", action="store_true", help="list every code, including skipped ones")

    sp = sub.add_parser("code", parents=[common], help="Goedel coding")
    sp.add_argument("op", choices=["encode", "decode"])
    sp.add_argument("value")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handler = {
        "parse": cmd_parse,
        "print": cmd_print,
        "check": cmd_check,
        "decide": cmd_decide,
        "canonical": cmd_canonical,
        "lindenbaum": cmd_lindenbaum,
        "code": cmd_code,
    }[args.command]
    try:
        return handler(args)
    except SyntaxError_ as e:
        print(f"error: {e.message}", file=sys.stderr)
        print(e.caret(), file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, BudgetExceeded, modelfile.ModelFileError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def _formula(args, text: str) -> Formula:
    return parse(text, args.sigma)


def _ctx(args) -> list[Formula]:
    return parse_list(args.ctx, args.sigma)


def _emit(args, text: str) -> None:
    sys.stdout.write(text)


def _write_out(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _tree(p: Formula):
    if isinstance(p, Atom):
        return {"atom": p.index}
    if isinstance(p, Impl):
        return {"impl": [_tree(p.lhs), _tree(p.rhs)]}
    if isinstance(p, Box):
        return {"box": _tree(p.body)}
    return "bot"


def cmd_parse(args) -> int:
    p = _formula(args, args.formula)
    if args.format == "json":
        _emit(args, json.dumps(_tree(p)) + "\n")
    else:
        _emit(args, repr(p) + "\n")
    return EXIT_OK


def cmd_print(args) -> int:
    _emit(args, pretty(_formula(args, args.formula)) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {args.script}: {e.strerror}") from None
    try:
        results = check_script(text, Mode(args.nec_mode), args.sigma)
    except ScriptSyntaxError as e:
        print(f"error: {args.script}: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        doc = [
            {"theorem": r.name, "ok": r.ok, "judgment": str(r.judgment) if r.ok else None,
             "error": r.error, "line": r.lineno}
            for r in results
        ]
        _emit(args, json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        _emit(args, "".join(r.report() + "\n" for r in results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_NO


_AFFIRMATIVE = {Outcome.VALID, Outcome.ENTAILED, Outcome.SAT}


def cmd_decide(args) -> int:
    budget = args.atom_budget
    if args.kind == "sat":
        if args.ctx:
            raise UsageError("sat takes its formulas as the positional argument, not --ctx")
        verdict = sat_universal(parse_list(args.formula, args.sigma), budget, args.sigma)
    else:
        p = _formula(args, args.formula)
        if args.kind == "valid":
            if args.ctx:
                raise UsageError("valid takes no --ctx; use 'local'")
            verdict = valid(p, budget, args.sigma)
        elif args.kind == "local":
            verdict = local_consequence(_ctx(args), p, budget, args.sigma)
        else:
            verdict = global_consequence(_ctx(args), p, budget, args.sigma)
    M = verdict.witness
    if args.format == "json":
        doc = {"outcome": str(verdict.outcome)}
        if M is not None:
            doc["witness"] = modelfile.model_to_dict(M, verdict.world)
        _emit(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "dot" and M is not None:
        _emit(args, modelfile.to_dot(M, verdict.world, "witness"))
    else:
        out = str(verdict.outcome) + "\n"
        if M is not None:
            kind = "model" if verdict.outcome is Outcome.SAT else "countermodel"
            out += f"{kind} (designated world marked *):\n" + modelfile.to_text(M, verdict.world)
        _emit(args, out)
    if M is not None:
        _write_out(args, modelfile.dumps(M, verdict.world))
    return EXIT_OK if verdict.outcome in _AFFIRMATIVE else EXIT_NO


def cmd_canonical(args) -> int:
    gamma = _ctx(args)
    p = _formula(args, args.formula)
    designated = None
    if args.countermodel:
        cm = countermodel(gamma, p, args.atom_budget)
        if cm is None:
            _emit(args, "entailed\n")
            return EXIT_NO
        CM, designated = cm.model, cm.index
    else:
        CM = build_canonical(closure(gamma + [p]), args.atom_budget)
    labels = {i: [str(q) for q in w] for i, w in enumerate(CM.domain)}
    report = truth_lemma_audit(CM) if args.audit else None
    M = CM.underlying
    if args.format == "json":
        doc = modelfile.model_to_dict(M, designated, labels)
        if report is not None:
            doc["audit"] = _audit_doc(report, CM)
        _emit(args, json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    elif args.format == "dot":
        _emit(args, modelfile.to_dot(M, designated, "canonical"))
    else:
        out = f"closure: {len(CM.closure)} members, {len(CM.domain)} worlds\n"
        out += modelfile.to_text(M, designated, labels)
        if report is not None:
            out += _audit_text(report)
        _emit(args, out)
    _write_out(args, modelfile.dumps(M, designated, labels))
    if report is not None and not report.ok:
        return EXIT_NO
    return EXIT_OK


def _audit_doc(report, CM) -> dict:
    return {
        "worlds": report.worlds,
        "checked": report.checked,
        "violations": [
            {"world": i, "formula": str(phi), "forced": f, "member": m}
            for (i, phi, f, m) in report.violations
        ],
        "inclusion_differs": [[i, j] for (i, j, _, _) in report.inclusion_differs],
        "inclusion_is_equivalence": report.inclusion_is_equivalence,
    }


def _audit_text(report) -> str:
    out = f"truth lemma: {report.checked} checks over {report.worlds} worlds, {len(report.violations)} violations\n"
    for (i, phi, forced, member) in report.violations:
        out += f"  world {i}: {phi} forced={forced} member={member}\n"
    if report.inclusion_differs:
        pairs = " ".join(f"({i},{j})" for (i, j, _, _) in report.inclusion_differs)
        out += f"unbox inclusion differs from box agreement on: {pairs}\n"
    else:
        out += "unbox inclusion coincides with box agreement\n"
    verdict = "is" if report.inclusion_is_equivalence else "is not"
    out += f"unbox inclusion {verdict} an equivalence on this domain\n"
    return out


def cmd_lindenbaum(args) -> int:
    seed = _ctx(args)
    p = _formula(args, args.formula)
    cl = closure(seed + [p])
    try:
        trace = lindenbaum_extend(seed, cl, full=args.full)
    except InconsistentSeed:
        _emit(args, "inconsistent seed\n")
        return EXIT_NO
    if args.format == "json":
        doc = {
            "seed": [str(q) for q in seed],
            "steps": [
                {"code": s.code, "formula": None if s.formula is None else str(s.formula), "action": s.action}
                for s in trace.steps
            ],
            "result": [str(q) for q in trace.result],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    out = "seed: " + (", ".join(str(q) for q in seed) or "·") + "\n"
    width = max(len(str(s.code)) for s in trace.steps)
    for s in trace.steps:
        shown = "none" if s.formula is None else str(s.formula)
        out += f"code {s.code:>{width}}  {s.action:<13}  {shown}\n"
    out += "result: " + trace.result.label() + "\n"
    _emit(args, out)
    return EXIT_OK


def cmd_code(args) -> int:
    if args.op == "encode":
        _emit(args, f"{encode(_formula(args, args.value))}\n")
        return EXIT_OK
    try:
        n = int(args.value)
    except ValueError:
        raise UsageError(f"decode needs a natural number, got {args.value!r}") from None
    if n < 0:
        raise UsageError("decode needs a natural number")
    p = decode(n, args.sigma)
    _emit(args, ("none" if p is None else pretty(p, sugar=False)) + "\n")
    return EXIT_OK if p is not None else EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
