"""Command-line front end.

Exit codes: 0 tractable / success, 1 input error, 2 NP-hard, 3 outside the
classified setting, 4 unsatisfiable.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__, io
from .boolean import reduce_maxcut, reduce_mis
from .classify import Verdict, classify, verify_report
from .engine import SearchSpaceTooLarge, brute_force_optimum
from .model import ModelError
from .tractable import solve_tractable

EXIT_OK, EXIT_INPUT, EXIT_HARD, EXIT_OUTSIDE, EXIT_UNSAT = 0, 1, 2, 3, 4
VERDICT_EXIT = {Verdict.TRACTABLE: EXIT_OK, Verdict.NP_HARD: EXIT_HARD, Verdict.OUTSIDE_ASSUMPTIONS: EXIT_OUTSIDE}


class InputError(Exception):
    pass


def _emit(doc, out: str | None) -> None:
    text = io.dumps(doc)
    if out:
        io.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _classified(lang_doc, costs_doc):
    lang = io.language_from_dict(lang_doc)
    costs = io.costs_from_dict(costs_doc)
    if costs.size != lang.size:
        raise InputError(f"costs: vectors have length {costs.size}, domain has {lang.size} elements")
    t0 = time.perf_counter()
    report = classify(lang, costs)
    return lang, costs, report, time.perf_counter() - t0


def cmd_classify(args) -> int:
    lang_doc, costs_doc = io.load_file(args.language), io.load_file(args.costs)
    _, _, report, secs = _classified(lang_doc, costs_doc)
    _emit(io.report_to_dict(report, lang_doc, costs_doc, secs), args.output)
    return VERDICT_EXIT[report.verdict]


def _instance_docs(path: Path):
    """The instance document with language and costs resolved to inline form."""
    doc = io.load_file(path)
    if not isinstance(doc, dict):
        raise io.FormatError("instance: expected an object")
    resolved = dict(doc)
    for key in ("language", "costs"):
        val = doc.get(key)
        if isinstance(val, str):
            p = Path(val)
            resolved[key] = io.load_file(p if p.is_absolute() else path.parent / p)
    return resolved


def _solution(inst, result, method: str, seconds: float) -> tuple[dict, int]:
    doc = io.solution_to_dict(inst, result, method)
    doc["seconds"] = round(seconds, 6)
    doc["version"] = __version__
    return doc, EXIT_UNSAT if result is None else EXIT_OK


def cmd_solve(args) -> int:
    doc = _instance_docs(Path(args.instance))
    inst = io.instance_from_dict(doc)
    if args.report:
        rdoc = io.load_file(args.report)
        inputs = rdoc.get("inputs", {}) if isinstance(rdoc, dict) else {}
        if inputs.get("language_sha256") != io.digest(doc["language"]) or \
                inputs.get("costs_sha256") != io.digest(doc["costs"]):
            raise InputError(f"{args.report}: report was produced for a different language or cost set")
        report = io.report_from_dict(rdoc)
        problems = verify_report(inst.language, inst.costs, report)
        if problems:
            raise InputError(f"{args.report}: stale or invalid witness: {problems[0]}")
    else:
        report = classify(inst.language, inst.costs)
    t0 = time.perf_counter()
    if report.verdict is Verdict.TRACTABLE:
        result = solve_tractable(inst, report)
        method = "tractable"
    elif args.oracle:
        result = brute_force_optimum(inst)
        method = "oracle"
    else:
        print(f"language is {report.verdict.value}; pass --oracle for a brute-force solve", file=sys.stderr)
        return VERDICT_EXIT[report.verdict]
    sol, code = _solution(inst, result, method, time.perf_counter() - t0)
    _emit(sol, args.output)
    return code


def cmd_oracle(args) -> int:
    inst = io.load_instance(args.instance)
    t0 = time.perf_counter()
    result = brute_force_optimum(inst)
    sol, code = _solution(inst, result, "oracle", time.perf_counter() - t0)
    _emit(sol, args.output)
    return code


def cmd_gadget(args) -> int:
    n, edges = io.graph_from_dict(io.load_file(args.graph))
    build = reduce_mis if args.kind == "mis" else reduce_maxcut
    _emit(io.instance_to_dict(build(n, edges)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    rdoc = io.load_file(args.report)
    lang_doc, costs_doc = io.load_file(args.language), io.load_file(args.costs)
    inputs = rdoc.get("inputs") if isinstance(rdoc, dict) else None
    if inputs and (inputs.get("language_sha256") != io.digest(lang_doc)
                   or inputs.get("costs_sha256") != io.digest(costs_doc)):
        raise InputError("report digests do not match the given language and costs")
    report = io.report_from_dict(rdoc)
    problems = verify_report(io.language_from_dict(lang_doc), io.costs_from_dict(costs_doc), report)
    for p in problems:
        print(f"invalid: {p}", file=sys.stderr)
    if problems:
        return EXIT_INPUT
    print(f"ok: {report.verdict.name} witness re-verified")
    return VERDICT_EXIT[report.verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minhom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"minhom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide tractability and print a witness report")
    p.add_argument("language")
    p.add_argument("costs")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("solve", help="optimal assignment for an instance over a tractable language")
    p.add_argument("instance")
    p.add_argument("--report", help="saved classification report to reuse")
    p.add_argument("--oracle", action="store_true", help="brute-force languages that are not tractable")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force optimum of a small instance")
    p.add_argument("instance")
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("gadget", help="emit the reduction instance for a graph")
    p.add_argument("kind", choices=("mis", "maxcut"))
    p.add_argument("graph")
    p.set_defaults(run=cmd_gadget)

    p = sub.add_parser("verify", help="re-check a saved report against its inputs")
    p.add_argument("report")
    p.add_argument("language")
    p.add_argument("costs")
    p.set_defaults(run=cmd_verify)

    for name, sp in sub.choices.items():
        if name != "verify":
            sp.add_argument("-o", "--output", help="write the document here (atomically)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (io.FormatError, ModelError, InputError, SearchSpaceTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
