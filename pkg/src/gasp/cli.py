"""Command-line front end.

Subcommands: models, supported, flp, sflp (enumeration), completion,
convexity, compile, verify. Input is a `.gasp` file or `-` for stdin.
Exit codes: 0 success (an empty enumeration is success), 2 parse or
validation error, 3 atom limit exceeded, 4 a theorem check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .compile import DisjunctiveHead, rew_flp, rew_sflp
from .core import (
    DEFAULT_ATOM_LIMIT,
    Program,
    ReservedAtomError,
    TooManyAtoms,
    TruthTable,
    UnsatisfiableBody,
    format_interpretation,
    is_convex,
)
from .harness import FAIL, CHECK_NAMES, GenConfig, TheoremReport, check_theorems, generate
from .parser import (
    ParseError,
    SourceProgram,
    parse_program,
    render,
    render_body,
    render_rule,
)
from .semantics import (
    SemanticsKind,
    UnknownAtom,
    completion,
    enumerate_interpretations,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_VIOLATION = 4


def _default_limit() -> int:
    env = os.environ.get("GASP_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"GASP_LIMIT must be an integer, not {env!r}") from exc
    return DEFAULT_ATOM_LIMIT


def _read_source(path: str) -> SourceProgram:
    if path == "-":
        return SourceProgram(sys.stdin.read(), "<stdin>")
    with open(path, "r", encoding="utf-8") as handle:
        return SourceProgram(handle.read(), path)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gasp",
        description="FLP and SFLP semantics for programs with generalized atoms",
    )
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, with_json=True):
        p.add_argument("input", help="program file, or - for stdin")
        p.add_argument("--limit", type=int, default=None,
                       help="atom cap for exhaustive operations (default 20, env GASP_LIMIT)")
        if with_json:
            p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    for name in ("models", "supported", "flp", "sflp"):
        common(sub.add_parser(name, help=f"enumerate the {name} of a program"))
    common(sub.add_parser("completion", help="print the completion of a program"))
    common(sub.add_parser("convexity", help="report per-rule and program convexity"))

    comp = sub.add_parser("compile", help="rewrite to an aggregate-free program")
    common(comp, with_json=False)
    comp.add_argument("--semantics", choices=("flp", "sflp"), default="flp")
    comp.add_argument("--rewrite-all", action="store_true",
                      help="also rewrite bodies equivalent to a single literal")
    comp.add_argument("--emit", choices=("text", "json"), default="text")
    comp.add_argument("--json", dest="emit", action="store_const", const="json",
                      help="same as --emit json")

    ver = sub.add_parser("verify", help="run the theorem checks")
    ver.add_argument("input", nargs="?", help="program file, or - for stdin")
    ver.add_argument("--limit", type=int, default=None)
    ver.add_argument("--random", action="store_true", help="check generated programs")
    ver.add_argument("--seeds", type=int, default=200, help="number of random programs")
    ver.add_argument("--atoms", type=int, default=4, help="atoms per random program")
    ver.add_argument("--rules", type=int, default=4, help="rules per random program")
    return top


def _run_enumeration(args, kind: SemanticsKind) -> int:
    program = parse_program(_read_source(args.input), allow_reserved=True)
    limit = args.limit if args.limit is not None else _default_limit()
    found = enumerate_interpretations(program, kind, limit)
    if args.json:
        payload = {
            "semantics": kind.value,
            "atoms": [a.name for a in sorted(program.atoms())],
            "answer_sets": [[a.name for a in sorted(i)] for i in found],
        }
        print(json.dumps(payload))
    else:
        for interpretation in found:
            print(format_interpretation(interpretation))
    return EXIT_OK


def _run_completion(args) -> int:
    program = parse_program(_read_source(args.input), allow_reserved=True)
    limit = args.limit if args.limit is not None else _default_limit()
    completed = completion(program, limit)
    printable = Program(
        r for r in completed.rules
        if not (isinstance(r.body, TruthTable) and not r.body.satisfying)
    )  # a constraint with an unsatisfiable body never fires; it has no dnf form
    if args.json:
        print(json.dumps({"rules": [render_rule(r) for r in printable.rules]}))
    else:
        sys.stdout.write(render(printable))
    return EXIT_OK


def _run_convexity(args) -> int:
    program = parse_program(_read_source(args.input), allow_reserved=True)
    limit = args.limit if args.limit is not None else _default_limit()
    verdicts = [(render_rule(r), is_convex(r.body, limit)) for r in program.rules]
    overall = all(v for _, v in verdicts)
    if args.json:
        print(json.dumps({
            "rules": [{"rule": text, "convex": v} for text, v in verdicts],
            "program_convex": overall,
        }))
    else:
        for i, (text, v) in enumerate(verdicts, start=1):
            print(f"rule {i}: {'convex' if v else 'non-convex'}  {text}")
        print(f"program: {'convex' if overall else 'non-convex'}")
    return EXIT_OK


def _run_compile(args) -> int:
    program = parse_program(_read_source(args.input))
    limit = args.limit if args.limit is not None else _default_limit()
    rewrite = rew_sflp if args.semantics == "sflp" else rew_flp
    rewritten, cmap = rewrite(program, rewrite_all=args.rewrite_all, max_domain=limit)
    if args.emit == "json":
        payload = {
            "semantics": args.semantics,
            "rules": [render_rule(r) for r in rewritten.rules],
            "aux_map": [
                {
                    "body": render_body(canonical),
                    "t": names.t.name,
                    "f": [a.name for a in names.f],
                }
                for canonical, names in cmap.entries.items()
            ],
        }
        print(json.dumps(payload))
    else:
        sys.stdout.write(render(rewritten))
    return EXIT_OK


def _print_report(report: TheoremReport, verbose: bool) -> None:
    for result in report.results:
        print(f"{result.name:<40} {result.status}")
        if result.status == FAIL or verbose:
            for line in result.details:
                print(f"    {line}")


def _run_verify(args) -> int:
    limit = args.limit if args.limit is not None else _default_limit()
    if not args.random:
        if not args.input:
            raise ValueError("verify needs a program file or --random")
        program = parse_program(_read_source(args.input), allow_reserved=True)
        report = check_theorems(program, limit)
        _print_report(report, verbose=False)
        return EXIT_VIOLATION if not report.ok else EXIT_OK
    counts = {name: {"pass": 0, "fail": 0, "skip": 0} for name in CHECK_NAMES}
    failures = []
    for seed in range(args.seeds):
        cfg = GenConfig(
            atom_count=args.atoms,
            rule_count=args.rules,
            allow_disjunctive_heads=(seed % 4 == 3),
            seed=seed,
        )
        report = check_theorems(generate(cfg), limit)
        for result in report.results:
            counts[result.name][result.status] += 1
            if result.status == FAIL:
                failures.append((seed, report.program_text, result))
    print(f"{'check':<40} {'pass':>6} {'fail':>6} {'skip':>6}")
    for name in CHECK_NAMES:
        c = counts[name]
        print(f"{name:<40} {c['pass']:>6} {c['fail']:>6} {c['skip']:>6}")
    for seed, text, result in failures:
        print(f"\nseed {seed}: {result.name} failed")
        sys.stdout.write(text)
        for line in result.details:
            print(f"    {line}")
    print(f"\nresult: {'violations found' if failures else 'ok'} ({args.seeds} programs)")
    return EXIT_VIOLATION if failures else EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command in ("models", "supported", "flp", "sflp"):
            return _run_enumeration(args, SemanticsKind.from_name(args.command))
        if args.command == "completion":
            return _run_completion(args)
        if args.command == "convexity":
            return _run_convexity(args)
        if args.command == "compile":
            return _run_compile(args)
        return _run_verify(args)
    except TooManyAtoms as exc:
        print(f"gasp: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, ReservedAtomError, DisjunctiveHead, UnknownAtom,
            UnsatisfiableBody, ValueError, OSError) as exc:
        print(f"gasp: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
