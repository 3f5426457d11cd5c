"""``sdb``: check files, print instances as tables, list full tuples, run the law suite.

Exit codes: 0 ok, 1 semantic failure, 2 syntax error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .checker import check_source
from .errors import SdbSyntaxError
from .gen import GenConfig
from .instance import full_tuples
from .laws import format_report, law_names, run_laws
from .render import format_tuple, render_ascii, render_complex, render_tsv, use_color

__all__ = ["main", "cmd_check", "cmd_show", "cmd_tuples", "cmd_laws"]

OK, FAILURE, SYNTAX, BREACH = 0, 1, 2, 3


def _load(path: str, err):
    """(report, exit code) for a file; the report is None on a syntax error."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        print(f"sdb: cannot read {path}: {e.strerror}", file=err)
        return None, FAILURE
    try:
        report = check_source(text)
    except SdbSyntaxError as e:
        print(f"{path}:{e}", file=err)
        return None, SYNTAX
    if report.breach:
        return report, BREACH
    return report, OK if report.ok else FAILURE


def cmd_check(path: str, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    report, code = _load(path, err)
    if report is not None:
        out.write(report.format())
    return code


def cmd_show(path: str, name: str, fmt: str = "ascii", compact: bool = False, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    report, code = _load(path, err)
    if report is None:
        return code
    env = report.env
    if code != OK:
        for v in report.entries:
            if not v.ok:
                print(v.format(), file=err)
    if name in env.types:
        J = env.types[name].inst
    elif name in env.terms:
        t = env.terms[name].tup
        out.write(format_tuple(t, compact) + "\n")
        return BREACH if code == BREACH else OK
    elif name in env.contexts:
        out.write(render_complex(env.contexts[name].complex))
        return BREACH if code == BREACH else OK
    else:
        print(f"sdb: UnboundName: {name} is not bound in {path}", file=err)
        return FAILURE
    if fmt == "tsv":
        out.write(render_tsv(J, compact))
    else:
        out.write(render_ascii(J, compact, color=use_color(out)))
    return BREACH if code == BREACH else OK


def cmd_tuples(path: str, name: str, compact: bool = False, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    report, code = _load(path, err)
    if report is None:
        return code
    env = report.env
    if name not in env.types:
        print(f"sdb: UnboundName: {name} is not a type in {path}", file=err)
        return FAILURE
    ts = full_tuples(env.types[name].inst)
    for t in ts:
        out.write(format_tuple(t, compact) + "\n")
    out.write(f"{len(ts)} full tuple{'s' if len(ts) != 1 else ''}\n")
    return BREACH if code == BREACH else OK


def cmd_laws(seed: int = 42, cases: int = 1000, laws=None, mutant: str | None = None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    ops = None
    if mutant:
        from .mutants import mutant_ops

        ops = mutant_ops(mutant)
    cfg = GenConfig(seed=seed, cases=cases)
    try:
        results = run_laws(cfg, laws, ops)
    except KeyError as e:
        print(f"sdb: {e.args[0]}; known laws: {', '.join(law_names())}", file=err)
        return FAILURE
    out.write(format_report(cfg, results))
    return OK if all(r.ok for r in results) else FAILURE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdb", description="Simplicial databases: schemas and instances as types.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="elaborate a file and decide its judgements")
    c.add_argument("file")

    s = sub.add_parser("show", help="print a type as per-face tables")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--format", choices=["ascii", "tsv"], default="ascii")
    s.add_argument("--compact", action="store_true", help="print one-entry families by their entry")

    t = sub.add_parser("tuples", help="list the full tuples of a type")
    t.add_argument("file")
    t.add_argument("name")
    t.add_argument("--compact", action="store_true", help="print one-entry families by their entry")

    la = sub.add_parser("laws", help="run the randomized law suite")
    la.add_argument("--seed", type=int, default=42)
    la.add_argument("--cases", type=int, default=1000)
    la.add_argument("--law", action="append", dest="laws", metavar="NAME", help="run only this law (repeatable)")
    la.add_argument("--mutant", help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return cmd_check(args.file)
    if args.command == "show":
        return cmd_show(args.file, args.name, args.format, args.compact)
    if args.command == "tuples":
        return cmd_tuples(args.file, args.name, args.compact)
    if args.cases < 0:
        print("sdb: --cases must be at least 0", file=sys.stderr)
        return FAILURE
    return cmd_laws(args.seed, args.cases, args.laws, args.mutant)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
