"""Deciding judgements and checking whole files.

Formation judgements hold when elaboration succeeds with the stated
contexts. Equality judgements hold when both sides elaborate to exactly the
same model value: instances with the same rows, full tuples with the same
choices, morphisms with the same vertex maps, complexes with the same faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..complex import format_face
from ..errors import InternalBreach, SdbError
from ..surface import ast as A
from ..surface import parse, print_judgement
from ..values import format_value, format_vertex
from .elaborate import Elaborator, Environment

__all__ = ["Verdict", "CheckReport", "check_judgement", "check_declaration", "check_source", "check_file"]

HEADER = (
    "# equality judgements are decided by exact comparison in the finite model:\n"
    "# every derivable equality holds there, but an equality that holds need not be derivable"
)

HOLDS, FAILS, ILL_FORMED, DECLARED, BREACH = "holds", "fails", "ill-formed", "declared", "internal-error"


@dataclass
class Verdict:
    label: str
    kind: str
    status: str
    message: str = ""
    witness: str | None = None
    pos: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status in (HOLDS, DECLARED)

    def format(self) -> str:
        where = f"{self.pos[0]}:{self.pos[1]} " if self.pos else ""
        line = f"{where}{self.label}: {self.status}"
        if self.message:
            line += f" ({self.message})"
        if self.witness:
            line += f"\n    witness: {self.witness}"
        return line


@dataclass
class CheckReport:
    entries: list[Verdict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    env: Environment | None = field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.entries)

    @property
    def breach(self) -> bool:
        return any(v.status == BREACH for v in self.entries)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.entries:
            out[v.status] = out.get(v.status, 0) + 1
        return out

    def format(self) -> str:
        lines = [HEADER]
        lines += [v.format() for v in self.entries]
        lines += [f"note: {n}" for n in self.notes]
        c = self.counts()
        summary = ", ".join(f"{c[k]} {k}" for k in (DECLARED, HOLDS, FAILS, ILL_FORMED, BREACH) if k in c)
        lines.append(f"summary: {summary or 'empty'}")
        return "\n".join(lines) + "\n"


# witnesses


def _rows(rs) -> str:
    return "{" + ", ".join(format_value(r) for r in sorted(rs)) + "}"


def _plural(n: int) -> str:
    return f"{n} row" if n == 1 else f"{n} rows"


def type_witness(lhs, rhs) -> str:
    """The first face whose row counts differ, else the first face whose rows differ."""
    if lhs.base != rhs.base:
        return "the two sides live over different contexts"
    for f in lhs.base.faces:
        if len(lhs.rows[f]) != len(rhs.rows[f]):
            a, b = lhs.rows[f], rhs.rows[f]
            break
    else:
        f, a, b = lhs.first_difference(rhs)
    return f"face {format_face(f)}: {_plural(len(a))} vs {_plural(len(b))}; {_rows(a)} vs {_rows(b)}"


def term_witness(lhs, rhs) -> str:
    if lhs.instance != rhs.instance:
        return "the two sides have different types"
    for v in lhs.base.vertices:
        if lhs.choice[v] != rhs.choice[v]:
            return f"attribute {format_vertex(v)}: {format_value(lhs.choice[v])} vs {format_value(rhs.choice[v])}"
    return "no difference found"


def subst_witness(lhs, rhs) -> str:
    for v in lhs.src.vertices:
        if lhs.mapping[v] != rhs.mapping[v]:
            return f"vertex {format_vertex(v)} goes to {format_vertex(lhs.mapping[v])} vs {format_vertex(rhs.mapping[v])}"
    return "no difference found"


def ctx_witness(lhs, rhs) -> str:
    only_l = [f for f in lhs.faces if f not in rhs]
    only_r = [f for f in rhs.faces if f not in lhs]
    parts = []
    if only_l:
        parts.append("only left: " + ", ".join(format_face(f) for f in only_l[:5]))
    if only_r:
        parts.append("only right: " + ", ".join(format_face(f) for f in only_r[:5]))
    return "; ".join(parts) or "no difference found"


# judgements


def _decide(j, el: Elaborator) -> tuple[str, str, str | None]:
    """(status, message, witness) of a judgement; raises SdbError when ill-formed."""
    if isinstance(j, A.CtxJ):
        el.ctx(j.ctx)
        return HOLDS, "", None
    if isinstance(j, A.CtxEqJ):
        a, b = el.ctx(j.lhs), el.ctx(j.rhs)
        if a == b:
            return HOLDS, "", None
        return FAILS, "the contexts differ", ctx_witness(a.complex, b.complex)
    if isinstance(j, A.TypeJ):
        el.type(j.ty, el.ctx(j.ctx))
        return HOLDS, "", None
    if isinstance(j, A.TypeEqJ):
        c = el.ctx(j.ctx)
        a, b = el.type(j.lhs, c), el.type(j.rhs, c)
        if a.inst == b.inst:
            return HOLDS, "", None
        return FAILS, "the types differ", type_witness(a.inst, b.inst)
    if isinstance(j, A.TermJ):
        c = el.ctx(j.ctx)
        el.term(j.term, c, el.type(j.ty, c))
        return HOLDS, "", None
    if isinstance(j, A.TermEqJ):
        c = el.ctx(j.ctx)
        ty = el.type(j.ty, c)
        a, b = el.term(j.lhs, c, ty), el.term(j.rhs, c, ty)
        if a.tup == b.tup:
            return HOLDS, "", None
        return FAILS, "the terms differ", term_witness(a.tup, b.tup)
    if isinstance(j, A.SubstJ):
        el.subst(j.subst, el.ctx(j.dom), el.ctx(j.cod))
        return HOLDS, "", None
    if isinstance(j, A.SubstEqJ):
        d, c = el.ctx(j.dom), el.ctx(j.cod)
        a, b = el.subst(j.lhs, d, c), el.subst(j.rhs, d, c)
        if a.morph == b.morph:
            return HOLDS, "", None
        return FAILS, "the substitutions differ", subst_witness(a.morph, b.morph)
    raise TypeError(f"not a judgement: {j!r}")


def _error_message(err: SdbError) -> str:
    pos = getattr(err, "pos", None)
    where = f" at {pos[0]}:{pos[1]}" if pos else ""
    return f"{type(err).__name__}: {err}{where}"


def check_judgement(j, env: Environment, pos=None) -> CheckReport:
    """Decide one judgement against a frozen environment; errors become verdicts."""
    if isinstance(j, A.JudgementDecl):
        pos = pos or j.pos
        j = j.judgement
    pos = pos or getattr(j, "pos", None)
    label = print_judgement(j)
    try:
        status, message, witness = _decide(j, Elaborator(env))
    except InternalBreach as err:
        status, message, witness = BREACH, _error_message(err), None
    except SdbError as err:
        status, message, witness = ILL_FORMED, _error_message(err), None
    return CheckReport([Verdict(label, "judgement", status, message, witness, pos)])


def _as_term_chain(t):
    """Read a chain NAME[σ]…[τ] parsed as a type as the same chain of terms."""
    if isinstance(t, A.NamedType):
        return A.NamedTerm(t.name, pos=t.pos)
    if isinstance(t, A.SubstType):
        inner = _as_term_chain(t.ty)
        return None if inner is None else A.SubstTerm(inner, t.subst, pos=t.pos)
    return None


def _head_name(t):
    while isinstance(t, A.SubstType):
        t = t.ty
    return t.name if isinstance(t, A.NamedType) else None


def check_declaration(d, env: Environment) -> CheckReport:
    """Elaborate one declaration into env (or decide it, for judgements)."""
    if isinstance(d, A.JudgementDecl):
        return check_judgement(d, env)
    kind = type(d).__name__.replace("Decl", "").lower()
    label = f"{kind} {d.name}"
    el = Elaborator(env)
    notes: list[str] = []
    try:
        if isinstance(d, (A.SchemaDecl, A.InstanceDecl)):
            before = len(env.notes)
            env.declare(d)
            notes = env.notes[before:]
        elif isinstance(d, A.ContextDecl):
            env.bind_context(d.name, el.ctx(d.ctx), d.pos)
        elif isinstance(d, A.QueryDecl):
            body = d.body
            if isinstance(body, A.TYPE_NODES) and _head_name(body) in env.terms:
                body = _as_term_chain(body) or body
            if isinstance(body, A.TYPE_NODES):
                env.bind_type(d.name, el.type(body), d.pos)
            else:
                env.bind_term(d.name, el.term(body), d.pos)
        else:
            raise TypeError(f"not a declaration: {d!r}")
        v = Verdict(label, kind, DECLARED, pos=d.pos)
    except InternalBreach as err:
        v = Verdict(label, kind, BREACH, _error_message(err), pos=d.pos)
    except SdbError as err:
        v = Verdict(label, kind, ILL_FORMED, _error_message(err), pos=d.pos)
    return CheckReport([v], notes)


def check_source(text: str) -> CheckReport:
    """Parse and check a whole file; syntax errors propagate as SdbSyntaxError."""
    decls = parse(text)
    env = Environment()
    report = CheckReport(env=env)
    for d in decls:
        r = check_declaration(d, env)
        report.entries += r.entries
        report.notes += r.notes
    return report


def check_file(path) -> CheckReport:
    return check_source(Path(path).read_text(encoding="utf-8"))
