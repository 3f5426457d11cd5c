"""Printing syntax trees back to parseable text.

Parentheses are inserted only where the grammar needs them, so for every
tree ``parse(print(tree)) == tree``.
"""

from __future__ import annotations

from . import ast as A

__all__ = [
    "print_ctx",
    "print_type",
    "print_term",
    "print_subst",
    "print_judgement",
    "print_decl",
    "print_file",
    "print_path",
]


# types


def print_type(t) -> str:
    if isinstance(t, A.Plus):
        return f"{print_type(t.left)} + {_tchain(t.right)}"
    return _tchain(t)


def _tchain(t) -> str:
    if isinstance(t, A.SubstType):
        return f"{_tprim(t.ty)}[{print_subst(t.subst)}]"
    if isinstance(t, A.Plus):
        return f"({print_type(t)})"
    return _tprim_bare(t)


def _tprim(t) -> str:
    # operand of a postfix substitution
    if isinstance(t, (A.Plus, A.Pi, A.Sigma, A.IdT)):
        return f"({print_type(t)})"
    return _tchain(t)


def _targ(t) -> str:
    # argument of a prefix former
    if isinstance(t, (A.Plus, A.Pi, A.Sigma, A.IdT)):
        return f"({print_type(t)})"
    return _tchain(t)


def _tprim_bare(t) -> str:
    if isinstance(t, A.NamedType):
        return t.name
    if isinstance(t, A.Zero):
        return "0"
    if isinstance(t, A.One):
        return "1"
    if isinstance(t, A.Pi):
        return f"Pi {_targ(t.dom)} {_targ(t.cod)}"
    if isinstance(t, A.Sigma):
        return f"Sigma {_targ(t.dom)} {_targ(t.cod)}"
    if isinstance(t, A.IdT):
        return f"Id {_targ(t.ty)}"
    raise TypeError(f"not a type expression: {t!r}")


# terms

_ATOMS = {A.Var: "v", A.Star: "*", A.PairC: "pair", A.Refl: "refl", A.Left: "left", A.Right: "right"}


def print_term(t) -> str:
    if isinstance(t, A.Lambda):
        return f"lambda {print_term(t.body)}"
    if isinstance(t, A.Apply):
        return f"apply {print_term(t.fn)}"
    if isinstance(t, (A.Rec, A.RecDeclared)):
        head = f"rec {t.kind}" if isinstance(t, A.Rec) else f"rec {t.name}"
        return " ".join([head] + [_mchain(a) for a in t.args])
    return _mchain(t)


def _mchain(t) -> str:
    if isinstance(t, A.SubstTerm):
        return f"{_mchain(t.term)}[{print_subst(t.subst)}]"
    if isinstance(t, (A.Lambda, A.Apply, A.Rec, A.RecDeclared)):
        return f"({print_term(t)})"
    if isinstance(t, A.NamedTerm):
        return t.name
    if isinstance(t, A.Ascribe):
        return f"({print_term(t.term)} : {print_type(t.ty)})"
    for cls, s in _ATOMS.items():
        if isinstance(t, cls):
            return s
    raise TypeError(f"not a term expression: {t!r}")


# substitutions


def print_subst(s) -> str:
    if isinstance(s, A.Compose):
        return f"{print_subst(s.outer)} o {_sterm(s.inner)}"
    return _sterm(s)


def _sterm(s) -> str:
    if isinstance(s, A.LiftSubst):
        return f"{_sterm(s.subst)}.{_tchain_lift(s.ty)}"
    if isinstance(s, A.Compose):
        return f"({print_subst(s)})"
    if isinstance(s, A.Identity):
        return "id"
    if isinstance(s, A.Project):
        return "down"
    if isinstance(s, A.FaceMap):
        return f"d{s.i}"
    if isinstance(s, A.Eval):
        return f"{_mchain(s.term)}!"
    raise TypeError(f"not a substitution expression: {s!r}")


def _tchain_lift(t) -> str:
    if isinstance(t, (A.Pi, A.Sigma, A.IdT, A.Plus)):
        return f"({print_type(t)})"
    return _tchain(t)


# contexts


def print_ctx(c) -> str:
    if isinstance(c, A.SimplexCtx):
        return f"D {c.n}"
    if isinstance(c, A.NamedCtx):
        return c.name
    if isinstance(c, A.Extend):
        return f"{print_ctx(c.ctx)} . {_tchain_lift(c.ty)}"
    raise TypeError(f"not a context expression: {c!r}")


# judgements and declarations


def _judgement_body(j) -> str:
    if isinstance(j, A.CtxJ):
        return f"{print_ctx(j.ctx)} context"
    if isinstance(j, A.CtxEqJ):
        return f"{print_ctx(j.lhs)} == {print_ctx(j.rhs)}"
    if isinstance(j, A.TypeJ):
        return f"{print_ctx(j.ctx)} |- {print_type(j.ty)} type"
    if isinstance(j, A.TypeEqJ):
        return f"{print_ctx(j.ctx)} |- {print_type(j.lhs)} == {print_type(j.rhs)}"
    if isinstance(j, A.TermJ):
        return f"{print_ctx(j.ctx)} |- {print_term(j.term)} : {print_type(j.ty)}"
    if isinstance(j, A.TermEqJ):
        return f"{print_ctx(j.ctx)} |- {print_term(j.lhs)} == {print_term(j.rhs)} : {print_type(j.ty)}"
    if isinstance(j, A.SubstJ):
        return f"{print_subst(j.subst)} : {print_ctx(j.dom)} -> {print_ctx(j.cod)}"
    if isinstance(j, A.SubstEqJ):
        return f"{print_subst(j.lhs)} == {print_subst(j.rhs)} : {print_ctx(j.dom)} -> {print_ctx(j.cod)}"
    raise TypeError(f"not a judgement: {j!r}")


def print_judgement(j) -> str:
    """``judgement …`` text for a judgement (or a JudgementDecl)."""
    if isinstance(j, A.JudgementDecl):
        j = j.judgement
    return f"judgement {_judgement_body(j)}"


def print_path(path) -> str:
    return ".".join(f"d{i}" for i in path) if path else "id"


def _print_eq(e: A.Equation) -> str:
    return f"eq {e.lhs}[{print_path(e.lhs_path)}] = {e.rhs}[{print_path(e.rhs_path)}]"


def print_decl(d) -> str:
    if isinstance(d, A.SchemaDecl):
        lines = [f"schema {d.name} over D {d.base} {{"]
        lines += [f"  gen {g.name} : {print_path(g.path)}" for g in d.generators]
        lines += [f"  {_print_eq(e)}" for e in d.equations]
        return "\n".join(lines + ["}"])
    if isinstance(d, A.InstanceDecl):
        lines = [f"instance {d.name} of {d.of} {{"]
        lines += [f"  gen {g.name} over {g.over}" for g in d.generators]
        lines += [f"  {_print_eq(e)}" for e in d.equations]
        return "\n".join(lines + ["}"])
    if isinstance(d, A.ContextDecl):
        return f"context {d.name} = {print_ctx(d.ctx)}"
    if isinstance(d, A.QueryDecl):
        body = print_type(d.body) if isinstance(d.body, A.TYPE_NODES) else print_term(d.body)
        return f"query {d.name} = {body}"
    if isinstance(d, A.JudgementDecl):
        return print_judgement(d)
    raise TypeError(f"not a declaration: {d!r}")


def print_file(decls) -> str:
    return "\n".join(print_decl(d) for d in decls) + "\n"
