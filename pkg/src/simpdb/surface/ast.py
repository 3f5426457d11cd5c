"""Syntax trees for contexts, substitutions, types, terms, declarations and judgements.

Every node carries a source position ``pos`` (line, column) that is excluded
from equality, so a parsed tree equals the tree parsed from its printout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

Pos = Optional[Tuple[int, int]]


def _pos():
    return field(default=None, compare=False, repr=False)


# contexts


@dataclass(frozen=True)
class SimplexCtx:
    n: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Extend:
    ctx: "CtxExpr"
    ty: "TypeExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class NamedCtx:
    name: str
    pos: Pos = _pos()


CtxExpr = Union[SimplexCtx, Extend, NamedCtx]


# substitutions


@dataclass(frozen=True)
class Identity:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Compose:
    """``outer o inner``: apply inner first."""

    outer: "SubstExpr"
    inner: "SubstExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class FaceMap:
    """``d<i>``; the dimension is fixed by the surrounding expression."""

    i: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Project:
    """``down``, the projection out of an extended context."""

    pos: Pos = _pos()


@dataclass(frozen=True)
class Eval:
    """``t!``, the section determined by a term."""

    term: "TermExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class LiftSubst:
    """``σ.A``."""

    subst: "SubstExpr"
    ty: "TypeExpr"
    pos: Pos = _pos()


SubstExpr = Union[Identity, Compose, FaceMap, Project, Eval, LiftSubst]


# types


@dataclass(frozen=True)
class NamedType:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class SubstType:
    ty: "TypeExpr"
    subst: SubstExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Pi:
    dom: "TypeExpr"
    cod: "TypeExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Sigma:
    dom: "TypeExpr"
    cod: "TypeExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class IdT:
    ty: "TypeExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Plus:
    left: "TypeExpr"
    right: "TypeExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Zero:
    pos: Pos = _pos()


@dataclass(frozen=True)
class One:
    pos: Pos = _pos()


TypeExpr = Union[NamedType, SubstType, Pi, Sigma, IdT, Plus, Zero, One]


# terms


@dataclass(frozen=True)
class NamedTerm:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Var:
    pos: Pos = _pos()


@dataclass(frozen=True)
class SubstTerm:
    term: "TermExpr"
    subst: SubstExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lambda:
    body: "TermExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Apply:
    fn: "TermExpr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class PairC:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Refl:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Left:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Right:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Star:
    pos: Pos = _pos()


REC_KINDS = ("zero", "one", "sigma", "id", "plus")


@dataclass(frozen=True)
class Rec:
    kind: str
    args: Tuple["TermExpr", ...] = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class RecDeclared:
    name: str
    args: Tuple["TermExpr", ...] = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class Ascribe:
    """``(t : A)``: check t against A."""

    term: "TermExpr"
    ty: TypeExpr
    pos: Pos = _pos()


TermExpr = Union[NamedTerm, Var, SubstTerm, Lambda, Apply, PairC, Refl, Left, Right, Star, Rec, RecDeclared, Ascribe]


# declarations


@dataclass(frozen=True)
class Generator:
    """``gen NAME : path`` (schemas) or ``gen NAME over GEN`` (instances)."""

    name: str
    path: Optional[Tuple[int, ...]] = None
    over: Optional[str] = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class Equation:
    """``eq g[path] = h[path]``; an empty path is ``id``."""

    lhs: str
    lhs_path: Tuple[int, ...]
    rhs: str
    rhs_path: Tuple[int, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class SchemaDecl:
    name: str
    base: int
    generators: Tuple[Generator, ...] = ()
    equations: Tuple[Equation, ...] = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class InstanceDecl:
    name: str
    of: str
    generators: Tuple[Generator, ...] = ()
    equations: Tuple[Equation, ...] = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class ContextDecl:
    name: str
    ctx: CtxExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class QueryDecl:
    name: str
    body: Union[TypeExpr, TermExpr]
    pos: Pos = _pos()


# the eight judgement forms


@dataclass(frozen=True)
class CtxJ:
    ctx: CtxExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class TypeJ:
    ctx: CtxExpr
    ty: TypeExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class TermJ:
    ctx: CtxExpr
    term: TermExpr
    ty: TypeExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class SubstJ:
    subst: SubstExpr
    dom: CtxExpr
    cod: CtxExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class CtxEqJ:
    lhs: CtxExpr
    rhs: CtxExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class TypeEqJ:
    ctx: CtxExpr
    lhs: TypeExpr
    rhs: TypeExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class TermEqJ:
    ctx: CtxExpr
    lhs: TermExpr
    rhs: TermExpr
    ty: TypeExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class SubstEqJ:
    lhs: SubstExpr
    rhs: SubstExpr
    dom: CtxExpr
    cod: CtxExpr
    pos: Pos = _pos()


Judgement = Union[CtxJ, TypeJ, TermJ, SubstJ, CtxEqJ, TypeEqJ, TermEqJ, SubstEqJ]


@dataclass(frozen=True)
class JudgementDecl:
    judgement: Judgement
    pos: Pos = _pos()


Declaration = Union[SchemaDecl, InstanceDecl, ContextDecl, QueryDecl, JudgementDecl]

TYPE_NODES = (NamedType, SubstType, Pi, Sigma, IdT, Plus, Zero, One)
TERM_NODES = (NamedTerm, Var, SubstTerm, Lambda, Apply, PairC, Refl, Left, Right, Star, Rec, RecDeclared, Ascribe)
SUBST_NODES = (Identity, Compose, FaceMap, Project, Eval, LiftSubst)
CTX_NODES = (SimplexCtx, Extend, NamedCtx)
