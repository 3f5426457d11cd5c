"""Bidirectional elaboration of surface expressions into the model.

Types and terms are elaborated against an optional expected context (and,
for terms, an optional expected type); substitutions against an optional
domain and codomain. Whatever can be inferred is inferred, the rest flows
in from the surrounding expression, and a CannotInfer error is raised when
neither side determines the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import IndexOutOfRange
from ..complex import compose, face_map, identity, simplex_dim
from ..errors import (
    CannotInfer,
    ContextMismatch,
    DuplicateName,
    ElaborationError,
    InternalBreach,
    TypeMismatch,
    UnboundName,
)
from ..instance import (
    FullTuple,
    elements,
    generic_element,
    initial,
    lift,
    section,
    subst_tuple,
    substitute,
    terminal,
)
from ..semantics import (
    apply_tuple,
    elimination_maps,
    eliminate,
    eliminate_declared,
    glue_instance,
    identity_type,
    lambda_tuple,
    left_tuple,
    pair_tuple,
    pi,
    plus,
    refl_tuple,
    right_tuple,
    sigma,
    star_tuple,
)
from ..surface import ast as A
from .generate import DeclaredType, generate_instance
from .model import Ctx, SemSubst, SemTerm, SemType

__all__ = ["Environment", "Elaborator", "elaborate", "InternalBreach"]


@dataclass
class Environment:
    """Everything bound by the declarations of a file; names are never shadowed."""

    contexts: dict[str, Ctx] = field(default_factory=dict)
    types: dict[str, SemType] = field(default_factory=dict)
    terms: dict[str, SemTerm] = field(default_factory=dict)
    decls: dict[str, DeclaredType] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def bound(self, name: str) -> bool:
        return name in self.contexts or name in self.types or name in self.terms

    def _claim(self, name: str, pos=None):
        if self.bound(name):
            err = DuplicateName(f"{name} is already bound")
            err.pos = pos
            raise err

    def bind_context(self, name, ctx, pos=None):
        self._claim(name, pos)
        self.contexts[name] = ctx

    def bind_type(self, name, ty, pos=None):
        self._claim(name, pos)
        self.types[name] = ty

    def bind_term(self, name, tm, pos=None):
        self._claim(name, pos)
        self.terms[name] = tm

    def declare(self, decl) -> DeclaredType:
        """Generate a schema or instance declaration and bind it with its generators."""
        self._claim(decl.name, decl.pos)
        for g in decl.generators:
            if self.bound(g.name) or g.name == decl.name:
                err = DuplicateName(f"{g.name} is already bound")
                err.pos = g.pos
                raise err
        d = generate_instance(decl, self)
        self.decls[d.name] = d
        self.types[d.name] = d.semtype
        for g in d.generators:
            dk = Ctx.simplex(g.k)
            sub = SemSubst(dk, d.ctx, g.classifier)
            ty = SemType(dk, g.term.instance, ("subst", d.semtype, sub))
            self.terms[g.name] = SemTerm(dk, ty, g.term)
        self.notes.extend(d.notes)
        return d

    # the shapes asked for by the specification of the module API

    @property
    def complexes(self) -> dict:
        return {k: c.complex for k, c in self.contexts.items()}

    @property
    def signatures(self) -> dict:
        return {k: [g.name for g in d.generators] for k, d in self.decls.items()}


def _at(err: ElaborationError, node):
    if getattr(err, "pos", None) is None:
        err.pos = getattr(node, "pos", None)
    return err


def _ext(parent: Ctx, ty: SemType) -> Ctx:
    return Ctx.ext(parent, ty)


def _weaken(ty: SemType, ctx: Ctx) -> SemType:
    """A[↓] over ctx = Γ.B for A over Γ."""
    p = elements(ctx.parent.complex, ctx.ty.inst)[1]
    return SemType(ctx, substitute(ty.inst, p), ("subst", ty, SemSubst(ctx, ctx.parent, p)))


def _resolve(ty: SemType, former: str):
    """ty itself when it was built by ``former``."""
    return ty if ty.shape[0] == former else None


def _behind_subst(ty: SemType, former: str):
    """The type built by ``former`` that ty is a substitution instance of, if any."""
    while ty.shape[0] == "subst":
        ty = ty.shape[1]
    return ty if ty.shape[0] == former else None


class Elaborator:
    def __init__(self, env: Environment):
        self.env = env

    # contexts

    def ctx(self, e) -> Ctx:
        try:
            if isinstance(e, A.SimplexCtx):
                return Ctx.simplex(e.n)
            if isinstance(e, A.NamedCtx):
                if e.name in self.env.contexts:
                    return self.env.contexts[e.name]
                raise UnboundName(f"{e.name} is not a context")
            if isinstance(e, A.Extend):
                parent = self.ctx(e.ctx)
                return _ext(parent, self.type(e.ty, parent))
        except ElaborationError as err:
            raise _at(err, e)
        raise TypeError(f"not a context expression: {e!r}")

    def _check_ctx(self, got: Ctx, want: Ctx | None, node, what="expression"):
        if want is not None and got != want:
            raise _at(ContextMismatch(f"{what} lives over {got.describe()}, expected {want.describe()}"), node)

    # types

    def type(self, e, ctx: Ctx | None = None) -> SemType:
        try:
            out = self._type(e, ctx)
        except ElaborationError as err:
            raise _at(err, e)
        self._check_ctx(out.ctx, ctx, e, "type")
        return out

    def _type(self, e, ctx):
        if isinstance(e, A.NamedType):
            if e.name in self.env.types:
                return self.env.types[e.name]
            if e.name in self.env.terms:
                raise TypeMismatch(f"{e.name} is a term, not a type")
            raise UnboundName(f"unbound type {e.name}")
        if isinstance(e, A.SubstType):
            inner = self._try_type(e.ty)
            if inner is not None:
                s = self.subst(e.subst, dom=ctx, cod=inner.ctx)
            else:
                s = self.subst(e.subst, dom=ctx)
                inner = self.type(e.ty, s.dst)
            return SemType(s.src, substitute(inner.inst, s.morph), ("subst", inner, s))
        if isinstance(e, (A.Pi, A.Sigma)):
            a, b = self._dependent_pair(e.dom, e.cod, ctx)
            X = a.ctx.complex
            if isinstance(e, A.Pi):
                return SemType(a.ctx, pi(X, a.inst, b.inst), ("pi", a, b))
            return SemType(a.ctx, sigma(X, a.inst, b.inst), ("sigma", a, b))
        if isinstance(e, A.IdT):
            base = None
            if ctx is not None:
                if not (ctx.is_ext and ctx.parent.is_ext):
                    raise ContextMismatch(f"an identity type lives over Γ.A.A[↓], not {ctx.describe()}")
                base = ctx.parent.parent
            a = self.type(e.ty, base)
            return self.identity(a)
        if isinstance(e, A.Plus):
            left = self._try_type(e.left, ctx)
            if left is None:
                right = self.type(e.right, ctx)
                left = self.type(e.left, right.ctx)
            else:
                right = self.type(e.right, left.ctx)
            return SemType(left.ctx, plus(left.ctx.complex, left.inst, right.inst), ("plus", left, right))
        if isinstance(e, (A.Zero, A.One)):
            if ctx is None:
                raise CannotInfer(f"the context of {'0' if isinstance(e, A.Zero) else '1'} cannot be inferred here")
            X = ctx.complex
            if isinstance(e, A.Zero):
                return SemType(ctx, initial(X), ("zero",))
            return SemType(ctx, terminal(X), ("one",))
        raise TypeError(f"not a type expression: {e!r}")

    def _try_type(self, e, ctx=None):
        try:
            return self.type(e, ctx)
        except CannotInfer:
            return None

    def _dependent_pair(self, dom, cod, ctx):
        a = self._try_type(dom, ctx)
        if a is not None:
            return a, self.type(cod, _ext(a.ctx, a))
        b = self.type(cod)
        if not b.ctx.is_ext:
            raise ContextMismatch(f"the family of a dependent type must live over an extended context")
        a = self.type(dom, b.ctx.parent)
        self._check_ctx(b.ctx, _ext(a.ctx, a), cod, "family")
        return a, b

    def identity(self, a: SemType) -> SemType:
        ga = _ext(a.ctx, a)
        gaa = _ext(ga, _weaken(a, ga))
        return SemType(gaa, identity_type(a.ctx.complex, a.inst), ("id", a))

    # substitutions

    def subst(self, e, dom: Ctx | None = None, cod: Ctx | None = None) -> SemSubst:
        try:
            out = self._subst(e, dom, cod)
        except ElaborationError as err:
            raise _at(err, e)
        except IndexOutOfRange as err:
            raise _at(ElaborationError(str(err)), e) from None
        self._check_ctx(out.src, dom, e, "substitution domain")
        self._check_ctx(out.dst, cod, e, "substitution codomain")
        if not out.morph.display:
            raise InternalBreach(f"elaborated substitution is not display at {getattr(e, 'pos', None)}")
        return out

    def _subst(self, e, dom, cod):
        if isinstance(e, A.Identity):
            c = dom if dom is not None else cod
            if c is None:
                raise CannotInfer("the context of id cannot be inferred here")
            return SemSubst(c, c, identity(c.complex))
        if isinstance(e, A.Project):
            if dom is None:
                raise CannotInfer("the domain of down cannot be inferred here")
            if not dom.is_ext:
                raise ContextMismatch(f"down needs an extended context, got {dom.describe()}")
            return SemSubst(dom, dom.parent, elements(dom.parent.complex, dom.ty.inst)[1])
        if isinstance(e, A.FaceMap):
            if dom is not None:
                n = simplex_dim(dom.complex)
                if n is None:
                    raise ContextMismatch(f"d{e.i} starts at a simplex, not {dom.describe()}")
            elif cod is not None:
                m = simplex_dim(cod.complex)
                if m is None or m == 0:
                    raise ContextMismatch(f"d{e.i} ends at a simplex of positive dimension, not {cod.describe()}")
                n = m - 1
            else:
                raise CannotInfer(f"the dimension of d{e.i} cannot be inferred here")
            f = face_map(n, e.i)
            return SemSubst(Ctx.simplex(n), Ctx.simplex(n + 1), f)
        if isinstance(e, A.Eval):
            t = self.term(e.term, dom)
            return SemSubst(t.ctx, _ext(t.ctx, t.ty), section(t.tup))
        if isinstance(e, A.LiftSubst):
            a = self._try_type(e.ty)
            inner_dom = dom.parent if dom is not None and dom.is_ext else None
            if a is not None:
                s = self.subst(e.subst, dom=inner_dom, cod=a.ctx)
            else:
                inner_cod = cod.parent if cod is not None and cod.is_ext else None
                s = self.subst(e.subst, dom=inner_dom, cod=inner_cod)
                a = self.type(e.ty, s.dst)
            a_s = SemType(s.src, substitute(a.inst, s.morph), ("subst", a, s))
            return SemSubst(_ext(s.src, a_s), _ext(a.ctx, a), lift(s.morph, a.inst))
        if isinstance(e, A.Compose):
            try:
                inner = self.subst(e.inner, dom=dom)
                outer = self.subst(e.outer, dom=inner.dst, cod=cod)
            except CannotInfer:
                outer = self.subst(e.outer, cod=cod)
                inner = self.subst(e.inner, dom=dom, cod=outer.src)
            return SemSubst(inner.src, outer.dst, compose(outer.morph, inner.morph))
        raise TypeError(f"not a substitution expression: {e!r}")

    # terms

    def term(self, e, ctx: Ctx | None = None, expected: SemType | None = None) -> SemTerm:
        if ctx is None and expected is not None:
            ctx = expected.ctx
        try:
            out = self._term(e, ctx, expected)
        except ElaborationError as err:
            raise _at(err, e)
        self._check_ctx(out.ctx, ctx, e, "term")
        if expected is not None:
            if out.ty.inst != expected.inst:
                raise _at(
                    TypeMismatch(f"term has type {out.ty.describe()}, expected {expected.describe()}"), e
                )
            out = SemTerm(out.ctx, expected, FullTuple(expected.inst, out.tup.choice))
        return out

    def _need_ext(self, ctx, what, depth=1):
        if ctx is None:
            raise CannotInfer(f"the context of {what} cannot be inferred here")
        c = ctx
        for _ in range(depth):
            if not c.is_ext:
                raise ContextMismatch(f"{what} needs an extended context, got {ctx.describe()}")
            c = c.parent
        return ctx

    def _term(self, e, ctx, expected):
        env = self.env
        if isinstance(e, A.NamedTerm):
            if e.name in env.terms:
                return env.terms[e.name]
            if e.name in env.types:
                raise TypeMismatch(f"{e.name} is a type, not a term")
            raise UnboundName(f"unbound term {e.name}")
        if isinstance(e, A.Var):
            c = self._need_ext(ctx, "v")
            ty = _weaken(c.ty, c)
            return SemTerm(c, ty, generic_element(c.parent.complex, c.ty.inst))
        if isinstance(e, A.SubstTerm):
            inner = self._try_term(e.term)
            if inner is not None:
                s = self.subst(e.subst, dom=ctx, cod=inner.ctx)
            else:
                s = self.subst(e.subst, dom=ctx)
                inner = self.term(e.term, s.dst)
            ty = SemType(s.src, substitute(inner.ty.inst, s.morph), ("subst", inner.ty, s))
            return SemTerm(s.src, ty, subst_tuple(inner.tup, s.morph))
        if isinstance(e, A.Lambda):
            shape = _resolve(expected, "pi") if expected is not None else None
            if shape is not None:
                a, b_ty = shape.shape[1], shape.shape[2]
                body = self.term(e.body, _ext(a.ctx, a), b_ty)
            else:
                body = self.term(e.body)
                if not body.ctx.is_ext:
                    raise ContextMismatch("the body of lambda must live over an extended context")
            gamma, a = body.ctx.parent, body.ctx.ty
            X = gamma.complex
            ty = SemType(gamma, pi(X, a.inst, body.ty.inst), ("pi", a, body.ty))
            return SemTerm(gamma, ty, lambda_tuple(X, a.inst, body.ty.inst, body.tup))
        if isinstance(e, A.Apply):
            inner_ctx = None
            if ctx is not None:
                self._need_ext(ctx, "apply")
                inner_ctx = ctx.parent
            f = self.term(e.fn, inner_ctx)
            shape = _resolve(f.ty, "pi")
            if shape is None:
                raise TypeMismatch(f"apply needs a term of a Pi-type, got {f.ty.describe()}")
            a, b = shape.shape[1], shape.shape[2]
            X = a.ctx.complex
            return SemTerm(b.ctx, b, apply_tuple(X, a.inst, b.inst, FullTuple(shape.inst, f.tup.choice)))
        if isinstance(e, A.PairC):
            c = self._need_ext(ctx, "pair", depth=2)
            gamma, a, b = c.parent.parent, c.parent.ty, c.ty
            X = gamma.complex
            s_ty = SemType(gamma, sigma(X, a.inst, b.inst), ("sigma", a, b))
            ty = _weaken(_weaken(s_ty, c.parent), c)
            return SemTerm(c, ty, pair_tuple(X, a.inst, b.inst))
        if isinstance(e, A.Refl):
            c = self._need_ext(ctx, "refl")
            gamma, a = c.parent, c.ty
            id_ty = self.identity(a)
            v = generic_element(gamma.complex, a.inst)
            ev = SemSubst(c, id_ty.ctx.parent, section(v))
            ty = SemType(c, substitute(id_ty.inst, ev.morph), ("subst", id_ty, ev))
            return SemTerm(c, ty, refl_tuple(gamma.complex, a.inst))
        if isinstance(e, (A.Left, A.Right)):
            word = "left" if isinstance(e, A.Left) else "right"
            c = self._need_ext(ctx, word)
            target = _behind_subst(expected, "plus") if expected is not None else None
            if target is None:
                raise CannotInfer(f"{word} needs an expected type of the form (A + B)[down]")
            a, b = target.shape[1], target.shape[2]
            gamma = c.parent
            self._check_ctx(target.ctx, gamma, e, "sum type")
            X = gamma.complex
            if word == "left":
                if c.ty.inst != a.inst:
                    raise TypeMismatch("left lives over Γ.A for the left summand A")
                tup = left_tuple(X, a.inst, b.inst)
            else:
                if c.ty.inst != b.inst:
                    raise TypeMismatch("right lives over Γ.B for the right summand B")
                tup = right_tuple(X, a.inst, b.inst)
            ty = _weaken(target, c)
            return SemTerm(c, ty, tup)
        if isinstance(e, A.Star):
            if ctx is None:
                raise CannotInfer("the context of * cannot be inferred here")
            return SemTerm(ctx, SemType(ctx, terminal(ctx.complex), ("one",)), star_tuple(ctx.complex))
        if isinstance(e, A.Rec):
            return self._rec(e, ctx, expected)
        if isinstance(e, A.RecDeclared):
            return self._rec_declared(e, ctx, expected)
        if isinstance(e, A.Ascribe):
            ty = self.type(e.ty, ctx)
            return self.term(e.term, ty.ctx, ty)
        raise TypeError(f"not a term expression: {e!r}")

    def _try_term(self, e, ctx=None):
        try:
            return self.term(e, ctx)
        except CannotInfer:
            return None

    def _rec(self, e, ctx, expected):
        kind = e.kind
        arity = {"zero": 0, "one": 1, "sigma": 1, "id": 1, "plus": 2}[kind]
        if len(e.args) != arity:
            raise TypeMismatch(f"rec {kind} takes {arity} component(s), got {len(e.args)}")
        comp_ctx = self._component_contexts(kind, ctx)
        comps = [self.term(a, comp_ctx[i] if comp_ctx else None) for i, a in enumerate(e.args)]
        # recover Γ and the eliminated type(s)
        if kind == "zero":
            if ctx is None or not ctx.is_ext:
                raise CannotInfer("rec zero needs its context Γ.0")
            gamma, types = ctx.parent, []
            ext_ty = ctx.ty
            if ext_ty.inst != initial(gamma.complex):
                raise TypeMismatch("rec zero eliminates the empty type")
        elif kind == "one":
            gamma, types = comps[0].ctx, []
            ext_ty = SemType(gamma, terminal(gamma.complex), ("one",))
        elif kind == "sigma":
            c = comps[0].ctx
            if not (c.is_ext and c.parent.is_ext):
                raise ContextMismatch("the component of rec sigma lives over Γ.A.B")
            gamma, a, b = c.parent.parent, c.parent.ty, c.ty
            types = [a.inst, b.inst]
            ext_ty = SemType(gamma, sigma(gamma.complex, a.inst, b.inst), ("sigma", a, b))
        elif kind == "id":
            c = comps[0].ctx
            if not c.is_ext:
                raise ContextMismatch("the component of rec id lives over Γ.A")
            gamma, a = c.parent, c.ty
            types = [a.inst]
            ext_ty = self.identity(a)
        else:
            c0, c1 = comps[0].ctx, comps[1].ctx
            if not (c0.is_ext and c1.is_ext) or c0.parent != c1.parent:
                raise ContextMismatch("the components of rec plus live over Γ.A and Γ.B")
            gamma = c0.parent
            a, b = c0.ty, c1.ty
            types = [a.inst, b.inst]
            ext_ty = SemType(gamma, plus(gamma.complex, a.inst, b.inst), ("plus", a, b))
        motive_ctx = _ext(ext_ty.ctx, ext_ty)
        if ctx is not None and motive_ctx != ctx:
            raise ContextMismatch(f"rec {kind} lives over {motive_ctx.describe()}, expected {ctx.describe()}")
        Y, maps = elimination_maps(kind, gamma.complex, types)
        if expected is not None:
            motive = expected
        else:
            C = glue_instance(Y, [(m, t.ty.inst) for m, t in zip(maps, comps)]) if maps else initial(Y)
            motive = SemType(motive_ctx, C, ("glued",))
        tup = eliminate(kind, gamma.complex, types, motive.inst, [t.tup for t in comps])
        return SemTerm(motive_ctx, motive, tup)

    def _component_contexts(self, kind, ctx):
        """Contexts of the components of rec, read off the motive's context when it is known."""
        if ctx is None or not ctx.is_ext:
            return None
        t = ctx.ty
        if kind == "sigma" and t.former == "sigma":
            a, b = t.shape[1], t.shape[2]
            ga = _ext(ctx.parent, a)
            return [_ext(ga, b)]
        if kind == "plus" and t.former == "plus":
            return [_ext(ctx.parent, t.shape[1]), _ext(ctx.parent, t.shape[2])]
        if kind == "one":
            return [ctx.parent]
        if kind == "id" and t.former == "id":
            a = t.shape[1]
            return [_ext(a.ctx, a)]
        return None

    def _rec_declared(self, e, ctx, expected):
        d = self.env.decls.get(e.name)
        if d is None:
            raise UnboundName(f"{e.name} is not a declared schema or instance")
        if len(e.args) != len(d.generators):
            raise TypeMismatch(f"rec {d.name} takes {len(d.generators)} components, got {len(e.args)}")
        comps = [self.term(a, Ctx.simplex(g.k)) for a, g in zip(e.args, d.generators)]
        motive_ctx = _ext(d.ctx, d.semtype)
        if ctx is not None and motive_ctx != ctx:
            raise ContextMismatch(f"rec {d.name} lives over {motive_ctx.describe()}, expected {ctx.describe()}")
        if expected is not None:
            motive = expected
        else:
            C = glue_instance(d.total, [(g.point, t.ty.inst) for g, t in zip(d.generators, comps)])
            motive = SemType(motive_ctx, C, ("glued",))
        tup = eliminate_declared(d, motive.inst, [t.tup for t in comps])
        return SemTerm(motive_ctx, motive, tup)


def elaborate(e, env: Environment, ctx: Ctx | None = None):
    """Elaborate any context, substitution, type or term expression."""
    el = Elaborator(env)
    if isinstance(e, A.CTX_NODES):
        return el.ctx(e).complex
    if isinstance(e, A.SUBST_NODES):
        return el.subst(e, dom=ctx).morph
    if isinstance(e, A.TYPE_NODES):
        return el.type(e, ctx).inst
    if isinstance(e, A.TERM_NODES):
        return el.term(e, ctx).tup
    raise TypeError(f"cannot elaborate {e!r}")
