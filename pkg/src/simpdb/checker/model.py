"""Elaborated objects: contexts, types, terms and substitutions with their semantic values.

Each carries the model value (a complex, instance, full tuple or schema
morphism) together with just enough structure for elaboration to find the
pieces it needs: an extended context remembers its parent and the type it
was extended by, and a type remembers which former built it.
"""

from __future__ import annotations

from ..complex import Complex, SchemaMorphism, simplex
from ..instance import FullTuple, Instance, elements

__all__ = ["Ctx", "SemType", "SemTerm", "SemSubst"]


class Ctx:
    """Γ ::= Δ_n | Γ.A. Equality is nominal on the interpreted complex."""

    __slots__ = ("n", "parent", "ty", "complex")

    def __init__(self, complex_: Complex, n: int | None = None, parent: "Ctx | None" = None, ty: "SemType | None" = None):
        self.complex = complex_
        self.n = n
        self.parent = parent
        self.ty = ty

    @classmethod
    def simplex(cls, n: int) -> "Ctx":
        return cls(simplex(n), n=n)

    @classmethod
    def ext(cls, parent: "Ctx", ty: "SemType") -> "Ctx":
        if ty.ctx != parent:
            raise ValueError("context extension by a type from another context")
        return cls(elements(parent.complex, ty.inst)[0], parent=parent, ty=ty)

    @property
    def is_ext(self) -> bool:
        return self.parent is not None

    def __eq__(self, other):
        if not isinstance(other, Ctx):
            return NotImplemented
        return self.complex == other.complex

    def __hash__(self):
        return hash(self.complex)

    def describe(self) -> str:
        if self.n is not None:
            return f"D {self.n}"
        return f"{self.parent.describe()}.<{self.ty.describe()}>"

    def __repr__(self):
        return f"Ctx({self.describe()})"


class SemType:
    """An elaborated type: its context, its instance, and how it was formed.

    ``shape`` is one of ("decl", name), ("pi", A, B), ("sigma", A, B),
    ("id", A), ("plus", A, B), ("zero",), ("one",), ("subst", A, σ),
    ("glued",).
    """

    __slots__ = ("ctx", "inst", "shape")

    def __init__(self, ctx: Ctx, inst: Instance, shape: tuple):
        if inst.base != ctx.complex:
            raise ValueError("type instance does not live over its context")
        self.ctx = ctx
        self.inst = inst
        self.shape = shape

    @property
    def former(self) -> str:
        return self.shape[0]

    def describe(self) -> str:
        s = self.shape
        if s[0] == "decl":
            return s[1]
        if s[0] in ("pi", "sigma"):
            return f"{'Pi' if s[0] == 'pi' else 'Sigma'} {s[1].describe()} {s[2].describe()}"
        if s[0] == "id":
            return f"Id {s[1].describe()}"
        if s[0] == "plus":
            return f"({s[1].describe()} + {s[2].describe()})"
        if s[0] in ("zero", "one"):
            return "0" if s[0] == "zero" else "1"
        if s[0] == "subst":
            return f"{s[1].describe()}[…]"
        return "motive"

    def __repr__(self):
        return f"SemType({self.describe()} over {self.ctx.describe()})"


class SemTerm:
    __slots__ = ("ctx", "ty", "tup")

    def __init__(self, ctx: Ctx, ty: SemType, tup: FullTuple):
        self.ctx = ctx
        self.ty = ty
        self.tup = tup

    def __repr__(self):
        return f"SemTerm({self.tup!r} : {self.ty.describe()})"


class SemSubst:
    __slots__ = ("src", "dst", "morph")

    def __init__(self, src: Ctx, dst: Ctx, morph: SchemaMorphism):
        self.src = src
        self.dst = dst
        self.morph = morph

    def __repr__(self):
        return f"SemSubst({self.src.describe()} -> {self.dst.describe()})"
