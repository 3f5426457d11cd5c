"""Free generation of declared schemas and instances.

A declaration introduces a type T over a context Γ through generators, each a
term g over some Δ_k of T pulled back along a classifying map φ_g : Δ_k → Γ.
A term over Δ_k has one component at every face of Δ_k, so every generator
contributes one symbolic cell per face of Δ_k, placed at the image face in Γ.
Equations and the structure of tuple form then identify cells:

* an equation g[α] = h[β] identifies the cells of both sides face by face;
* identified cells have identified restrictions (congruence);
* two cells at one face with the same attribute values are one row.

The three closures are iterated to a fixpoint with a union-find; each class
becomes one row of T.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..complex import Complex, Face, SchemaMorphism, compose, face_path, simplex, subfaces
from ..errors import (
    DuplicateName,
    EquationContextMismatch,
    IndexOutOfRange,
    PathNotIntoBase,
    UnboundName,
)
from ..instance import FullTuple, Instance, elements, lift, section, substitute, validate_full_tuple, validate_instance
from ..values import Atom, Row
from .model import Ctx, SemType

__all__ = ["GeneratorInfo", "EquationInfo", "DeclaredType", "generate_instance", "fresh_name"]


@dataclass
class GeneratorInfo:
    name: str
    k: int
    classifier: SchemaMorphism  # φ_g : Δ_k → Γ
    term: FullTuple | None = None  # filled in after generation
    pos: tuple | None = None
    point: SchemaMorphism | None = None  # (φ_g).T ∘ g! : Δ_k → Γ.T, filled in after generation


@dataclass
class EquationInfo:
    lhs_gen: str
    lhs_path: tuple
    lhs_map: SchemaMorphism
    rhs_gen: str
    rhs_path: tuple
    rhs_map: SchemaMorphism

    def __str__(self):
        def side(g, path):
            return f"{g}[{'.'.join(f'd{i}' for i in path) or 'id'}]"

        return f"{side(self.lhs_gen, self.lhs_path)} = {side(self.rhs_gen, self.rhs_path)}"


@dataclass
class DeclaredType:
    name: str
    ctx: Ctx
    generators: list[GeneratorInfo]
    equations: list[EquationInfo]
    semtype: SemType | None = None
    total: Complex | None = None  # ∫(Γ, T), the base of its eliminator's motive
    notes: list[str] = field(default_factory=list)

    @property
    def inst(self) -> Instance:
        return self.semtype.inst

    def generator(self, name: str) -> GeneratorInfo:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)


def _missing_path(k: int, y: Face) -> tuple:
    """Descending indices of the vertices of Δ_k missing from y: the canonical face path to y."""
    present = {int(v.token) for v in y}
    return tuple(i for i in range(k, -1, -1) if i not in present)


def fresh_name(gen: str, k: int, y: Face) -> str:
    path = _missing_path(k, y)
    return gen if not path else gen + "." + ".".join(f"d{i}" for i in path)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _classifiers(decl, env) -> tuple[Ctx, list[GeneratorInfo], "DeclaredType | None"]:
    from ..surface import ast as A

    seen: set[str] = set()
    gens: list[GeneratorInfo] = []
    for g in decl.generators:
        if g.name in seen:
            raise DuplicateName(f"generator {g.name} is declared twice")
        seen.add(g.name)
    if isinstance(decl, A.SchemaDecl):
        ctx = Ctx.simplex(decl.base)
        for g in decl.generators:
            k = decl.base - len(g.path)
            try:
                if k < 0:
                    raise IndexOutOfRange("path too long")
                phi = face_path(decl.base, g.path)
            except IndexOutOfRange:
                err = PathNotIntoBase(f"path of generator {g.name} is not a face map composite into D {decl.base}")
                err.pos = g.pos
                raise err from None
            gens.append(GeneratorInfo(g.name, k, phi, pos=g.pos))
        return ctx, gens, None
    parent = env.decls.get(decl.of)
    if parent is None:
        err = UnboundName(f"{decl.of} is not a declared schema or instance")
        err.pos = decl.pos
        raise err
    ctx = Ctx.ext(parent.ctx, parent.semtype)
    for g in decl.generators:
        try:
            h = parent.generator(g.over)
        except KeyError:
            err = PathNotIntoBase(f"{g.over} is not a generator of {decl.of}")
            err.pos = g.pos
            raise err from None
        gens.append(GeneratorInfo(g.name, h.k, h.point, pos=g.pos))
    return ctx, gens, parent


def generate_instance(decl, env) -> DeclaredType:
    """Freely generate the instance presented by a schema or instance declaration."""
    ctx, gens, _ = _classifiers(decl, env)
    by_name = {g.name: g for g in gens}

    # cells
    cells: list[tuple[int, Face]] = []
    index: dict[tuple[int, Face], int] = {}
    where: list[Face] = []
    for gi, g in enumerate(gens):
        for y in simplex(g.k).faces:
            index[(gi, y)] = len(cells)
            cells.append((gi, y))
            where.append(g.classifier.image(y))
    uf = _UnionFind(len(cells))
    gpos = {g.name: i for i, g in enumerate(gens)}

    # equations
    equations = []
    for e in decl.equations:
        sides = []
        for name, path in ((e.lhs, e.lhs_path), (e.rhs, e.rhs_path)):
            if name not in by_name:
                err = UnboundName(f"equation mentions unknown generator {name}")
                err.pos = e.pos
                raise err
            g = by_name[name]
            m = g.k - len(path)
            try:
                if m < 0:
                    raise IndexOutOfRange("path too long")
                alpha = face_path(g.k, path)
            except IndexOutOfRange:
                err = EquationContextMismatch(f"path {'.'.join(f'd{i}' for i in path)} does not fit generator {name}")
                err.pos = e.pos
                raise err from None
            sides.append((g, alpha))
        (g, alpha), (h, beta) = sides
        if alpha.src != beta.src or compose(g.classifier, alpha) != compose(h.classifier, beta):
            err = EquationContextMismatch(
                f"the two sides of {e.lhs}[…] = {e.rhs}[…] live in different contexts or types"
            )
            err.pos = e.pos
            raise err
        equations.append(EquationInfo(g.name, e.lhs_path, alpha, h.name, e.rhs_path, beta))
        for y in alpha.src.faces:
            uf.union(index[(gpos[g.name], alpha.image(y))], index[(gpos[h.name], beta.image(y))])

    # vertex correspondence of each cell: Γ-vertex → Δ_k-vertex
    back = []
    for gi, y in cells:
        m = gens[gi].classifier.mapping
        back.append({m[j]: j for j in y})

    def sub_cell(c: int, sub: Face) -> int:
        gi, _ = cells[c]
        b = back[c]
        return index[(gi, tuple(sorted(b[u] for u in sub)))]

    notes = []
    by_face: dict[Face, list[int]] = {}
    for c, w in enumerate(where):
        by_face.setdefault(w, []).append(c)
    changed = True
    while changed:
        changed = False
        # congruence: identified cells have identified restrictions
        members: dict[int, list[int]] = {}
        for c in range(len(cells)):
            members.setdefault(uf.find(c), []).append(c)
        for group in members.values():
            if len(group) < 2:
                continue
            c0 = group[0]
            w = where[c0]
            for sub in subfaces(w, proper=True):
                s0 = sub_cell(c0, sub)
                for c in group[1:]:
                    if uf.union(s0, sub_cell(c, sub)):
                        changed = True
        # tuple-form quotient: equal attribute values means equal rows
        for w, cs in by_face.items():
            if len(w) < 2:
                continue
            seen: dict[tuple, int] = {}
            for c in cs:
                r = uf.find(c)
                sig = tuple(uf.find(sub_cell(c, (u,))) for u in w)
                other = seen.get(sig)
                if other is None:
                    seen[sig] = r
                elif other != r:
                    uf.union(other, r)
                    changed = True
                    notes.append(
                        f"{decl.name}: cells {_cell_label(gens, cells, c)} and "
                        f"{_cell_label(gens, cells, other)} have equal attributes and were merged"
                    )

    # names: named generator cells first (declaration order), then fresh projection names
    classes: dict[int, list[int]] = {}
    for c in range(len(cells)):
        classes.setdefault(uf.find(c), []).append(c)
    names: dict[int, str] = {}
    for root, cs in classes.items():
        tops = [c for c in cs if len(cells[c][1]) == gens[cells[c][0]].k + 1]
        pick = min(tops) if tops else min(cs)
        gi, y = cells[pick]
        names[root] = fresh_name(gens[gi].name, gens[gi].k, y)

    rows: dict[Face, set] = {}
    for root, cs in classes.items():
        c = cs[0]
        w = where[c]
        if len(w) == 1:
            row = Atom(names[root])
        else:
            row = Row.from_sorted(tuple((u, Atom(names[uf.find(sub_cell(c, (u,)))])) for u in w))
        rows.setdefault(w, set()).add(row)
    inst = validate_instance(Instance(ctx.complex, rows))
    semtype = SemType(ctx, inst, ("decl", decl.name))

    for gi, g in enumerate(gens):
        choice = {j: Atom(names[uf.find(index[(gi, (j,))])]) for j in simplex(g.k).vertices}
        g.term = validate_full_tuple(FullTuple(substitute(inst, g.classifier), choice))
        g.point = compose(lift(g.classifier, inst), section(g.term))

    out = DeclaredType(decl.name, ctx, gens, equations, semtype=semtype, notes=notes)
    out.total = elements(ctx.complex, inst)[0]
    return out


def _cell_label(gens, cells, c) -> str:
    gi, y = cells[c]
    return fresh_name(gens[gi].name, gens[gi].k, y)
