"""Relational instances in tuple form, full tuples, and the category of elements.

An instance over a complex X assigns to every face a finite set of rows. At a
singleton face {A} a row is just a value; at a larger face it is a
:class:`~simpdb.values.Row` keyed by the face's vertices. Keys are identified
with their data, so every instance handled here is relational by construction.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping

from .complex import (
    Complex,
    Face,
    SchemaMorphism,
    _build,
    identity,
    make_face,
    subfaces,
)
from .errors import (
    BadRowShape,
    BaseMismatch,
    ClosureViolation,
    InvalidFullTuple,
    NotDisplay,
    NotRelational,
    UnknownFace,
)
from .values import UNIT, Pair, Row, Value, as_value

__all__ = [
    "Instance",
    "FullTuple",
    "make_instance",
    "validate_instance",
    "tuplify",
    "terminal",
    "initial",
    "substitute",
    "pullback_rows",
    "elements",
    "element_face",
    "split_element_face",
    "projection",
    "lift",
    "full_tuples",
    "count_full_tuples",
    "sample_full_tuple",
    "components",
    "make_full_tuple",
    "validate_full_tuple",
    "subst_tuple",
    "generic_element",
    "section",
    "restrict_row",
    "row_value",
    "restrict_instance",
]


# rows


def row_value(row: Value, face: Face, vertex: Value) -> Value:
    """Value of a row at one attribute of its face."""
    return row if len(face) == 1 else row._map[vertex]


def restrict_row(row: Value, face: Face, sub: Face) -> Value:
    """Projection of a row over ``face`` onto the subface ``sub``."""
    if len(sub) == len(face):
        return row
    if len(sub) == 1:
        return row._map[sub[0]]
    m = row._map
    return Row.from_sorted(tuple((v, m[v]) for v in sub))


def _tuple_row(face: Face, values: Iterable[Value]) -> Value:
    vals = tuple(values)
    if len(face) == 1:
        return vals[0]
    return Row.from_sorted(tuple(zip(face, vals)))


def _coerce_row(face: Face, raw) -> Value:
    if len(face) == 1:
        if isinstance(raw, (tuple, list)) and len(raw) == 1:
            raw = raw[0]
        return as_value(raw)
    if isinstance(raw, Value):
        return raw
    if isinstance(raw, Mapping):
        return Row({as_value(k): as_value(v) for k, v in raw.items()})
    if isinstance(raw, (tuple, list)) and len(raw) == len(face):
        return _tuple_row(face, [as_value(v) for v in raw])
    raise BadRowShape(face, raw)


class Instance:
    __slots__ = ("base", "rows", "_sets", "_hash", "_cache")

    def __init__(self, base: Complex, rows: Mapping[Face, Iterable[Value]]):
        # trusted constructor: rows must already be in tuple form and closed
        self.base = base
        self._sets = {f: frozenset(rows.get(f, ())) for f in base.faces}
        self.rows = {f: tuple(sorted(s)) for f, s in self._sets.items()}
        self._hash = None
        self._cache = {}

    def __getitem__(self, face) -> tuple:
        return self.rows[face]

    def has(self, face: Face, row: Value) -> bool:
        return row in self._sets[face]

    def attribute(self, v: Value) -> tuple:
        return self.rows[(v,)]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Instance):
            return NotImplemented
        return self.base == other.base and self._sets == other._sets

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, tuple(self._sets[f] for f in self.base.faces)))
        return self._hash

    def size(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def __repr__(self):
        from .values import format_value, format_vertex

        parts = []
        for f in self.base.faces:
            head = ",".join(format_vertex(v) for v in f)
            parts.append(f"{head}: " + "{" + ", ".join(format_value(r) for r in self.rows[f]) + "}")
        return "Instance(" + "; ".join(parts) + ")"

    def first_difference(self, other: "Instance"):
        """(face, rows here, rows there) for the first face where the row sets differ, or None."""
        if self.base != other.base:
            return None
        for f in self.base.faces:
            if self._sets[f] != other._sets[f]:
                return f, self.rows[f], other.rows[f]
        return None


def _check_rows(X: Complex, rows: Mapping[Face, Iterable[Value]]) -> None:
    for f, rs in rows.items():
        if f not in X:
            raise UnknownFace(f)
        if len(f) == 1:
            continue
        fset = set(f)
        for r in rs:
            if not isinstance(r, Row) or len(r) != len(f) or set(r._map) != fset:
                raise BadRowShape(f, r)
    sets = {f: frozenset(rows.get(f, ())) for f in X.faces}
    for f in X.faces:
        if len(f) == 1:
            continue
        for r in sets[f]:
            for sub in subfaces(f, proper=True):
                if restrict_row(r, f, sub) not in sets[sub]:
                    raise ClosureViolation(f, r, sub)


def make_instance(X: Complex, rows: Mapping) -> Instance:
    """Validate rows given per face and build an Instance.

    Faces may be given as any vertex collection; a string that is not itself a
    vertex is read as its characters, as in make_complex. Faces left out are empty.
    Rows at larger faces may be Rows, mappings, or tuples in face order.
    Raises UnknownFace, BadRowShape or ClosureViolation.
    """
    canon: dict[Face, set] = {}
    for raw_face, raw_rows in rows.items():
        if isinstance(raw_face, Value) or (isinstance(raw_face, str) and (as_value(raw_face),) in X):
            raw_face = [raw_face]
        face = make_face(raw_face)
        if face not in X:
            raise UnknownFace(face)
        canon.setdefault(face, set()).update(_coerce_row(face, r) for r in raw_rows)
    _check_rows(X, canon)
    return Instance(X, canon)


def validate_instance(J: Instance) -> Instance:
    """Re-run the tuple-form and closure checks on an existing instance."""
    _check_rows(J.base, J._sets)
    return J


def tuplify(
    X: Complex,
    keys: Mapping[Face, Iterable],
    restrict: Callable[[Face, Face, object], object] | Mapping,
) -> Instance:
    """Rewrite a functor given by abstract keys into tuple form.

    ``restrict(x, y, k)`` gives the restriction of key ``k`` at face ``x`` to
    the subface ``y``; a mapping ``{(x, y): {k: k'}}`` is accepted too. Keys at
    singleton faces must be values and are kept as they are.
    """
    if not callable(restrict):
        table = restrict
        restrict = lambda x, y, k: table[(x, y)][k]  # noqa: E731
    out: dict[Face, set] = {}
    for x in X.faces:
        ks = list(keys.get(x, ()))
        if len(x) == 1:
            out[x] = {as_value(k) for k in ks}
            continue
        seen: dict[Value, object] = {}
        for k in ks:
            r = Row.from_sorted(tuple((v, as_value(restrict(x, (v,), k))) for v in x))
            if r in seen and seen[r] != k:
                raise NotRelational(x, seen[r], k)
            seen[r] = k
        out[x] = set(seen)
    for f in keys:
        if f not in X:
            raise UnknownFace(f)
    _check_rows(X, out)
    return Instance(X, out)


def terminal(X: Complex) -> Instance:
    """One row everywhere, every attribute valued in the unit; stable under substitution."""
    J = X._cache.get("terminal")
    if J is None:
        J = Instance(X, {f: [_tuple_row(f, [UNIT] * len(f))] for f in X.faces})
        X._cache["terminal"] = J
    return J


def initial(X: Complex) -> Instance:
    return Instance(X, {})


# substitution along morphisms


def _rekey(row: Value, x: Face, fx: Face, f: SchemaMorphism) -> Value:
    """Transport a row over f(x) to x along the bijection x ≅ f(x)."""
    if len(x) == 1:
        return row
    m = f.mapping
    rm = row._map
    return Row.from_sorted(tuple((v, rm[m[v]]) for v in x))


def pullback_rows(J: Instance, f: SchemaMorphism) -> dict:
    """The raw composite J∘f, face by face.

    Where f restricts to a bijection of x onto f(x) the rows are re-keyed along
    it; elsewhere there is nothing to re-key along and the rows of J at f(x)
    are taken literally, which is exactly where tuple form breaks.
    """
    out = {}
    for x in f.src.faces:
        fx = f.image(x)
        rows = J.rows[fx]
        out[x] = [_rekey(r, x, fx, f) for r in rows] if len(fx) == len(x) else list(rows)
    return out


def substitute(J: Instance, f: SchemaMorphism) -> Instance:
    """J[f] for a display morphism f with target J.base."""
    if J.base != f.dst:
        raise BaseMismatch("substitute(J, f) needs J.base == f.dst")
    if not f.display:
        raise NotDisplay("instances can only be substituted along display morphisms")
    if f.src is f.dst and f.mapping == identity(f.src).mapping:
        return J
    cache_key = ("subst", f)
    out = J._cache.get(cache_key)
    if out is None:
        out = Instance(f.src, pullback_rows(J, f))
        J._cache[cache_key] = out
    return out


def restrict_instance(J: Instance, sub: Complex) -> Instance:
    """J restricted to a subcomplex of its base."""
    return Instance(sub, {f: J.rows[f] for f in sub.faces if f in J.base})


# category of elements


def element_face(x: Face, row: Value) -> Face:
    """The face of ∫(X, J) over the pair (x, row)."""
    if len(x) == 1:
        return (Pair(x[0], row),)
    m = row._map
    return tuple(Pair(v, m[v]) for v in x)


def split_element_face(face: Face) -> tuple[Face, Value]:
    """Inverse of element_face."""
    x = tuple(p.fst for p in face)
    return x, _tuple_row(x, (p.snd for p in face))


def elements(X: Complex, J: Instance) -> tuple[Complex, SchemaMorphism]:
    """The category of elements ∫(X, J) and its canonical projection p."""
    if J.base != X:
        raise BaseMismatch("elements(X, J) needs J.base == X")
    hit = J._cache.get("elements")
    if hit is None:
        faces = [element_face(x, r) for x in X.faces for r in J.rows[x]]
        verts = [f[0] for f in faces if len(f) == 1]
        E = _build(verts, faces)
        p = SchemaMorphism(E, X, {v: v.fst for v in E.vertices})
        p._display = True
        hit = (E, p)
        J._cache["elements"] = hit
    return hit


def projection(X: Complex, J: Instance) -> SchemaMorphism:
    return elements(X, J)[1]


def lift(f: SchemaMorphism, J: Instance) -> SchemaMorphism:
    """f̃ : ∫(X, J[f]) → ∫(Y, J), ⟨A, a⟩ ↦ ⟨f(A), a⟩."""
    if not f.display:
        raise NotDisplay("lift needs a display morphism")
    src, _ = elements(f.src, substitute(J, f))
    dst, _ = elements(f.dst, J)
    m = f.mapping
    g = SchemaMorphism(src, dst, {v: Pair(m[v.fst], v.snd) for v in src.vertices})
    g._display = True
    return g


# full tuples


class FullTuple:
    __slots__ = ("instance", "choice", "_items", "_hash")

    def __init__(self, instance: Instance, choice: Mapping[Value, Value]):
        # trusted constructor; use make_full_tuple to validate
        self.instance = instance
        self.choice = dict(choice)
        self._items = tuple((v, self.choice[v]) for v in instance.base.vertices)
        self._hash = None

    @property
    def base(self) -> Complex:
        return self.instance.base

    def __call__(self, v: Value) -> Value:
        return self.choice[v]

    def restriction(self, face: Face) -> Value:
        c = self.choice
        return _tuple_row(face, (c[v] for v in face))

    def values(self) -> tuple[Value, ...]:
        return tuple(v for _, v in self._items)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FullTuple):
            return NotImplemented
        return self._items == other._items and self.instance == other.instance

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __repr__(self):
        from .values import format_value, format_vertex

        return "FullTuple(" + ", ".join(f"{format_vertex(k)}={format_value(v)}" for k, v in self._items) + ")"


def validate_full_tuple(t: FullTuple) -> FullTuple:
    J = t.instance
    if set(t.choice) != set(J.base.vertices):
        raise InvalidFullTuple("a full tuple chooses exactly one value per attribute")
    for f in J.base.faces:
        if not J.has(f, t.restriction(f)):
            raise InvalidFullTuple(f"restriction to face {f!r} is not a stored row")
    return t


def make_full_tuple(J: Instance, choice: Mapping) -> FullTuple:
    return validate_full_tuple(FullTuple(J, {as_value(k): as_value(v) for k, v in choice.items()}))


def iter_full_tuples(J: Instance) -> Iterator[FullTuple]:
    """Depth-first enumeration in vertex order; faces are checked at their top vertex."""
    X = J.base
    verts = X.vertices
    tops = X.faces_with_top()
    sets = J._sets
    choice: dict[Value, Value] = {}

    def go(i):
        if i == len(verts):
            yield FullTuple(J, choice)
            return
        v = verts[i]
        for a in J.rows[(v,)]:
            choice[v] = a
            ok = True
            for f in tops[v]:
                if Row.from_sorted(tuple((u, choice[u]) for u in f)) not in sets[f]:
                    ok = False
                    break
            if ok:
                yield from go(i + 1)
        choice.pop(v, None)

    yield from go(0)


def components(X: Complex) -> list[tuple]:
    """Vertex sets of the connected components of X, in vertex order."""
    parent = {v: v for v in X.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in X.faces:
        r = find(f[0])
        for v in f[1:]:
            s = find(v)
            if s != r:
                parent[s] = r
    groups: dict = {}
    for v in X.vertices:
        groups.setdefault(find(v), []).append(v)
    return [tuple(g) for g in groups.values()]


def _component_choices(J: Instance, verts: tuple) -> list[tuple]:
    """Every consistent choice on one component, as value tuples in vertex order."""
    tops = J.base.faces_with_top()
    sets = J._sets
    out = []
    choice: dict = {}

    def go(i):
        if i == len(verts):
            out.append(tuple(choice[v] for v in verts))
            return
        v = verts[i]
        for a in J.rows[(v,)]:
            choice[v] = a
            if all(Row.from_sorted(tuple((u, choice[u]) for u in f)) in sets[f] for f in tops[v]):
                go(i + 1)
        choice.pop(v, None)

    go(0)
    return out


def count_full_tuples(J: Instance) -> int:
    """|Trm(X, J)|, multiplied out over connected components."""
    n = 1
    for comp in components(J.base):
        n *= len(_component_choices(J, comp))
        if n == 0:
            return 0
    return n


def sample_full_tuple(J: Instance, rng) -> FullTuple | None:
    """A uniformly random full tuple (independent uniform choices per component), or None."""
    choice: dict = {}
    for comp in components(J.base):
        options = _component_choices(J, comp)
        if not options:
            return None
        choice.update(zip(comp, rng.choice(options)))
    return FullTuple(J, choice)


def full_tuples(J: Instance) -> list[FullTuple]:
    """Trm(X, J) in canonical (lexicographic by vertex order) order."""
    return list(iter_full_tuples(J))


def subst_tuple(t: FullTuple, f: SchemaMorphism) -> FullTuple:
    """t[f] ∈ Trm(X, J[f])."""
    if not f.display:
        raise NotDisplay("subst_tuple needs a display morphism")
    if t.instance.base != f.dst:
        raise BaseMismatch("subst_tuple(t, f) needs t.base == f.dst")
    c = t.choice
    m = f.mapping
    return FullTuple(substitute(t.instance, f), {v: c[m[v]] for v in f.src.vertices})


def generic_element(X: Complex, J: Instance) -> FullTuple:
    """v ∈ Trm(∫(X, J), J[p]), ⟨A, a⟩ ↦ a."""
    E, p = elements(X, J)
    return FullTuple(substitute(J, p), {v: v.snd for v in E.vertices})


def section(t: FullTuple) -> SchemaMorphism:
    """t̂ : X → ∫(X, J), A ↦ ⟨A, t(A)⟩; always display."""
    X = t.base
    E, _ = elements(X, t.instance)
    s = SchemaMorphism(X, E, {v: Pair(v, t.choice[v]) for v in X.vertices})
    s._display = True
    return s
