"""Finite abstract simplicial complexes (schemas) and the morphisms between them.

A complex is stored extensionally: a sorted tuple of vertices and a sorted
tuple of faces, each face a sorted tuple of vertices. A morphism is a vertex
map; its action on a face is the image of the face's vertex set.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    IndexOutOfRange,
    InvalidMorphism,
    MissingSingleton,
    NonComposable,
    NotDownwardClosed,
    UnknownVertex,
)
from .values import Atom, Value, as_value, format_vertex

__all__ = [
    "Face",
    "Complex",
    "SchemaMorphism",
    "make_face",
    "format_face",
    "face_key",
    "make_complex",
    "simplex",
    "face_map",
    "compose",
    "identity",
    "strata",
    "make_morphism",
    "inclusion",
    "subfaces",
    "dimension",
    "face_path",
    "simplex_dim",
    "subcomplex",
]

Face = tuple  # sorted tuple of distinct vertices


def make_face(vertices: Iterable) -> Face:
    return tuple(sorted({as_value(v) for v in vertices}))


def face_key(face: Face) -> tuple:
    return (len(face), tuple(v._key for v in face))


def dimension(face: Face) -> int:
    return len(face) - 1


def subfaces(face: Face, proper: bool = False) -> list[Face]:
    """All nonempty subfaces of ``face`` in canonical order."""
    top = len(face) - 1 if proper else len(face)
    return [sub for k in range(1, top + 1) for sub in combinations(face, k)]


class Complex:
    __slots__ = ("vertices", "faces", "_face_set", "_hash", "_cache")

    def __init__(self, vertices: tuple, faces: tuple):
        # trusted constructor; use make_complex for validation
        self.vertices = vertices
        self.faces = faces
        self._face_set = frozenset(faces)
        self._hash = hash((vertices, self._face_set))
        self._cache = {}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.vertices == other.vertices
            and self._face_set == other._face_set
        )

    def __hash__(self):
        return self._hash

    def __contains__(self, face) -> bool:
        return face in self._face_set

    def __len__(self):
        return len(self.faces)

    def __repr__(self):
        return "Complex(" + ", ".join(format_face(f) for f in self.faces) + ")"

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def faces_with_top(self):
        """Map each vertex to the faces of size >= 2 whose largest vertex it is."""
        tops = self._cache.get("tops")
        if tops is None:
            tops = {v: [] for v in self.vertices}
            for f in self.faces:
                if len(f) > 1:
                    tops[f[-1]].append(f)
            self._cache["tops"] = tops
        return tops

    def maximal_faces(self) -> list[Face]:
        """Faces that are not a proper subface of another face."""
        covered = set()
        for f in self.faces:
            if len(f) > 1:
                for i in range(len(f)):
                    covered.add(f[:i] + f[i + 1:])
        return [f for f in self.faces if f not in covered]


def format_face(face: Face) -> str:
    """``012`` when every vertex name is one character, ``{x,y}`` otherwise."""
    names = [format_vertex(v) for v in face]
    return "".join(names) if all(len(n) == 1 for n in names) else "{" + ",".join(names) + "}"


def _build(vertices: Iterable[Value], faces: Iterable[Face]) -> Complex:
    return Complex(tuple(sorted(vertices)), tuple(sorted(set(faces), key=face_key)))


def make_complex(vertices: Iterable, faces: Iterable[Iterable]) -> Complex:
    """Validate and canonicalise a complex given by its vertices and faces.

    Faces are vertex collections; strings are read as atom tokens. Raises
    MissingSingleton, UnknownVertex or NotDownwardClosed.
    """
    verts = {as_value(v) for v in vertices}
    fs = set()
    for raw in faces:
        face = make_face(raw)
        if not face:
            raise ValueError("faces must be nonempty")
        for v in face:
            if v not in verts:
                raise UnknownVertex(face, v)
        fs.add(face)
    for v in sorted(verts):
        if (v,) not in fs:
            raise MissingSingleton(v)
    for face in sorted(fs, key=face_key):
        if len(face) > 1:
            for i in range(len(face)):
                sub = face[:i] + face[i + 1:]
                if sub not in fs:
                    raise NotDownwardClosed(face, sub)
    return _build(verts, fs)


@lru_cache(maxsize=None)
def simplex(n: int) -> Complex:
    """The full positive power set on the vertices "0".."n"."""
    if n < 0:
        raise ValueError("simplex dimension must be >= 0")
    verts = [Atom(str(k)) for k in range(n + 1)]
    return _build(verts, (tuple(sorted(c)) for k in range(1, n + 2) for c in combinations(verts, k)))


def simplex_dim(X: Complex) -> int | None:
    """n if X is (nominally) the simplex on "0".."n", else None."""
    n = len(X.vertices) - 1
    if n < 0 or X != simplex(n):
        return None
    return n


class SchemaMorphism:
    __slots__ = ("src", "dst", "mapping", "_items", "_display", "_hash")

    def __init__(self, src: Complex, dst: Complex, mapping: Mapping[Value, Value]):
        # trusted constructor; use make_morphism for validation
        self.src = src
        self.dst = dst
        self.mapping = dict(mapping)
        self._items = tuple((v, self.mapping[v]) for v in src.vertices)
        self._display = None
        self._hash = None

    def __call__(self, v: Value) -> Value:
        return self.mapping[v]

    def image(self, face: Face) -> Face:
        m = self.mapping
        return tuple(sorted({m[v] for v in face}))

    @property
    def vertex_map(self) -> dict:
        return dict(self._items)

    @property
    def display(self) -> bool:
        if self._display is None:
            m = self.mapping
            self._display = all(len({m[v] for v in f}) == len(f) for f in self.src.faces if len(f) > 1)
        return self._display

    is_display = display

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SchemaMorphism):
            return NotImplemented
        return self._items == other._items and self.src == other.src and self.dst == other.dst

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.src, self.dst, self._items))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{format_vertex(a)}↦{format_vertex(b)}" for a, b in self._items)
        return f"SchemaMorphism({body})"


def make_morphism(src: Complex, dst: Complex, mapping: Mapping) -> SchemaMorphism:
    """Validate a vertex map: total on src, into dst, faces to faces."""
    m = {as_value(k): as_value(v) for k, v in mapping.items()}
    if set(m) != set(src.vertices):
        raise InvalidMorphism("vertex map must be defined exactly on the source vertices")
    for v in m.values():
        if (v,) not in dst:
            raise InvalidMorphism(f"vertex {format_vertex(v)} is not in the target")
    f = SchemaMorphism(src, dst, m)
    for face in src.faces:
        if f.image(face) not in dst:
            raise InvalidMorphism(f"image of face {format_face(face)} is not a face of the target")
    return f


def identity(X: Complex) -> SchemaMorphism:
    ident = X._cache.get("identity")
    if ident is None:
        ident = SchemaMorphism(X, X, {v: v for v in X.vertices})
        ident._display = True
        X._cache["identity"] = ident
    return ident


def compose(g: SchemaMorphism, f: SchemaMorphism) -> SchemaMorphism:
    """g ∘ f (apply f first)."""
    if f.dst != g.src:
        raise NonComposable("compose(g, f) needs f.dst == g.src")
    gm = g.mapping
    h = SchemaMorphism(f.src, g.dst, {v: gm[w] for v, w in f.mapping.items()})
    if f._display and g._display:
        h._display = True
    return h


def face_map(n: int, i: int) -> SchemaMorphism:
    """The coface d_i^n : Δ_n → Δ_{n+1}, k ↦ k for k < i, else k + 1."""
    if n < 0 or not 0 <= i <= n + 1:
        raise IndexOutOfRange(f"d_{i}^{n} needs 0 <= i <= n+1")
    return _face_map(n, i)


@lru_cache(maxsize=None)
def _face_map(n: int, i: int) -> SchemaMorphism:
    f = SchemaMorphism(
        simplex(n), simplex(n + 1), {Atom(str(k)): Atom(str(k if k < i else k + 1)) for k in range(n + 1)}
    )
    f._display = True
    return f


def face_path(n: int, indices: Iterable[int]) -> SchemaMorphism:
    """Composite d_{i1} ∘ … ∘ d_{im} into Δ_n; superscripts follow from position.

    The last index is applied first. An empty path is the identity on Δ_n.
    """
    idx = list(indices)
    src = n - len(idx)
    if src < 0:
        raise IndexOutOfRange(f"a path of length {len(idx)} cannot end in Δ_{n}")
    f = identity(simplex(src))
    dim = src
    for i in reversed(idx):
        f = compose(face_map(dim, i), f)
        dim += 1
    return f


def strata(X: Complex, n: int) -> list[Face]:
    """Faces of dimension n."""
    return [f for f in X.faces if len(f) == n + 1]


def inclusion(sub: Complex, X: Complex) -> SchemaMorphism:
    """The inclusion of a subcomplex."""
    if not all(f in X for f in sub.faces):
        raise InvalidMorphism("not a subcomplex")
    f = SchemaMorphism(sub, X, {v: v for v in sub.vertices})
    f._display = True
    return f


def subcomplex(X: Complex, keep_faces: Iterable[Face]) -> Complex:
    """The downward closure of ``keep_faces`` inside X."""
    fs = set()
    for face in keep_faces:
        fs.update(subfaces(face))
    return _build({v for f in fs for v in f}, fs)
