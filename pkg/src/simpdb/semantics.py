"""Type and term formers on instances: Σ, Π, Id, +, 0, 1 and their eliminators.

Every former takes the base complex X explicitly and returns a tuple-form
instance. Σ, Id and + are built from abstract keys and passed through
:func:`~simpdb.instance.tuplify`; Π is computed directly in tuple form, face
by face, as the natural join of the fibres.
"""

from __future__ import annotations

from itertools import product
from typing import Mapping, Sequence

from .complex import Complex, Face, SchemaMorphism, compose, subfaces
from .errors import (
    BaseMismatch,
    ComponentTypeMismatch,
    EquationPremiseViolated,
    KindMismatch,
    MissingComponent,
)
from .instance import (
    FullTuple,
    Instance,
    element_face,
    elements,
    generic_element,
    lift,
    restrict_row,
    section,
    subst_tuple,
    substitute,
    terminal,
    tuplify,
    validate_full_tuple,
    validate_instance,
)
from .values import UNIT, Family, Pair, Row, Tag, Value

__all__ = [
    "sigma",
    "pair_tuple",
    "pi",
    "lambda_tuple",
    "apply_tuple",
    "pi_subst_law",
    "identity_type",
    "refl_tuple",
    "plus",
    "left_tuple",
    "right_tuple",
    "star_tuple",
    "eliminate",
    "eliminate_declared",
    "elimination_maps",
    "glue_instance",
    "assemble",
]


def _over_elements(X: Complex, J: Instance, G: Instance) -> tuple[Complex, SchemaMorphism]:
    if J.base != X:
        raise BaseMismatch("J must live over X")
    E, p = elements(X, J)
    if G.base != E:
        raise BaseMismatch("G must live over the elements of J")
    return E, p


# dependent sum


def sigma(X: Complex, J: Instance, G: Instance) -> Instance:
    """Σ_J G: pairs ⟨a, b⟩ with a ∈ J(x) and b ∈ G(x, a)."""
    _over_elements(X, J, G)
    cached = G._cache.get(("sigma", J))
    if cached is not None:
        return cached
    keys = {}
    for x in X.faces:
        keys[x] = [Pair(a, b) for a in J.rows[x] for b in G.rows[element_face(x, a)]]

    def restrict(x: Face, y: Face, k: Pair):
        a_y = restrict_row(k.fst, x, y)
        return Pair(a_y, restrict_row(k.snd, element_face(x, k.fst), element_face(y, a_y)))

    out = tuplify(X, keys, restrict)
    G._cache[("sigma", J)] = out
    return out


def pair_tuple(X: Complex, J: Instance, G: Instance) -> FullTuple:
    """pair ∈ Trm(∫(∫(X, J), G), Σ_J G[p][p]), ⟨⟨A, a⟩, b⟩ ↦ ⟨a, b⟩."""
    E, p = _over_elements(X, J, G)
    EE, q = elements(E, G)
    S = substitute(substitute(sigma(X, J, G), p), q)
    return FullTuple(S, {w: Pair(w.fst.snd, w.snd) for w in EE.vertices})


# dependent product


def _attribute_families(X: Complex, J: Instance, G: Instance) -> dict[Value, list[Family]]:
    fams = {}
    for A in X.vertices:
        keys = J.rows[(A,)]
        fibres = [G.rows[(Pair(A, a),)] for a in keys]
        fams[A] = [Family.from_sorted(tuple(zip(keys, c))) for c in product(*fibres)]
    return fams


def _joins_fibres(x: Face, fam: Mapping[Value, Family], J: Instance, G: Instance) -> bool:
    """The compatibility condition at face x itself: every J-row's fibre tuple is a G-row."""
    for a in J.rows[x]:
        am = a._map
        cand = Row.from_sorted(tuple((Pair(v, am[v]), fam[v]._map[am[v]]) for v in x))
        if not G.has(element_face(x, a), cand):
            return False
    return True


def pi(X: Complex, J: Instance, G: Instance) -> Instance:
    """Π_J G, the right Kan extension of G along p, in tuple form.

    At an attribute A the rows are all families a ↦ c_a with c_a ∈ G(A, a).
    At a larger face x a row assigns such a family to each attribute of x and
    is kept iff its restriction to every proper subface is kept and, for every
    row a of J at x, the tuple of chosen fibre values is a row of G at (x, a).
    Faces are processed by increasing size so subface membership is a lookup.
    """
    _over_elements(X, J, G)
    cached = G._cache.get(("pi", J))
    if cached is not None:
        return cached
    fams = _attribute_families(X, J, G)
    rows: dict[Face, list] = {}
    sets: dict[Face, set] = {}
    for x in X.faces:
        if len(x) == 1:
            rows[x] = fams[x[0]]
            sets[x] = set(rows[x])
            continue
        head, last = x[:-1], x[-1]
        later = [y for y in subfaces(x, proper=True) if len(y) > 1 and y[-1] == last]
        kept = []
        for r in rows[head]:
            base = ((head[0], r),) if len(head) == 1 else r.items
            for fam in fams[last]:
                items = base + ((last, fam),)
                fm = dict(items)
                ok = True
                for y in later:
                    if Row.from_sorted(tuple((v, fm[v]) for v in y)) not in sets[y]:
                        ok = False
                        break
                if ok and _joins_fibres(x, fm, J, G):
                    kept.append(Row.from_sorted(items))
        rows[x] = kept
        sets[x] = set(kept)
    out = Instance(X, rows)
    G._cache[("pi", J)] = out
    return out


def lambda_tuple(X: Complex, J: Instance, G: Instance, t: FullTuple) -> FullTuple:
    """λt ∈ Trm(X, Π_J G) for t ∈ Trm(∫(X, J), G)."""
    _over_elements(X, J, G)
    if t.instance != G:
        raise BaseMismatch("λ needs a full tuple of G")
    c = t.choice
    choice = {}
    for A in X.vertices:
        keys = J.rows[(A,)]
        choice[A] = Family.from_sorted(tuple((a, c[Pair(A, a)]) for a in keys))
    return validate_full_tuple(FullTuple(pi(X, J, G), choice))


def apply_tuple(X: Complex, J: Instance, G: Instance, s: FullTuple) -> FullTuple:
    """Ap_s ∈ Trm(∫(X, J), G), ⟨A, a⟩ ↦ s(A)(a)."""
    E, _ = _over_elements(X, J, G)
    if s.instance.base != X:
        raise BaseMismatch("Ap needs a full tuple over X")
    c = s.choice
    return validate_full_tuple(FullTuple(G, {w: c[w.fst]._map[w.snd] for w in E.vertices}))


def pi_subst_law(f: SchemaMorphism, J: Instance, G: Instance) -> bool:
    """(Π_J G)[f] == Π_{J[f]} G[f̃], exactly."""
    lhs = substitute(pi(f.dst, J, G), f)
    rhs = pi(f.src, substitute(J, f), substitute(G, lift(f, J)))
    return lhs == rhs


# identity


def identity_type(X: Complex, J: Instance) -> Instance:
    """Id_J over ∫(∫(X, J), J[p]): one row ⋆ on the diagonal, nothing elsewhere."""
    E, p = elements(X, J)
    Jp = substitute(J, p)
    K, _ = elements(E, Jp)
    cached = Jp._cache.get("identity_type")
    if cached is not None:
        return cached

    def diagonal(face: Face) -> bool:
        return all(w.fst.snd == w.snd for w in face)

    keys = {w: [UNIT] if diagonal(w) else [] for w in K.faces}
    out = tuplify(K, keys, lambda x, y, k: UNIT)
    Jp._cache["identity_type"] = out
    return out


def refl_tuple(X: Complex, J: Instance) -> FullTuple:
    """refl ∈ Trm(∫(X, J), Id_J[v̂]), constantly ⋆."""
    E, _ = elements(X, J)
    v_hat = section(generic_element(X, J))
    inst = substitute(identity_type(X, J), v_hat)
    return FullTuple(inst, {w: UNIT for w in E.vertices})


# disjoint union, 0 and 1


def plus(X: Complex, I: Instance, J: Instance) -> Instance:
    """I + J: rows ⟨0, a⟩ for a ∈ I(x) and ⟨1, b⟩ for b ∈ J(x)."""
    if I.base != X or J.base != X:
        raise BaseMismatch("both summands must live over X")
    hit = I._cache.get(("plus", J))
    if hit is None:
        keys = {x: [Tag(0, a) for a in I.rows[x]] + [Tag(1, b) for b in J.rows[x]] for x in X.faces}
        hit = tuplify(X, keys, lambda x, y, k: Tag(k.bit, restrict_row(k.value, x, y)))
        I._cache[("plus", J)] = hit
    return hit


def left_tuple(X: Complex, I: Instance, J: Instance) -> FullTuple:
    E, p = elements(X, I)
    return FullTuple(substitute(plus(X, I, J), p), {w: Tag(0, w.snd) for w in E.vertices})


def right_tuple(X: Complex, I: Instance, J: Instance) -> FullTuple:
    E, p = elements(X, J)
    return FullTuple(substitute(plus(X, I, J), p), {w: Tag(1, w.snd) for w in E.vertices})


def star_tuple(X: Complex) -> FullTuple:
    """The unique full tuple of the terminal instance."""
    return FullTuple(terminal(X), {v: UNIT for v in X.vertices})


# gluing along display maps


def _forward(row: Value, u: Face, w: Face, psi: SchemaMorphism) -> Value:
    """Transport a row over u to w = ψ(u) along the bijection u ≅ w."""
    if len(u) == 1:
        return row
    m = psi.mapping
    rm = row._map
    return Row.from_sorted(tuple(sorted(((m[v], rm[v]) for v in u), key=lambda kv: kv[0]._key)))


def glue_instance(Y: Complex, pieces: Sequence[tuple[SchemaMorphism, Instance]]) -> Instance:
    """The unique C over Y with C[ψ] == K for every piece (ψ, K), when the ψ cover Y.

    Raises ComponentTypeMismatch if the pieces disagree or leave a face of Y
    uncovered.
    """
    rows: dict[Face, frozenset] = {}
    for psi, K in pieces:
        if psi.dst != Y or K.base != psi.src:
            raise ComponentTypeMismatch("piece does not map into the glued base")
        for u in psi.src.faces:
            w = psi.image(u)
            got = frozenset(_forward(r, u, w, psi) for r in K.rows[u])
            if w in rows and rows[w] != got:
                raise ComponentTypeMismatch(f"pieces disagree at face {w!r}")
            rows[w] = got
    missing = [w for w in Y.faces if w not in rows]
    if missing:
        raise ComponentTypeMismatch(f"face {missing[0]!r} is not covered by any component")
    C = Instance(Y, rows)
    validate_instance(C)
    for psi, K in pieces:
        if substitute(C, psi) != K:
            raise ComponentTypeMismatch("glued instance does not restrict to a component's type")
    return C


def assemble(C: Instance, pieces: Sequence[tuple[SchemaMorphism, FullTuple]], what: str = "") -> FullTuple:
    """Full tuple of C built vertex-wise from components t_i with t_i ∈ Trm(C[ψ_i])."""
    Y = C.base
    choice: dict[Value, Value] = {}
    for psi, t in pieces:
        if psi.dst != Y:
            raise ComponentTypeMismatch("component map does not land in the motive's base")
        if t.instance != substitute(C, psi):
            raise ComponentTypeMismatch(f"component {what} has the wrong type")
        for u in psi.src.vertices:
            w = psi.mapping[u]
            val = t.choice[u]
            if w in choice and choice[w] != val:
                raise EquationPremiseViolated(what or "vertex agreement", f"components disagree at {w!r}")
            choice[w] = val
    missing = [w for w in Y.vertices if w not in choice]
    if missing:
        raise MissingComponent(f"no component covers vertex {missing[0]!r}")
    return validate_full_tuple(FullTuple(C, choice))


# eliminators

_ARITY = {"zero": 0, "one": 1, "sigma": 1, "id": 1, "plus": 2}


def elimination_maps(kind: str, X: Complex, types: Sequence[Instance]) -> tuple[Complex, list[SchemaMorphism]]:
    """The extended context an eliminator's motive lives over, and the maps its components are pulled back along.

    kind / types:
      zero  ()      motive over ∫(X, 0); no components
      one   ()      motive over ∫(X, 1); component along ⋆!
      sigma (J, G)  motive over ∫(X, Σ_J G); component along (↓∘↓).Σ ∘ pair!
      id    (J,)    motive over ∫(∫(∫(X,J), J[p]), Id_J); component along (v!).Id ∘ refl!
      plus  (I, J)  motive over ∫(X, I+J); components along (↓).(I+J) ∘ left! and ∘ right!
    """
    if kind not in _ARITY:
        raise KindMismatch(f"unknown eliminator kind {kind!r}")
    key = ("elimination", kind, tuple(types))
    hit = X._cache.get(key)
    if hit is None:
        hit = X._cache[key] = _elimination_maps(kind, X, types)
    return hit


def _elimination_maps(kind: str, X: Complex, types: Sequence[Instance]) -> tuple[Complex, list[SchemaMorphism]]:
    if kind == "zero":
        from .instance import initial

        return elements(X, initial(X))[0], []
    if kind == "one":
        one = terminal(X)
        return elements(X, one)[0], [section(star_tuple(X))]
    if kind == "sigma":
        J, G = types
        E, pJ = _over_elements(X, J, G)
        _, pG = elements(E, G)
        S = sigma(X, J, G)
        psi = compose(lift(compose(pJ, pG), S), section(pair_tuple(X, J, G)))
        return elements(X, S)[0], [psi]
    if kind == "id":
        (J,) = types
        E, p = elements(X, J)
        Jp = substitute(J, p)
        Id = identity_type(X, J)
        K, _ = elements(E, Jp)
        v_hat = section(generic_element(X, J))
        psi = compose(lift(v_hat, Id), section(refl_tuple(X, J)))
        return elements(K, Id)[0], [psi]
    I, J = types
    S = plus(X, I, J)
    _, pI = elements(X, I)
    _, pJ = elements(X, J)
    psi0 = compose(lift(pI, S), section(left_tuple(X, I, J)))
    psi1 = compose(lift(pJ, S), section(right_tuple(X, I, J)))
    return elements(X, S)[0], [psi0, psi1]


def eliminate(
    kind: str,
    X: Complex,
    types: Sequence[Instance],
    C: Instance,
    components: Sequence[FullTuple],
) -> FullTuple:
    """rec_kind c_0 (c_1) as a full tuple of the motive C.

    Each component must be a full tuple of C pulled back along the matching
    map from :func:`elimination_maps`; the result agrees with component i on
    the image of map i, which is exactly the computation rule.
    """
    base, maps = elimination_maps(kind, X, types)
    if C.base != base:
        raise BaseMismatch(f"motive of rec_{kind} must live over the extended context")
    if len(components) != len(maps):
        raise KindMismatch(f"rec_{kind} takes {len(maps)} component(s), got {len(components)}")
    return assemble(C, list(zip(maps, components)), what=f"of rec_{kind}")


def eliminate_declared(decl, C: Instance, components: Mapping[str, FullTuple] | Sequence[FullTuple]) -> FullTuple:
    """The generated eliminator of a declared type (see checker.DeclaredType).

    One component per generator, each a full tuple over the generator's simplex
    of C pulled back along that generator's point (φ_g).T ∘ g!; the declared
    equations are premises and are checked before assembly.
    """
    gens = decl.generators
    if not isinstance(components, Mapping):
        comps = list(components)
        if len(comps) < len(gens):
            raise MissingComponent(f"rec_{decl.name} needs {len(gens)} components, got {len(comps)}")
        if len(comps) > len(gens):
            raise KindMismatch(f"rec_{decl.name} takes {len(gens)} components, got {len(comps)}")
        components = {g.name: c for g, c in zip(gens, comps)}
    for g in gens:
        if g.name not in components:
            raise MissingComponent(f"no component for generator {g.name}")
    if C.base != decl.total:
        raise BaseMismatch(f"motive of rec_{decl.name} must live over the extended context")
    for g in gens:
        t = components[g.name]
        if t.instance != substitute(C, g.point):
            raise ComponentTypeMismatch(f"component for {g.name} has the wrong type")
    for eq in decl.equations:
        lhs = subst_tuple(components[eq.lhs_gen], eq.lhs_map)
        rhs = subst_tuple(components[eq.rhs_gen], eq.rhs_map)
        if lhs != rhs:
            raise EquationPremiseViolated(str(eq))
    return assemble(C, [(g.point, components[g.name]) for g in gens], what=f"of rec_{decl.name}")

