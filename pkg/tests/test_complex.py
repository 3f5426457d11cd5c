import itertools

import pytest
from hypothesis import given

from simpdb.complex import (
    compose,
    face_map,
    face_path,
    identity,
    inclusion,
    make_complex,
    make_morphism,
    simplex,
    simplex_dim,
    subcomplex,
    subfaces,
)
from simpdb.errors import IndexOutOfRange, MissingSingleton, NonComposable, NotDownwardClosed, UnknownVertex
from simpdb.values import Atom

from .conftest import complexes


def n(k):
    return Atom(str(k))


def test_make_complex_validates():
    X = make_complex("AB", ["A", "B", "AB"])
    assert len(X) == 3
    with pytest.raises(MissingSingleton):
        make_complex("AB", ["A", "AB"])
    with pytest.raises(NotDownwardClosed):
        make_complex("ABC", ["A", "B", "C", "ABC"])
    with pytest.raises(UnknownVertex):
        make_complex("A", ["A", "AB"])


@pytest.mark.parametrize("k", range(6))
def test_simplex_has_every_nonempty_subset(k):
    X = simplex(k)
    assert len(X.faces) == 2 ** (k + 1) - 1
    assert simplex_dim(X) == k


@pytest.mark.parametrize("k,i", [(k, i) for k in range(5) for i in range(k + 2)])
def test_face_map_skips_one_vertex(k, i):
    f = face_map(k, i)
    # oracle: the coface skips vertex i of the target
    assert [f(n(j)) for j in range(k + 1)] == [n(j) for j in range(k + 2) if j != i]
    assert f.display


def test_face_map_range():
    with pytest.raises(IndexOutOfRange):
        face_map(1, 3)
    with pytest.raises(IndexOutOfRange):
        face_map(-1, 0)


def test_simplicial_identity_example():
    # d_2 ∘ d_0 = d_0 ∘ d_1 : Δ0 → Δ2; both send 0 to 1
    assert compose(face_map(1, 2), face_map(0, 0)) == compose(face_map(1, 0), face_map(0, 1))
    assert face_path(2, [2, 0])(n(0)) == n(1)


@pytest.mark.parametrize("k", range(6))
def test_simplicial_identities_exhaustive(k):
    for j in range(k + 3):
        for i in range(j):
            lhs = compose(face_map(k + 1, j), face_map(k, i))
            rhs = compose(face_map(k + 1, i), face_map(k, j - 1))
            assert lhs == rhs, (k, i, j)


def test_face_path_order():
    # the last index applies first
    f = face_path(2, [2, 1])
    assert f == compose(face_map(1, 2), face_map(0, 1))
    assert face_path(2, []) == identity(simplex(2))
    with pytest.raises(IndexOutOfRange):
        face_path(0, [0])


def test_compose_checks_endpoints():
    with pytest.raises(NonComposable):
        compose(face_map(0, 0), face_map(1, 0))


def test_non_display_morphism():
    X = make_complex("AB", ["A", "B", "AB"])
    Y = make_complex("C", ["C"])
    f = make_morphism(X, Y, {"A": "C", "B": "C"})
    assert not f.display


@given(complexes())
def test_complexes_are_downward_closed(X):
    fs = set(X.faces)
    for f in X.faces:
        assert set(subfaces(f)) <= fs
    for v in X.vertices:
        assert (v,) in fs


@given(complexes())
def test_identity_and_inclusions(X):
    i = identity(X)
    assert compose(i, i) == i and i.display
    top = X.maximal_faces()
    sub = subcomplex(X, top[:1])
    inc = inclusion(sub, X)
    assert inc.display
    assert all(inc.image(f) == f for f in sub.faces)


@given(complexes())
def test_maximal_faces_generate(X):
    assert subcomplex(X, X.maximal_faces()) == X
    for a, b in itertools.combinations(X.maximal_faces(), 2):
        assert not set(a) <= set(b) and not set(b) <= set(a)
