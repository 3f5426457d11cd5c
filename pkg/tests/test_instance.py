import random
from collections import Counter

import pytest
from hypothesis import given

from simpdb.complex import compose, identity, make_complex, make_morphism
from simpdb.errors import BadRowShape, ClosureViolation, InvalidFullTuple, NotDisplay, NotRelational, UnknownFace
from simpdb.gen import GenConfig, gen_complex, gen_display, gen_instance
from simpdb.instance import (
    Instance,
    components,
    count_full_tuples,
    elements,
    full_tuples,
    generic_element,
    initial,
    lift,
    make_full_tuple,
    make_instance,
    pullback_rows,
    row_value,
    sample_full_tuple,
    section,
    subst_tuple,
    substitute,
    terminal,
    tuplify,
    validate_instance,
)
from simpdb.values import UNIT, Atom, Pair

from .conftest import brute_full_tuples, displays, has_row, instances


def example_I():
    X = make_complex("ABC", ["A", "B", "C", "AB", "BC"])
    return make_instance(
        X,
        {"A": ["a", "a'"], "B": ["b", "d"], "C": ["c", "e"], "AB": [("a", "b"), ("a'", "b")], "BC": [("b", "c"), ("d", "e")]},
    )


def test_example_full_tuples():
    J = example_I()
    got = [tuple(v.token for v in t.values()) for t in full_tuples(J)]
    assert got == [("a", "b", "c"), ("a'", "b", "c")]
    assert count_full_tuples(J) == 2


def test_make_instance_rejects():
    X = make_complex("AB", ["A", "B", "AB"])
    with pytest.raises(ClosureViolation):
        make_instance(X, {"A": ["a"], "B": ["b"], "AB": [("a", "c")]})
    with pytest.raises(UnknownFace):
        make_instance(X, {"C": ["c"]})
    with pytest.raises(BadRowShape):
        make_instance(X, {"A": ["a"], "B": ["b"], "AB": [("a",)]})


def test_tuplify_keys_and_relationality():
    X = make_complex("AB", ["A", "B", "AB"])
    keys = {("A",): ["a"], ("B",): ["b", "b2"], ("A", "B"): ["k1", "k2"]}
    table = {"k1": {"A": "a", "B": "b"}, "k2": {"A": "a", "B": "b2"}}

    def restrict(x, y, k):
        return table[k][y[0].token]

    J = tuplify(X, {tuple(Atom(c) for c in f): ks for f, ks in keys.items()}, restrict)
    assert count_full_tuples(J) == 2
    table["k2"] = {"A": "a", "B": "b"}
    with pytest.raises(NotRelational):
        tuplify(X, {tuple(Atom(c) for c in f): ks for f, ks in keys.items()}, restrict)


def test_terminal_and_initial():
    X = make_complex("AB", ["A", "B", "AB"])
    (t,) = full_tuples(terminal(X))
    assert t.values() == (UNIT, UNIT)
    assert full_tuples(initial(X)) == []


def test_invalid_full_tuple():
    J = example_I()
    with pytest.raises(InvalidFullTuple):
        make_full_tuple(J, {"A": "a", "B": "d", "C": "e"})


@given(instances())
def test_full_tuples_match_brute_force(J):
    got = [t.choice for t in full_tuples(J)]
    want = brute_full_tuples(J)
    assert sorted(map(sorted_items, got)) == sorted(map(sorted_items, want))
    assert count_full_tuples(J) == len(want)
    # canonical order, no repeats
    assert [t.values() for t in full_tuples(J)] == sorted({t.values() for t in full_tuples(J)})


def sorted_items(d):
    return tuple(sorted(d.items()))


@given(instances())
def test_elements_pointwise(J):
    X = J.base
    E, p = elements(X, J)
    # one vertex per attribute value, one face per row
    assert len(E.vertices) == sum(len(J.rows[(v,)]) for v in X.vertices)
    assert len(E.faces) == sum(len(J.rows[f]) for f in X.faces)
    assert p.display
    for w in E.vertices:
        assert p(w) == w.fst and w.snd in J.rows[(w.fst,)]


@given(displays())
def test_display_substitution_stays_tuple_form(fJ):
    f, J = fJ
    K = substitute(J, f)
    validate_instance(K)
    for x in f.src.faces:
        fx = f.image(x)
        # oracle: the rows at x are the rows at f(x) read through f
        want = {tuple(row_value(r, fx, f(u)) for u in x) for r in J.rows[fx]}
        assert {tuple(row_value(r, x, u) for u in x) for r in K.rows[x]} == want


@given(displays())
def test_substituted_tuples(fJ):
    f, J = fJ
    for t in full_tuples(J)[:5]:
        s = subst_tuple(t, f)
        make_full_tuple(s.instance, s.choice)
        assert all(s(u) == t(f(u)) for u in f.src.vertices)


def test_substitution_functorial_on_random_chains():
    cfg = GenConfig()
    for i in range(100):
        rng = random.Random(i)
        X = gen_complex(rng, cfg)
        J = gen_instance(rng, cfg, X)
        f = gen_display(rng, cfg, X)
        g = gen_display(rng, cfg, f.src, prefix="z")
        assert substitute(J, compose(f, g)) == substitute(substitute(J, f), g)
        assert substitute(J, identity(X)) == J


def merged():
    """Two attributes of an edge sent to one attribute: not a display map."""
    X = make_complex("uw", ["u", "w", "uw"])
    Y = make_complex("A", ["A"])
    J = make_instance(Y, {"A": ["a", "b"]})
    return make_morphism(X, Y, {"u": "A", "w": "A"}), J


def test_non_display_pullback_is_not_tuple_form():
    f, J = merged()
    assert not f.display
    with pytest.raises(NotDisplay):
        substitute(J, f)
    raw = Instance(f.src, pullback_rows(J, f))
    with pytest.raises(BadRowShape):
        validate_instance(raw)


@given(instances(plant=1.0))
def test_section_and_generic_element(J):
    X = J.base
    E, p = elements(X, J)
    v = generic_element(X, J)
    make_full_tuple(v.instance, v.choice)
    for t in full_tuples(J)[:4]:
        s = section(t)
        assert compose(p, s) == identity(X)
        assert subst_tuple(v, s) == t


@given(displays())
def test_lift_over_projection(fJ):
    f, J = fJ
    g = lift(f, J)
    E2, p2 = elements(f.src, substitute(J, f))
    E, p = elements(f.dst, J)
    assert compose(p, g) == compose(f, p2)


def test_components_and_sampling():
    X = make_complex("ABCD", ["A", "B", "C", "D", "AB", "CD"])
    J = make_instance(
        X,
        {"A": "pq", "B": "pq", "C": "pqr", "D": "p", "AB": [("p", "p"), ("q", "p"), ("q", "q")], "CD": [("p", "p"), ("r", "p")]},
    )
    assert components(X) == [(Atom("A"), Atom("B")), (Atom("C"), Atom("D"))]
    assert count_full_tuples(J) == len(brute_full_tuples(J)) == 6
    rng = random.Random(7)
    counts = Counter(sample_full_tuple(J, rng).values() for _ in range(6000))
    assert set(counts) == {t.values() for t in full_tuples(J)}
    assert all(800 < c < 1200 for c in counts.values())
    assert sample_full_tuple(initial(X), rng) is None


def test_has_row_oracle_agrees_with_membership():
    J = example_I()
    for f in J.base.faces:
        for r in J.rows[f]:
            assert has_row(J, f, {u: row_value(r, f, u) for u in f})
