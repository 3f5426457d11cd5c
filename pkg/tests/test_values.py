from hypothesis import given
from hypothesis import strategies as st

from simpdb.gen import decode_value, encode_value
from simpdb.values import UNIT, Atom, Family, Pair, Row, Tag, as_value, format_value, format_vertex

atoms = st.sampled_from("abcxyz").map(Atom)
values = st.recursive(
    st.one_of(atoms, st.just(UNIT)),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda p: Pair(*p)),
        st.tuples(st.integers(0, 1), inner).map(lambda p: Tag(*p)),
        st.dictionaries(atoms, inner, max_size=3).map(Family),
        st.dictionaries(atoms, inner, min_size=1, max_size=3).map(Row),
    ),
    max_leaves=8,
)


def test_printing_conventions():
    assert format_value(Atom("a'")) == "a'"
    assert format_value(UNIT) == "*"
    assert format_value(Pair(Atom("x"), Atom("y"))) == "(x,y)"
    assert format_value(Tag(0, Atom("x"))) == "inl x"
    assert format_value(Tag(1, Tag(0, Atom("x")))) == "inr (inl x)"
    assert format_value(Family({Atom("B"): Atom("b"), Atom("A"): Atom("a")})) == "{A↦a, B↦b}"


def test_vertex_names():
    assert format_vertex(Pair(Atom("A"), Atom("a"))) == "a_A"
    assert format_vertex(Pair(Atom("0"), Atom("A"))) == "A"
    assert format_vertex(Pair(Pair(Atom("0"), Atom("A")), Atom("a"))) == "a_A"


def test_as_value():
    assert as_value("a") == Atom("a")
    assert as_value(3) == Atom("3")
    assert as_value(Atom("q")) is not None


@given(values, values)
def test_order_is_total_and_consistent(u, v):
    assert (u < v) + (v < u) + (u == v) == 1
    if u == v:
        assert hash(u) == hash(v)


@given(values)
def test_json_round_trip(v):
    assert decode_value(encode_value(v)) == v


@given(st.dictionaries(atoms, atoms, max_size=4))
def test_families_are_canonical(d):
    f = Family(d)
    assert f == Family(dict(reversed(list(d.items()))))
    assert list(f.keys()) == sorted(f.keys())
