import pytest
from hypothesis import given
from hypothesis import strategies as st

from simpdb.errors import SdbSyntaxError
from simpdb.surface import (
    ast as A,
    parse,
    parse_ctx,
    parse_judgement,
    parse_subst,
    parse_term,
    parse_type,
    print_ctx,
    print_file,
    print_judgement,
    print_subst,
    print_term,
    print_type,
)

from .conftest import DATA

names = st.sampled_from(["S", "I", "a", "a'", "r0", "q_1", "T2"])
kinds = st.sampled_from(A.REC_KINDS + ("S",))


def types_and_terms():
    """Mutually recursive strategies for substitutions, types and terms."""
    subst = st.deferred(lambda: subst_)
    ty = st.deferred(lambda: ty_)
    tm = st.deferred(lambda: tm_)
    subst_ = st.one_of(
        st.just(A.Identity()),
        st.just(A.Project()),
        st.integers(0, 3).map(A.FaceMap),
        st.builds(A.Compose, subst, subst),
        st.builds(A.Eval, tm),
        st.builds(A.LiftSubst, subst, ty),
    )
    ty_ = st.one_of(
        names.map(A.NamedType),
        st.just(A.Zero()),
        st.just(A.One()),
        st.builds(A.SubstType, ty, subst),
        st.builds(A.Pi, ty, ty),
        st.builds(A.Sigma, ty, ty),
        st.builds(A.IdT, ty),
        st.builds(A.Plus, ty, ty),
    )

    def rec(kind, args):
        if kind in A.REC_KINDS:
            return A.Rec(kind, tuple(args))
        return A.RecDeclared(kind, tuple(args))

    tm_ = st.one_of(
        names.map(A.NamedTerm),
        st.sampled_from([A.Var(), A.PairC(), A.Refl(), A.Left(), A.Right(), A.Star()]),
        st.builds(A.SubstTerm, tm, subst),
        st.builds(A.Lambda, tm),
        st.builds(A.Apply, tm),
        st.builds(rec, kinds, st.lists(tm, max_size=3)),
        st.builds(A.Ascribe, tm, ty),
    )
    return subst_, ty_, tm_


SUBSTS, TYPES, TERMS = types_and_terms()
CTXS = st.recursive(
    st.one_of(st.integers(0, 4).map(A.SimplexCtx), st.just(A.NamedCtx("G"))),
    lambda c: st.builds(A.Extend, c, TYPES),
    max_leaves=3,
)
JUDGEMENTS = st.one_of(
    st.builds(A.CtxJ, CTXS),
    st.builds(A.CtxEqJ, CTXS, CTXS),
    st.builds(A.TypeJ, CTXS, TYPES),
    st.builds(A.TypeEqJ, CTXS, TYPES, TYPES),
    st.builds(A.TermJ, CTXS, TERMS, TYPES),
    st.builds(A.TermEqJ, CTXS, TERMS, TERMS, TYPES),
    st.builds(A.SubstJ, SUBSTS, CTXS, CTXS),
    st.builds(A.SubstEqJ, SUBSTS, SUBSTS, CTXS, CTXS),
)


@given(TYPES)
def test_type_round_trip(t):
    assert parse_type(print_type(t)) == t


@given(TERMS)
def test_term_round_trip(t):
    assert parse_term(print_term(t)) == t


@given(SUBSTS)
def test_subst_round_trip(s):
    assert parse_subst(print_subst(s)) == s


@given(CTXS)
def test_ctx_round_trip(c):
    assert parse_ctx(print_ctx(c)) == c


@given(JUDGEMENTS)
def test_judgement_round_trip(j):
    assert parse_judgement(print_judgement(j)) == j


@pytest.mark.parametrize("name", ["si.sdb", "si_compressed.sdb", "j.sdb", "bad_premise.sdb"])
def test_file_round_trip(name):
    decls = parse((DATA / name).read_text())
    assert parse(print_file(decls)) == decls


def test_positions_are_recorded():
    (d,) = parse("\n  query x = Pi S I")
    assert d.pos == (2, 3)
    assert d.body.pos is not None


def test_precedence():
    assert parse_type("Pi S I [d0]") == A.Pi(A.NamedType("S"), A.SubstType(A.NamedType("I"), A.FaceMap(0)))
    assert parse_subst("d0 o d1") == A.Compose(A.FaceMap(0), A.FaceMap(1))
    assert parse_type("S + I + 1") == A.Plus(A.Plus(A.NamedType("S"), A.NamedType("I")), A.One())


@pytest.mark.parametrize(
    "text",
    [
        "query = S",
        "schema S over D { }",
        "schema S over D 2 { gen A : d2.q }",
        "judgement D 2 |- S",
        "query x = Pi S",
        "instance I of S { gen a over }",
        "query x = (S",
        "query x = S @",
        "judgement d0 : D 0",
    ],
)
def test_syntax_errors(text):
    with pytest.raises(SdbSyntaxError) as e:
        parse(text)
    assert e.value.line >= 1 and e.value.column >= 1


FRAGMENTS = ["schema", "S", "over", "D", "2", "{", "}", "gen", "A", ":", "d0", ".", "eq", "[", "]", "=", "id",
             "query", "Pi", "lambda", "rec", "(", ")", "|-", "==", "judgement", "o", "!", "+", "#x\n"]


@given(st.lists(st.sampled_from(FRAGMENTS), max_size=25))
def test_parser_fuzz_only_raises_syntax_errors(tokens):
    try:
        parse(" ".join(tokens))
    except SdbSyntaxError:
        pass


@given(st.text(max_size=40))
def test_tokenizer_fuzz(text):
    try:
        parse(text)
    except SdbSyntaxError:
        pass
