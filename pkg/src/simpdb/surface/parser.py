"""Tokenizer and backtracking recursive-descent parser for ``.sdb`` files.

Grammar summary (``#`` starts a comment)::

    file     = { decl }
    decl     = schema | instance | context | query | judgement
    schema   = "schema" IDENT "over" "D" NAT "{" { "gen" IDENT ":" path | eqn } "}"
    instance = "instance" IDENT "of" IDENT "{" { "gen" IDENT "over" IDENT | eqn } "}"
    eqn      = "eq" IDENT "[" path "]" "=" IDENT "[" path "]"
    path     = "id" | FACE { "." FACE }                 FACE = d0, d1, ...
    context  = "context" IDENT "=" ctx
    query    = "query" IDENT "=" ( type | term )
    judgement= "judgement" ( ctx "context" | ctx "==" ctx
                           | ctx "|-" type "type" | ctx "|-" type "==" type
                           | ctx "|-" term ":" type | ctx "|-" term "==" term ":" type
                           | subst ":" ctx "->" ctx | subst "==" subst ":" ctx "->" ctx )
    ctx      = ( "D" NAT | IDENT | "(" ctx ")" ) { "." tchain }
    type     = tchain { "+" tchain }
    tchain   = tprim { "[" subst "]" }
    tprim    = "Pi" tchain tchain | "Sigma" tchain tchain | "Id" tchain
             | "0" | "1" | IDENT | "(" type ")"
    term     = "lambda" term | "apply" term | "rec" KIND { mchain } | mchain
    mchain   = mprim { "[" subst "]" }
    mprim    = IDENT | "v" | "*" | "pair" | "refl" | "left" | "right" | "(" term [ ":" type ] ")"
    subst    = sterm { "o" sterm }
    sterm    = sprim { "." tchain }
    sprim    = "id" | "down" | FACE | "(" subst ")" | mchain "!"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import SdbSyntaxError
from . import ast as A

__all__ = ["parse", "parse_type", "parse_term", "parse_subst", "parse_ctx", "parse_judgement", "KEYWORDS"]

KEYWORDS = frozenset(
    {
        "schema", "instance", "context", "over", "of", "gen", "eq", "query", "judgement", "type",
        "Pi", "Sigma", "Id", "D", "id", "down", "o", "v", "pair", "refl", "left", "right",
        "lambda", "apply", "rec",
    }
)
DECL_START = frozenset({"schema", "instance", "context", "query", "judgement"})

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+|#[^\n]*)"
    r"|(?P<sym>\|-|==|->|[{}\[\]():=.!+*])"
    r"|(?P<nat>[0-9]+)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_']*)"
)
_FACE = re.compile(r"d[0-9]+\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # sym, nat, ident, kw, face, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    i, line, col = 0, 1, 1
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise SdbSyntaxError(line, col, "a token", text[i])
        s = m.group()
        if m.lastgroup != "ws":
            if m.lastgroup == "word":
                kind = "kw" if s in KEYWORDS else "face" if _FACE.match(s) else "ident"
            else:
                kind = m.lastgroup
            out.append(Token(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        i = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Fail(Exception):
    pass


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.far = -1
        self.expected: set[str] = set()

    # basic machinery

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def pos(self):
        t = self.tok
        return (t.line, t.col)

    def fail(self, what: str):
        if self.i > self.far:
            self.far, self.expected = self.i, {what}
        elif self.i == self.far:
            self.expected.add(what)
        raise _Fail()

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("sym", "kw")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident":
            self.fail("identifier")
        self.i += 1
        return t.text

    def nat(self) -> int:
        t = self.tok
        if t.kind != "nat":
            self.fail("natural number")
        self.i += 1
        return int(t.text)

    def face(self) -> int:
        t = self.tok
        if t.kind != "face":
            self.fail("face map d<n>")
        self.i += 1
        return int(t.text[1:])

    def attempt(self, fn, *args):
        """Run fn; on failure restore the position and return None."""
        save = self.i
        try:
            return fn(*args)
        except _Fail:
            self.i = save
            return None

    def choice(self, *alts):
        save = self.i
        for fn in alts:
            try:
                return fn()
            except _Fail:
                self.i = save
        raise _Fail()

    def error(self) -> SdbSyntaxError:
        t = self.toks[max(self.far, 0)]
        found = t.text if t.kind != "eof" else "end of input"
        return SdbSyntaxError(t.line, t.col, " or ".join(sorted(self.expected)) or "input", found)

    def at_decl_end(self) -> bool:
        t = self.tok
        return t.kind == "eof" or (t.kind == "kw" and t.text in DECL_START)

    def end_decl(self):
        if not self.at_decl_end():
            self.fail("declaration")

    # declarations

    def file(self) -> list:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
        return decls

    def decl(self):
        t = self.tok
        if t.kind == "kw":
            if t.text == "schema":
                return self.schema()
            if t.text == "instance":
                return self.instance()
            if t.text == "context":
                return self.context_decl()
            if t.text == "query":
                return self.query()
            if t.text == "judgement":
                return self.judgement_decl()
        self.fail("declaration")

    def path(self) -> tuple:
        if self.accept("id"):
            return ()
        out = [self.face()]
        while self.at(".") and self.toks[self.i + 1].kind == "face":
            self.i += 1
            out.append(self.face())
        return tuple(out)

    def equation(self) -> A.Equation:
        p = self.pos()
        self.expect("eq")
        lhs = self.ident()
        self.expect("[")
        lp = self.path()
        self.expect("]")
        self.expect("=")
        rhs = self.ident()
        self.expect("[")
        rp = self.path()
        self.expect("]")
        return A.Equation(lhs, lp, rhs, rp, pos=p)

    def _body(self, gen):
        gens, eqs = [], []
        self.expect("{")
        while not self.accept("}"):
            if self.at("gen"):
                gens.append(gen())
            elif self.at("eq"):
                eqs.append(self.equation())
            else:
                self.fail("'gen', 'eq' or '}'")
        return tuple(gens), tuple(eqs)

    def schema(self) -> A.SchemaDecl:
        p = self.pos()
        self.expect("schema")
        name = self.ident()
        self.expect("over")
        self.expect("D")
        n = self.nat()

        def gen():
            gp = self.pos()
            self.expect("gen")
            g = self.ident()
            self.expect(":")
            return A.Generator(g, path=self.path(), pos=gp)

        gens, eqs = self._body(gen)
        return A.SchemaDecl(name, n, gens, eqs, pos=p)

    def instance(self) -> A.InstanceDecl:
        p = self.pos()
        self.expect("instance")
        name = self.ident()
        self.expect("of")
        of = self.ident()

        def gen():
            gp = self.pos()
            self.expect("gen")
            g = self.ident()
            self.expect("over")
            return A.Generator(g, over=self.ident(), pos=gp)

        gens, eqs = self._body(gen)
        return A.InstanceDecl(name, of, gens, eqs, pos=p)

    def context_decl(self) -> A.ContextDecl:
        p = self.pos()
        self.expect("context")
        name = self.ident()
        self.expect("=")
        c = self.ctx()
        self.end_decl()
        return A.ContextDecl(name, c, pos=p)

    def query(self) -> A.QueryDecl:
        p = self.pos()
        self.expect("query")
        name = self.ident()
        self.expect("=")

        def as_type():
            t = self.type_()
            self.end_decl()
            return t

        def as_term():
            t = self.term()
            self.end_decl()
            return t

        return A.QueryDecl(name, self.choice(as_type, as_term), pos=p)

    def judgement_decl(self) -> A.JudgementDecl:
        p = self.pos()
        self.expect("judgement")
        j = self.judgement()
        self.end_decl()
        return A.JudgementDecl(j, pos=p)

    def judgement(self):
        p = self.pos()

        def ctx_context():
            c = self.ctx()
            self.expect("context")
            return A.CtxJ(c, pos=p)

        def ctx_eq():
            c = self.ctx()
            self.expect("==")
            return A.CtxEqJ(c, self.ctx(), pos=p)

        def type_j():
            c = self.ctx()
            self.expect("|-")
            t = self.type_()
            self.expect("type")
            return A.TypeJ(c, t, pos=p)

        def term_eq():
            c = self.ctx()
            self.expect("|-")
            a = self.term()
            self.expect("==")
            b = self.term()
            self.expect(":")
            return A.TermEqJ(c, a, b, self.type_(), pos=p)

        def term_j():
            c = self.ctx()
            self.expect("|-")
            a = self.term()
            self.expect(":")
            return A.TermJ(c, a, self.type_(), pos=p)

        def type_eq():
            c = self.ctx()
            self.expect("|-")
            a = self.type_()
            self.expect("==")
            b = self.type_()
            self.end_decl()
            return A.TypeEqJ(c, a, b, pos=p)

        def subst_j():
            s = self.subst()
            self.expect(":")
            d = self.ctx()
            self.expect("->")
            return A.SubstJ(s, d, self.ctx(), pos=p)

        def subst_eq():
            s = self.subst()
            self.expect("==")
            u = self.subst()
            self.expect(":")
            d = self.ctx()
            self.expect("->")
            return A.SubstEqJ(s, u, d, self.ctx(), pos=p)

        return self.choice(ctx_context, ctx_eq, type_j, term_eq, term_j, type_eq, subst_j, subst_eq)

    # contexts

    def ctx(self):
        p = self.pos()
        if self.accept("D"):
            c = A.SimplexCtx(self.nat(), pos=p)
        elif self.accept("("):
            c = self.ctx()
            self.expect(")")
        else:
            c = A.NamedCtx(self.ident(), pos=p)
        while self.at("."):
            p = self.pos()
            self.i += 1
            c = A.Extend(c, self.tchain(), pos=p)
        return c

    # types

    def type_(self):
        t = self.tchain()
        while self.at("+"):
            p = self.pos()
            self.i += 1
            t = A.Plus(t, self.tchain(), pos=p)
        return t

    def tchain(self):
        t = self.tprim()
        while self.at("["):
            p = self.pos()
            self.i += 1
            s = self.subst()
            self.expect("]")
            t = A.SubstType(t, s, pos=p)
        return t

    def tprim(self):
        p = self.pos()
        t = self.tok
        if t.kind == "kw":
            if t.text in ("Pi", "Sigma"):
                self.i += 1
                a = self.tchain()
                b = self.tchain()
                return (A.Pi if t.text == "Pi" else A.Sigma)(a, b, pos=p)
            if t.text == "Id":
                self.i += 1
                return A.IdT(self.tchain(), pos=p)
        if t.kind == "nat" and t.text in ("0", "1"):
            self.i += 1
            return A.Zero(pos=p) if t.text == "0" else A.One(pos=p)
        if t.kind == "ident":
            self.i += 1
            return A.NamedType(t.text, pos=p)
        if self.accept("("):
            ty = self.type_()
            self.expect(")")
            return ty
        self.fail("type")

    # terms

    def term(self):
        p = self.pos()
        if self.accept("lambda"):
            return A.Lambda(self.term(), pos=p)
        if self.accept("apply"):
            return A.Apply(self.term(), pos=p)
        if self.accept("rec"):
            t = self.tok
            if t.text in A.REC_KINDS and t.kind in ("ident", "kw"):
                self.i += 1
                kind, declared = t.text, False
            else:
                kind, declared = self.ident(), True
            args = []
            while True:
                a = self.attempt(self.mchain)
                if a is None:
                    break
                args.append(a)
            if declared:
                return A.RecDeclared(kind, tuple(args), pos=p)
            return A.Rec(kind, tuple(args), pos=p)
        return self.mchain()

    def mchain(self):
        t = self.mprim()
        while self.at("["):
            p = self.pos()
            self.i += 1
            s = self.subst()
            self.expect("]")
            t = A.SubstTerm(t, s, pos=p)
        return t

    _ATOMS = {"v": A.Var, "*": A.Star, "pair": A.PairC, "refl": A.Refl, "left": A.Left, "right": A.Right}

    def mprim(self):
        p = self.pos()
        t = self.tok
        if t.kind in ("kw", "sym") and t.text in self._ATOMS:
            self.i += 1
            return self._ATOMS[t.text](pos=p)
        if t.kind == "ident":
            self.i += 1
            return A.NamedTerm(t.text, pos=p)
        if self.accept("("):
            m = self.term()
            if self.accept(":"):
                ty = self.type_()
                self.expect(")")
                return A.Ascribe(m, ty, pos=p)
            self.expect(")")
            return m
        self.fail("term")

    # substitutions

    def subst(self):
        s = self.sterm()
        while self.at("o"):
            p = self.pos()
            self.i += 1
            s = A.Compose(s, self.sterm(), pos=p)
        return s

    def sterm(self):
        s = self.sprim()
        while self.at("."):
            p = self.pos()
            self.i += 1
            s = A.LiftSubst(s, self.tchain(), pos=p)
        return s

    def sprim(self):
        p = self.pos()
        if self.accept("id"):
            return A.Identity(pos=p)
        if self.accept("down"):
            return A.Project(pos=p)
        if self.tok.kind == "face":
            return A.FaceMap(self.face(), pos=p)

        def paren():
            self.expect("(")
            s = self.subst()
            self.expect(")")
            return s

        def evaluation():
            m = self.mchain()
            self.expect("!")
            return A.Eval(m, pos=p)

        return self.choice(paren, evaluation)


def _run(text: str, fn):
    p = Parser(text)
    try:
        out = fn(p)
        if p.tok.kind != "eof":
            p.fail("end of input")
        return out
    except _Fail:
        raise p.error() from None


def parse(text: str) -> list:
    """Parse a whole file into declarations; raises SdbSyntaxError with a position."""
    return _run(text, Parser.file)


def parse_type(text: str):
    return _run(text, Parser.type_)


def parse_term(text: str):
    return _run(text, Parser.term)


def parse_subst(text: str):
    return _run(text, Parser.subst)


def parse_ctx(text: str):
    return _run(text, Parser.ctx)


def parse_judgement(text: str):
    """Parse one judgement, with or without the leading ``judgement`` keyword."""
    text = text.strip()
    if not text.startswith("judgement"):
        return _run(text, Parser.judgement)
    return _run(text, Parser.judgement_decl).judgement
