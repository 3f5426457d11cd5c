"""The equational law suite of the model.

Every law is an exact equality between model objects built from a random
case. A failing case is shrunk (rows and faces deleted while it keeps
failing) and reported as JSON that :func:`replay` re-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .complex import compose, face_map, identity
from .errors import Exhausted, SdbError
from .gen import GenConfig, decode_case, default_ops, encode_case, gen_case, shrink_case
from .instance import FullTuple, count_full_tuples, validate_instance

__all__ = ["Law", "LawResult", "LAWS", "law_names", "run_law", "run_laws", "format_report", "replay"]


@dataclass(frozen=True)
class Law:
    name: str
    shape: tuple
    check: Callable  # (case, ops) -> bool
    exhaustive: Callable | None = None  # ops -> (cases run, first failing input or None)


@dataclass
class LawResult:
    law: str
    cases: int
    skipped: int = 0
    counterexample: str | None = None  # JSON of the shrunken case
    shrink_steps: int = 0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.counterexample is None and not self.detail


# shapes

X_ = ("X", "complex", None)
J_ = ("J", "instance", "X")
F_ = ("f", "display", "X")
G_ = ("g", "display", ("dom", "f"))
H_ = ("h", "display", ("dom", "g"))
E = ("el", "X", "J")
G_OVER_E = ("G", "instance", E)
T_J = ("t", "tuple", "J")
T_G = ("t", "tuple", "G")


def _law(name, shape, exhaustive=None):
    def wrap(fn):
        LAWS.append(Law(name, tuple(shape), fn, exhaustive))
        return fn

    return wrap


LAWS: list[Law] = []


# simplicial identities, exhaustive


def _simplicial(ops, max_n: int = 5):
    n_cases = 0
    for n in range(max_n + 1):
        for j in range(n + 3):
            for i in range(j):
                n_cases += 1
                lhs = compose(face_map(n + 1, j), face_map(n, i))
                rhs = compose(face_map(n + 1, i), face_map(n, j - 1))
                if lhs != rhs:
                    return n_cases, f"n={n} i={i} j={j}"
    return n_cases, None


LAWS.append(Law("simplicial-identity", (), lambda c, ops: True, _simplicial))


# morphisms and substitution


@_law("compose-assoc", [X_, F_, G_, H_])
def _(c, ops):
    f, g, h = c["f"], c["g"], c["h"]
    return compose(compose(f, g), h) == compose(f, compose(g, h))


@_law("compose-unit", [X_, F_])
def _(c, ops):
    f = c["f"]
    return compose(identity(f.dst), f) == f == compose(f, identity(f.src))


@_law("subst-functor", [X_, J_, F_, G_])
def _(c, ops):
    J, f, g = c["J"], c["f"], c["g"]
    sub = ops.substitute
    return sub(sub(J, f), g) == sub(J, compose(f, g)) and sub(J, identity(c["X"])) == J


@_law("tuple-subst-functor", [X_, J_, T_J, F_, G_])
def _(c, ops):
    t, f, g = c["t"], c["f"], c["g"]
    st = ops.subst_tuple
    return st(st(t, f), g) == st(t, compose(f, g)) and st(t, identity(c["X"])) == t


@_law("display-tuple-form", [X_, J_, F_])
def _(c, ops):
    try:
        validate_instance(ops.substitute(c["J"], c["f"]))
    except SdbError:
        return False
    return True


@_law("terminal-stable", [X_, F_])
def _(c, ops):
    f = c["f"]
    return (
        ops.substitute(ops.terminal(f.dst), f) == ops.terminal(f.src)
        and ops.subst_tuple(ops.star_tuple(f.dst), f) == ops.star_tuple(f.src)
        and len(ops.full_tuples(ops.terminal(f.dst))) == 1
    )


@_law("elements-display", [X_, J_, F_, T_J])
def _(c, ops):
    X, J, f, t = c["X"], c["J"], c["f"], c["t"]
    return ops.elements(X, J)[1].display and ops.lift(f, J).display and ops.section(t).display


@_law("tuplify-idempotent", [X_, J_])
def _(c, ops):
    from .instance import restrict_row

    J = c["J"]
    again = ops.tuplify(J.base, J.rows, lambda x, y, k: restrict_row(k, x, y))
    return again == J


# the equations of substitution


@_law("section-projection", [X_, J_, T_J])
def _(c, ops):
    X, J, t = c["X"], c["J"], c["t"]
    E_, p = ops.elements(X, J)
    th = ops.section(t)
    return compose(p, th) == identity(X) and ops.subst_tuple(ops.generic_element(X, J), th) == t


@_law("lift-projection", [X_, J_, F_])
def _(c, ops):
    X, J, f = c["X"], c["J"], c["f"]
    Jf = ops.substitute(J, f)
    _, pJ = ops.elements(X, J)
    _, pJf = ops.elements(f.src, Jf)
    return compose(pJ, ops.lift(f, J)) == compose(f, pJf)


@_law("lift-section", [X_, J_, T_J, F_])
def _(c, ops):
    J, t, f = c["J"], c["t"], c["f"]
    lhs = compose(ops.lift(f, J), ops.section(ops.subst_tuple(t, f)))
    return lhs == compose(ops.section(t), f)


@_law("generic-lift", [X_, J_, F_])
def _(c, ops):
    X, J, f = c["X"], c["J"], c["f"]
    lhs = ops.subst_tuple(ops.generic_element(X, J), ops.lift(f, J))
    return lhs == ops.generic_element(f.src, ops.substitute(J, f))


@_law("lift-compose", [X_, J_, F_, G_])
def _(c, ops):
    J, f, g = c["J"], c["f"], c["g"]
    return ops.lift(compose(f, g), J) == compose(ops.lift(f, J), ops.lift(g, ops.substitute(J, f)))


@_law("diagonal-section", [X_, J_])
def _(c, ops):
    X, J = c["X"], c["J"]
    E_, p = ops.elements(X, J)
    lhs = compose(ops.lift(p, J), ops.section(ops.generic_element(X, J)))
    return lhs == identity(E_)


# dependent sum and product


@_law("sigma-subst", [X_, J_, G_OVER_E, F_])
def _(c, ops):
    X, J, G, f = c["X"], c["J"], c["G"], c["f"]
    lhs = ops.substitute(ops.sigma(X, J, G), f)
    ft = ops.lift(f, J)
    return lhs == ops.sigma(f.src, ops.substitute(J, f), ops.substitute(G, ft))


@_law("pi-subst", [X_, J_, G_OVER_E, F_])
def _(c, ops):
    X, J, G, f = c["X"], c["J"], c["G"], c["f"]
    lhs = ops.substitute(ops.pi(X, J, G), f)
    ft = ops.lift(f, J)
    return lhs == ops.pi(f.src, ops.substitute(J, f), ops.substitute(G, ft))


@_law("pi-ap-lambda", [X_, J_, G_OVER_E, T_G])
def _(c, ops):
    X, J, G, t = c["X"], c["J"], c["G"], c["t"]
    return ops.apply_tuple(X, J, G, ops.lambda_tuple(X, J, G, t)) == t


@_law("lambda-subst", [X_, J_, G_OVER_E, T_G, F_])
def _(c, ops):
    X, J, G, t, f = c["X"], c["J"], c["G"], c["t"], c["f"]
    ft = ops.lift(f, J)
    lhs = ops.subst_tuple(ops.lambda_tuple(X, J, G, t), f)
    Jf, Gf = ops.substitute(J, f), ops.substitute(G, ft)
    return lhs == ops.lambda_tuple(f.src, Jf, Gf, ops.subst_tuple(t, ft))


@_law("pi-eta", [X_, J_, G_OVER_E, ("s", "tuple", ("pi", "X", "J", "G"))])
def _(c, ops):
    X, J, G, s = c["X"], c["J"], c["G"], c["s"]
    return ops.lambda_tuple(X, J, G, ops.apply_tuple(X, J, G, s)) == s


@_law("pi-bijection", [X_, J_, G_OVER_E])
def _(c, ops):
    X, J, G = c["X"], c["J"], c["G"]
    return count_full_tuples(ops.pi(X, J, G)) == count_full_tuples(G)


@_law("sigma-comp", [X_, J_, G_OVER_E, ("C", "instance", ("elim_base", "sigma", "X", ["J", "G"])),
                     ("c", "tuple", ("subst", "C", ("psi", "sigma", "X", ["J", "G"], 0)))])
def _(c, ops):
    X, types, C = c["X"], [c["J"], c["G"]], c["C"]
    _, maps = ops.elimination_maps("sigma", X, types)
    r = ops.eliminate("sigma", X, types, C, [c["c"]])
    return ops.subst_tuple(r, maps[0]) == c["c"]


@_law("id-comp", [X_, J_, ("C", "instance", ("elim_base", "id", "X", ["J"])),
                  ("c", "tuple", ("subst", "C", ("psi", "id", "X", ["J"], 0)))])
def _(c, ops):
    X, types, C = c["X"], [c["J"]], c["C"]
    _, maps = ops.elimination_maps("id", X, types)
    r = ops.eliminate("id", X, types, C, [c["c"]])
    return ops.subst_tuple(r, maps[0]) == c["c"]


_PLUS = [X_, ("I", "instance", "X"), J_, ("C", "instance", ("elim_base", "plus", "X", ["I", "J"])),
         ("c0", "tuple", ("subst", "C", ("psi", "plus", "X", ["I", "J"], 0))),
         ("c1", "tuple", ("subst", "C", ("psi", "plus", "X", ["I", "J"], 1)))]


def _plus_comp(c, ops, side):
    X, types, C = c["X"], [c["I"], c["J"]], c["C"]
    _, maps = ops.elimination_maps("plus", X, types)
    r = ops.eliminate("plus", X, types, C, [c["c0"], c["c1"]])
    return ops.subst_tuple(r, maps[side]) == c[f"c{side}"]


LAWS.append(Law("plus-comp-left", tuple(_PLUS), lambda c, ops: _plus_comp(c, ops, 0)))
LAWS.append(Law("plus-comp-right", tuple(_PLUS), lambda c, ops: _plus_comp(c, ops, 1)))


@_law("one-comp", [X_, ("C", "instance", ("elim_base", "one", "X", [])),
                   ("c", "tuple", ("subst", "C", ("psi", "one", "X", [], 0)))])
def _(c, ops):
    X, C = c["X"], c["C"]
    _, maps = ops.elimination_maps("one", X, [])
    r = ops.eliminate("one", X, [], C, [c["c"]])
    return ops.subst_tuple(r, maps[0]) == c["c"]


@_law("zero-elim", [X_, ("C", "instance", ("elim_base", "zero", "X", []))])
def _(c, ops):
    X, C = c["X"], c["C"]
    r = ops.eliminate("zero", X, [], C, [])
    return isinstance(r, FullTuple) and not r.choice and C.base.is_empty


# running


def law_names() -> list[str]:
    return [law.name for law in LAWS]


def _fails(law: Law, ops) -> Callable[[dict], bool]:
    def fails(case):
        try:
            return not law.check(case, ops)
        except SdbError:
            return True

    return fails


def run_law(law: Law, cfg: GenConfig, ops=None) -> LawResult:
    ops = ops or default_ops()
    if cfg.cases == 0:
        return LawResult(law.name, 0)
    if law.exhaustive is not None:
        n, bad = law.exhaustive(ops)
        return LawResult(law.name, n, detail=f"fails at {bad}" if bad else "")
    fails = _fails(law, ops)
    res = LawResult(law.name, 0)
    for i in range(cfg.cases):
        try:
            case = gen_case(cfg, law.shape, cfg.rng(law.name, i), ops)
        except Exhausted:
            res.skipped += 1
            continue
        res.cases += 1
        if fails(case):
            small, steps = shrink_case(law.shape, case, fails, ops)
            res.counterexample = encode_case(small)
            res.shrink_steps = steps
            res.detail = f"case {i}"
            break
    return res


def run_laws(cfg: GenConfig, laws=None, ops=None) -> list[LawResult]:
    """Run the named laws (all by default) in suite order."""
    ops = ops or default_ops()
    wanted = set(laws) if laws else None
    if wanted:
        unknown = wanted - set(law_names())
        if unknown:
            raise KeyError(f"unknown law(s): {', '.join(sorted(unknown))}")
    return [run_law(law, cfg, ops) for law in LAWS if wanted is None or law.name in wanted]


def replay(law_name: str, case_json: str, ops=None) -> bool:
    """True when the serialized case still violates the law."""
    ops = ops or default_ops()
    law = next(l for l in LAWS if l.name == law_name)
    return _fails(law, ops)(decode_case(case_json))


def format_report(cfg: GenConfig, results: list[LawResult]) -> str:
    lines = [
        f"law suite: seed {cfg.seed}, {cfg.cases} cases per law, "
        f"attrs <= {cfg.max_attrs}, dim <= {cfg.max_dim}, rows per cell <= {cfg.max_rows_per_cell}"
    ]
    if cfg.cases == 0:
        lines.append("no cases requested")
        return "\n".join(lines) + "\n"
    width = max((len(r.law) for r in results), default=0)
    for r in results:
        status = "ok" if r.ok else "FAIL"
        extra = f", {r.skipped} skipped" if r.skipped else ""
        lines.append(f"{r.law.ljust(width)}  {status:4}  {r.cases} cases{extra}")
        if not r.ok:
            if r.detail:
                lines.append(f"  first failure: {r.detail}")
            if r.counterexample:
                lines.append(f"  counterexample after {r.shrink_steps} shrink steps: {r.counterexample}")
    failing = sum(not r.ok for r in results)
    lines.append(f"summary: {len(results)} laws, {failing} failing")
    return "\n".join(lines) + "\n"
