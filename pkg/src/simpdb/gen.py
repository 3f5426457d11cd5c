"""Random model objects for the law harness, with shrinking and JSON round-tripping.

A *shape* is a list of named steps, each producing one primary object from
the objects before it:

    ("X", "complex", None)                 a random complex
    ("J", "instance", base_expr)           a random instance over a complex
    ("f", "display", dst_expr)             a random display map into a complex
    ("t", "tuple", inst_expr)              a uniformly chosen full tuple

Expressions name earlier objects or build derived ones (see :func:`evaluate`).
Because every dependent object is rebuilt from its expression, shrinking a
primary and *repairing* the objects after it keeps the whole case coherent.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, product
from types import SimpleNamespace

from . import instance as _inst
from . import semantics as _sem
from .complex import Complex, SchemaMorphism, _build, compose, identity, subcomplex
from .errors import Exhausted, SdbError
from .instance import FullTuple, Instance, restrict_row, sample_full_tuple, validate_full_tuple
from .values import UNIT, Atom, Family, Pair, Row, Tag, Unit, Value

__all__ = [
    "GenConfig",
    "default_ops",
    "gen_complex",
    "gen_display",
    "gen_instance",
    "gen_tuple",
    "gen_case",
    "evaluate",
    "shrink_case",
    "encode_value",
    "decode_value",
    "encode_case",
    "decode_case",
]

LETTERS = "ABCDEFGH"
RETRIES = 20


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    cases: int = 1000
    max_attrs: int = 4
    max_dim: int = 2
    max_rows_per_cell: int = 3

    def __post_init__(self):
        if not 1 <= self.max_attrs <= 6:
            raise ValueError("max_attrs must be between 1 and 6")
        if self.max_dim < 0:
            raise ValueError("max_dim must be at least 0")
        if self.max_rows_per_cell < 1:
            raise ValueError("max_rows_per_cell must be at least 1")
        if self.cases < 0:
            raise ValueError("cases must be at least 0")

    def rng(self, law: str, i: int) -> random.Random:
        """The stream of case i of a law; independent of every other case."""
        return random.Random(f"{self.seed}:{law}:{i}")


def default_ops() -> SimpleNamespace:
    """The operations the laws go through; swapping one in is how mutants are built."""
    return SimpleNamespace(
        substitute=_inst.substitute,
        subst_tuple=_inst.subst_tuple,
        elements=_inst.elements,
        lift=_inst.lift,
        section=_inst.section,
        generic_element=_inst.generic_element,
        full_tuples=_inst.full_tuples,
        terminal=_inst.terminal,
        initial=_inst.initial,
        tuplify=_inst.tuplify,
        sigma=_sem.sigma,
        pair_tuple=_sem.pair_tuple,
        pi=_sem.pi,
        lambda_tuple=_sem.lambda_tuple,
        apply_tuple=_sem.apply_tuple,
        identity_type=_sem.identity_type,
        refl_tuple=_sem.refl_tuple,
        plus=_sem.plus,
        left_tuple=_sem.left_tuple,
        right_tuple=_sem.right_tuple,
        star_tuple=_sem.star_tuple,
        elimination_maps=_sem.elimination_maps,
        eliminate=_sem.eliminate,
    )


# primaries


def _random_faces(rng, verts, ok, max_dim, probs=(0.6, 0.45, 0.35)):
    """Random downward-closed family of faces among the subsets accepted by ``ok``."""
    faces = [(v,) for v in verts]
    have = set(faces)
    for k in range(2, min(max_dim + 1, len(verts)) + 1):
        p = probs[min(k - 2, len(probs) - 1)]
        for c in combinations(verts, k):
            if ok(c) and all(s in have for s in combinations(c, k - 1)) and rng.random() < p:
                faces.append(c)
                have.add(c)
    return faces


def gen_complex(rng: random.Random, cfg: GenConfig, prefix: str = "") -> Complex:
    n = rng.randint(1, cfg.max_attrs)
    verts = sorted(Atom(prefix + LETTERS[i]) for i in range(n))
    return _build(verts, _random_faces(rng, verts, lambda c: True, cfg.max_dim))


def gen_display(rng: random.Random, cfg: GenConfig, dst: Complex, prefix: str = "y") -> SchemaMorphism:
    """A random display map into dst, built by extending a random vertex matching."""
    if dst.is_empty:
        raise Exhausted("display map into the empty complex")
    roll = rng.random()
    if roll < 0.15:
        return identity(dst)
    if roll < 0.35:
        closed, have = [], set()
        for f in dst.faces:  # faces come in dimension order, so one pass stays downward closed
            if len(f) == 1 or (rng.random() < 0.7 and all(s in have for s in combinations(f, len(f) - 1))):
                closed.append(f)
                have.add(f)
        return _inclusion(subcomplex(dst, closed), dst)
    for _ in range(RETRIES):
        n = rng.randint(1, cfg.max_attrs)
        verts = sorted(Atom(prefix + LETTERS[i].lower()) for i in range(n))
        targets = dst.vertices
        m = {v: rng.choice(targets) for v in verts}

        def ok(c):
            img = tuple(sorted({m[v] for v in c}))
            return len(img) == len(c) and img in dst

        faces = _random_faces(rng, verts, ok, cfg.max_dim, probs=(0.75, 0.6, 0.5))
        f = SchemaMorphism(_build(verts, faces), dst, m)
        if f.display:
            return f
    raise Exhausted("display map")  # pragma: no cover - the construction is display by design


def _inclusion(sub: Complex, X: Complex) -> SchemaMorphism:
    f = SchemaMorphism(sub, X, {v: v for v in sub.vertices})
    f._display = True
    return f


def _pool(cfg: GenConfig) -> list[Atom]:
    return [Atom(c) for c in "pqrstuvw"[: cfg.max_rows_per_cell + 1]]


def gen_instance(rng: random.Random, cfg: GenConfig, X: Complex, plant: float = 0.6) -> Instance:
    """Random closed rows in tuple form; with probability ``plant`` one full tuple is planted."""
    pool = _pool(cfg)
    limit = cfg.max_rows_per_cell
    rows: dict = {}
    for v in X.vertices:
        k = 0 if plant < 1 and rng.random() < 0.08 else rng.randint(1, limit)
        rows[(v,)] = set(rng.sample(pool, k))
    planted = None
    if X.vertices and rng.random() < plant and all(rows[(v,)] for v in X.vertices):
        planted = {v: rng.choice(sorted(rows[(v,)])) for v in X.vertices}
    for f in X.faces:
        if len(f) == 1:
            continue
        subs = list(combinations(f, len(f) - 1))
        cand = []
        for vals in product(*(sorted(rows[(v,)]) for v in f)):
            r = Row.from_sorted(tuple(zip(f, vals)))
            if all(restrict_row(r, f, s) in rows[s] for s in subs):
                cand.append(r)
        chosen = set(rng.sample(cand, rng.randint(0, min(limit, len(cand)))))
        if planted is not None:
            p = Row.from_sorted(tuple((v, planted[v]) for v in f))
            if p not in chosen:
                if len(chosen) >= limit:
                    chosen.discard(sorted(chosen)[0])
                chosen.add(p)
        rows[f] = chosen
    return Instance(X, rows)


def gen_tuple(rng: random.Random, J: Instance, ops=None) -> FullTuple:
    t = sample_full_tuple(J, rng)
    if t is None:
        raise Exhausted("full tuple")
    return t


# expressions


def evaluate(expr, case: dict, ops=None):
    """Evaluate an object expression against the objects of a case."""
    ops = ops or default_ops()
    if isinstance(expr, str):
        return case[expr]
    head, *args = expr
    if head in ("psi", "elim_base"):
        kind, X, types = args[0], evaluate(args[1], case, ops), [evaluate(t, case, ops) for t in args[2]]
        base, maps = ops.elimination_maps(kind, X, types)
        return base if head == "elim_base" else maps[args[3]]
    ev = [evaluate(a, case, ops) for a in args]
    if head == "el":
        X, J = ev
        return ops.elements(X, J)[0]
    if head == "proj":
        X, J = ev
        return ops.elements(X, J)[1]
    if head == "dom":
        return ev[0].src
    if head == "base":
        return ev[0].base
    if head == "subst":
        J, f = ev
        return ops.substitute(J, f)
    if head == "lift":
        f, J = ev
        return ops.lift(f, J)
    if head == "compose":
        g, f = ev
        return compose(g, f)
    if head == "terminal":
        return ops.terminal(ev[0])
    if head == "initial":
        return ops.initial(ev[0])
    if head == "sigma":
        return ops.sigma(*ev)
    if head == "pi":
        return ops.pi(*ev)
    if head == "plus":
        return ops.plus(*ev)
    if head == "id_type":
        return ops.identity_type(*ev)
    if head == "id_base":
        # ∫(∫(X, J), J[p]), the context of an identity type
        X, J = ev
        E, p = ops.elements(X, J)
        return ops.elements(E, ops.substitute(J, p))[0]
    raise ValueError(f"unknown expression {head!r}")


# cases


def _names(expr) -> set:
    if isinstance(expr, str):
        return {expr}
    if isinstance(expr, (tuple, list)):
        return set().union(*(_names(a) for a in expr)) if expr else set()
    return set()


def gen_case(cfg: GenConfig, shape, rng: random.Random, ops=None) -> dict:
    """One case of the requested shape; raises Exhausted when it cannot be built."""
    ops = ops or default_ops()
    # instances a later tuple is drawn from always get a planted full tuple
    needed = set()
    for _, kind, arg in shape:
        if kind == "tuple":
            needed |= _names(arg)
    case: dict = {}
    for idx, (name, kind, arg) in enumerate(shape):
        if kind == "complex":
            case[name] = gen_complex(rng, cfg)
        elif kind == "instance":
            plant = 1.0 if name in needed else 0.6
            case[name] = gen_instance(rng, cfg, evaluate(arg, case, ops), plant=plant)
        elif kind == "display":
            case[name] = gen_display(rng, cfg, evaluate(arg, case, ops), prefix=f"y{idx}")
        elif kind == "tuple":
            case[name] = gen_tuple(rng, evaluate(arg, case, ops), ops)
        else:
            raise ValueError(f"unknown step kind {kind!r}")
    return case


# repair and shrinking


class _Invalid(Exception):
    pass


def _repair(kind: str, old, new_base):
    if kind == "instance":
        if old.base == new_base:
            return old
        if any(f not in old.base for f in new_base.faces):
            raise _Invalid
        return _inst.restrict_instance(old, new_base)
    if kind == "display":
        if old.dst == new_base:
            return old
        m = old.mapping
        verts = [v for v in old.src.vertices if (m[v],) in new_base]
        keep = [f for f in old.src.faces if all((m[v],) in new_base for v in f) and old.image(f) in new_base]
        src = _build(verts, keep)
        f = SchemaMorphism(src, new_base, {v: m[v] for v in verts})
        if not f.display:
            raise _Invalid
        return f
    if kind == "tuple":
        if old.instance == new_base:
            return old
        J = new_base
        try:
            return validate_full_tuple(FullTuple(J, {v: old.choice[v] for v in J.base.vertices}))
        except (KeyError, SdbError):
            raise _Invalid from None
    return old


def _rebuild(shape, case: dict, start: int, ops) -> dict:
    """Recompute every primary after ``start`` from its expression."""
    out = dict(case)
    for name, kind, arg in shape[start + 1 :]:
        if kind == "complex":
            continue
        try:
            out[name] = _repair(kind, out[name], evaluate(arg, out, ops))
        except SdbError:
            raise _Invalid from None
    return out


def _maximal_faces(X: Complex):
    covered = set()
    for f in X.faces:
        if len(f) > 1:
            covered.update(combinations(f, len(f) - 1))
    return [f for f in reversed(X.faces) if f not in covered]


def _moves(kind: str, obj):
    """Candidate one-step reductions of a primary, largest first."""
    if kind == "complex":
        for f in _maximal_faces(obj):
            keep = [g for g in obj.faces if g != f]
            yield _build([v for v in obj.vertices if (v,) != f], keep)
    elif kind == "instance":
        X = obj.base
        used: dict = {f: set() for f in X.faces}
        for f in X.faces:
            if len(f) > 1:
                for r in obj.rows[f]:
                    for s in combinations(f, len(f) - 1):
                        used[s].add(restrict_row(r, f, s))
        for f in reversed(X.faces):
            for r in reversed(obj.rows[f]):
                if r not in used[f]:
                    rows = {g: set(obj.rows[g]) for g in X.faces}
                    rows[f].discard(r)
                    yield Instance(X, rows)
    elif kind == "display":
        for f in _maximal_faces(obj.src):
            keep = [g for g in obj.src.faces if g != f]
            verts = [v for v in obj.src.vertices if (v,) != f]
            src = _build(verts, keep)
            yield SchemaMorphism(src, obj.dst, {v: obj.mapping[v] for v in verts})


def shrink_case(shape, case: dict, fails, ops=None, budget: int = 400) -> tuple[dict, int]:
    """Greedily delete rows and faces while ``fails(case)`` stays true.

    Returns the shrunken case and the number of accepted steps.
    """
    ops = ops or default_ops()
    steps = 0
    tries = 0
    improved = True
    while improved and tries < budget:
        improved = False
        for idx, (name, kind, _) in enumerate(shape):
            for cand in _moves(kind, case[name]):
                tries += 1
                if tries > budget:
                    break
                trial = dict(case)
                trial[name] = cand
                try:
                    trial = _rebuild(shape, trial, idx, ops)
                except _Invalid:
                    continue
                if fails(trial):
                    case = trial
                    steps += 1
                    improved = True
                    break
            if improved:
                break
    return case, steps


# serialization


def encode_value(v: Value):
    if isinstance(v, Atom):
        return v.token
    if isinstance(v, Unit):
        return {"unit": True}
    if isinstance(v, Pair):
        return {"pair": [encode_value(v.fst), encode_value(v.snd)]}
    if isinstance(v, Tag):
        return {"tag": [v.bit, encode_value(v.value)]}
    if isinstance(v, Row):
        return {"row": [[encode_value(k), encode_value(x)] for k, x in v.items]}
    if isinstance(v, Family):
        return {"family": [[encode_value(k), encode_value(x)] for k, x in v.items]}
    raise TypeError(f"cannot encode {v!r}")


def decode_value(d) -> Value:
    if isinstance(d, str):
        return Atom(d)
    if "unit" in d:
        return UNIT
    if "pair" in d:
        a, b = d["pair"]
        return Pair(decode_value(a), decode_value(b))
    if "tag" in d:
        bit, x = d["tag"]
        return Tag(bit, decode_value(x))
    if "row" in d:
        return Row([(decode_value(k), decode_value(x)) for k, x in d["row"]])
    if "family" in d:
        return Family([(decode_value(k), decode_value(x)) for k, x in d["family"]])
    raise ValueError(f"cannot decode {d!r}")


def _enc_complex(X: Complex):
    return {"vertices": [encode_value(v) for v in X.vertices], "faces": [[encode_value(v) for v in f] for f in X.faces]}


def _dec_complex(d) -> Complex:
    verts = [decode_value(v) for v in d["vertices"]]
    faces = [tuple(decode_value(v) for v in f) for f in d["faces"]]
    return _build(verts, faces)


def encode_object(obj):
    if isinstance(obj, Complex):
        return {"complex": _enc_complex(obj)}
    if isinstance(obj, Instance):
        rows = [[[encode_value(v) for v in f], [encode_value(r) for r in obj.rows[f]]] for f in obj.base.faces]
        return {"instance": {"base": _enc_complex(obj.base), "rows": rows}}
    if isinstance(obj, SchemaMorphism):
        return {
            "morphism": {
                "src": _enc_complex(obj.src),
                "dst": _enc_complex(obj.dst),
                "map": [[encode_value(a), encode_value(b)] for a, b in obj._items],
            }
        }
    if isinstance(obj, FullTuple):
        inner = encode_object(obj.instance)["instance"]
        return {"tuple": {"instance": inner, "choice": [[encode_value(a), encode_value(b)] for a, b in obj._items]}}
    raise TypeError(f"cannot encode {obj!r}")


def _dec_instance(d) -> Instance:
    X = _dec_complex(d["base"])
    rows = {tuple(decode_value(v) for v in f): [decode_value(r) for r in rs] for f, rs in d["rows"]}
    return _inst.validate_instance(Instance(X, rows))


def decode_object(d):
    if "complex" in d:
        return _dec_complex(d["complex"])
    if "instance" in d:
        return _dec_instance(d["instance"])
    if "morphism" in d:
        m = d["morphism"]
        return SchemaMorphism(
            _dec_complex(m["src"]), _dec_complex(m["dst"]), {decode_value(a): decode_value(b) for a, b in m["map"]}
        )
    if "tuple" in d:
        t = d["tuple"]
        J = _dec_instance(t["instance"])
        return validate_full_tuple(FullTuple(J, {decode_value(a): decode_value(b) for a, b in t["choice"]}))
    raise ValueError(f"cannot decode {d!r}")


def encode_case(case: dict) -> str:
    return json.dumps({k: encode_object(v) for k, v in case.items()}, sort_keys=True, ensure_ascii=False)


def decode_case(text: str) -> dict:
    return {k: decode_object(v) for k, v in json.loads(text).items()}
