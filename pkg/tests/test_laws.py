import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simpdb.complex import Complex, SchemaMorphism
from simpdb.gen import (
    GenConfig,
    decode_case,
    default_ops,
    encode_case,
    gen_case,
    gen_complex,
    gen_display,
    gen_instance,
    shrink_case,
)
from simpdb.instance import FullTuple, Instance, elements, validate_full_tuple, validate_instance
from simpdb.laws import LAWS, format_report, law_names, replay, run_law, run_laws
from simpdb.mutants import MUTANTS, mutant_ops

CFG = GenConfig()
BY_NAME = {law.name: law for law in LAWS}


def size(case):
    n = 0
    for obj in case.values():
        if isinstance(obj, Complex):
            n += len(obj.faces)
        elif isinstance(obj, Instance):
            n += obj.size() + len(obj.base.faces)
        elif isinstance(obj, SchemaMorphism):
            n += len(obj.src.faces)
    return n


def test_config_bounds():
    with pytest.raises(ValueError):
        GenConfig(max_attrs=0)
    with pytest.raises(ValueError):
        GenConfig(cases=-1)
    assert CFG.rng("x", 3).random() == CFG.rng("x", 3).random()
    assert CFG.rng("x", 3).random() != CFG.rng("x", 4).random()


@given(st.integers(0, 2**32 - 1))
def test_generators_respect_bounds(seed):
    rng = random.Random(seed)
    X = gen_complex(rng, CFG)
    assert 1 <= len(X.vertices) <= CFG.max_attrs
    assert max(len(f) for f in X.faces) <= CFG.max_dim + 1
    J = gen_instance(rng, CFG, X)
    validate_instance(J)
    assert all(len(rs) <= CFG.max_rows_per_cell for rs in J.rows.values())
    f = gen_display(rng, CFG, X)
    assert f.display and f.dst == X


def test_simplicial_law_is_exhaustive():
    r = run_law(BY_NAME["simplicial-identity"], CFG)
    assert r.ok and r.cases == sum((k + 3) * (k + 2) // 2 for k in range(6)) == 83


def test_law_names_are_unique():
    assert len(law_names()) == len(set(law_names())) == len(LAWS)


@pytest.mark.parametrize("name", [law.name for law in LAWS])
def test_each_law_holds_briefly(name):
    r = run_law(BY_NAME[name], GenConfig(seed=7, cases=40))
    assert r.ok, r
    assert r.skipped == 0


@pytest.mark.parametrize("name", [law.name for law in LAWS if law.exhaustive is None])
def test_cases_serialize(name):
    law = BY_NAME[name]
    case = gen_case(CFG, law.shape, CFG.rng(name, 0))
    back = decode_case(encode_case(case))
    assert back.keys() == case.keys()
    for k, v in case.items():
        if isinstance(v, FullTuple):
            assert back[k].choice == v.choice
            validate_full_tuple(back[k])
        else:
            assert back[k] == v
    assert law.check(back, default_ops())


def test_unknown_law():
    with pytest.raises(KeyError):
        run_laws(CFG, ["no-such-law"])


def test_mutant_is_caught_and_shrunk():
    ops = mutant_ops("pi-no-compat")
    cfg = GenConfig(cases=200)
    results = {r.law: r for r in run_laws(cfg, ["pi-bijection", "pi-eta", "pi-subst"], ops)}
    caught = results["pi-bijection"]
    assert not caught.ok and caught.counterexample
    # the shrunken case still fails under the mutant and passes under the real operations
    assert replay("pi-bijection", caught.counterexample, ops)
    assert not replay("pi-bijection", caught.counterexample)
    assert not results["pi-eta"].ok
    text = format_report(cfg, list(results.values()))
    assert "FAIL" in text and "counterexample after" in text


def test_shrinking_reduces_and_keeps_failure():
    ops = mutant_ops("pi-no-compat")
    law = BY_NAME["pi-bijection"]

    def fails(c):
        return not law.check(c, ops)

    for i in range(300):
        case = gen_case(CFG, law.shape, CFG.rng(law.name, i), ops)
        if fails(case):
            break
    else:
        pytest.fail("mutant never failed")
    small, steps = shrink_case(law.shape, case, fails, ops)
    assert fails(small)
    assert size(small) <= size(case)
    assert steps >= 0


def test_mutant_registry():
    assert set(MUTANTS) == {"pi-no-compat"}
    with pytest.raises(KeyError):
        mutant_ops("nope")


def test_skip_free_generation():
    # instances that tuples are drawn from always carry one
    law = BY_NAME["pi-ap-lambda"]
    for i in range(50):
        case = gen_case(CFG, law.shape, CFG.rng("skip", i))
        assert case["t"].instance == case["G"]
        E, _ = elements(case["X"], case["J"])
        assert case["G"].base == E
