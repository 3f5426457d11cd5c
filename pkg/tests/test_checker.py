import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simpdb.checker import check_file, check_source
from simpdb.errors import SdbSyntaxError
from simpdb.instance import count_full_tuples, full_tuples
from simpdb.semantics import pi

from .conftest import DATA


def statuses(report):
    return [(v.label, v.status) for v in report.entries]


def test_si_file_checks():
    r = check_file(DATA / "si.sdb")
    assert r.ok and not r.breach
    assert r.counts() == {"declared": 5, "holds": 4}


def test_violated_premise_is_rejected():
    r = check_file(DATA / "bad_premise.sdb")
    (bad,) = [v for v in r.entries if not v.ok]
    assert bad.label == "query bad" and bad.status == "ill-formed"
    assert "EquationPremiseViolated" in bad.message


def test_compressed_file_has_the_same_counts():
    env = check_file(DATA / "si_compressed.sdb").env
    I = env.types["I"].inst
    assert count_full_tuples(I) == 2
    assert len(full_tuples(env.types["join"].inst)) == 2


def test_failing_equality_has_witness():
    src = (DATA / "si.sdb").read_text() + "\njudgement D 2 |- Pi S I == Sigma S I\n"
    r = check_source(src)
    last = r.entries[-1]
    assert last.status == "fails"
    # Σ_S I is empty at 02 because S is; the join has four rows there
    assert last.witness.startswith("face 02: 4 rows vs 0 rows;")
    assert not r.ok


def test_environment_errors():
    src = "schema S over D 1 { gen A : d0 }\nschema S over D 1 { gen B : d1 }\nquery x = Pi S T\n"
    r = check_source(src)
    assert statuses(r)[1][1] == "ill-formed" and "DuplicateName" in r.entries[1].message
    assert "UnboundName" in r.entries[2].message


def test_syntax_error_propagates():
    with pytest.raises(SdbSyntaxError):
        check_source("schema S over D 1 {")


def test_substitution_judgements():
    r = check_source("judgement d2 o d0 == d0 o d1 : D 0 -> D 2\njudgement d2 o d0 == d0 o d0 : D 0 -> D 2\n")
    assert [v.status for v in r.entries] == ["holds", "fails"]
    assert r.entries[1].witness.startswith("vertex ")


def test_report_format():
    text = check_file(DATA / "si.sdb").format()
    lines = text.splitlines()
    assert lines[0].startswith("# ") and lines[1].startswith("# ")
    assert lines[-1] == "summary: 5 declared, 4 holds"


# rules instantiated on random declarations


def random_source(rng):
    """A random schema S over D n with face equations, and a free instance I of S."""
    n = rng.randint(0, 3)
    gens, eqs = [], []
    for g in range(rng.randint(1, 3)):
        m = rng.randint(0, n)
        path = [rng.randint(0, n - k) for k in range(m)]
        gens.append((f"G{g}", path))
    top = list(gens)
    for name, path in top:
        k = n - len(path)
        for i in range(k + 1):
            if k >= 1 and rng.random() < 0.4:
                h = f"{name}f{i}"
                gens.append((h, path + [i]))
                eqs.append(f"  eq {name}[d{i}] = {h}[id]")

    def show(path):
        return "id" if not path else ".".join(f"d{i}" for i in path)

    lines = [f"schema S over D {n} {{"] + [f"  gen {g} : {show(p)}" for g, p in gens] + eqs + ["}"]
    lines += ["instance I of S {"]
    for g, _ in rng.sample(gens, rng.randint(1, len(gens))):
        lines += [f"  gen {g.lower()}{j} over {g}" for j in range(rng.randint(1, 2))]
    lines += ["}"]
    return n, "\n".join(lines) + "\n"


def derivable(n):
    D = f"D {n}"
    lam = "(lambda v : Pi S S[down])"
    return [
        f"judgement {D} |- S type",
        f"judgement {D} . S |- I type",
        f"judgement {D} |- Pi S I type",
        f"judgement {D} |- Sigma S I type",
        f"judgement {D} . S |- apply {lam} == v : S[down]",
        f"judgement {D} |- lambda (apply {lam}) == {lam} : Pi S S[down]",
        f"judgement {D} |- S[id] == S",
        f"judgement {D} . S |- S[down][down][v!] == S[down]",
        f"judgement down o v! == id : {D} . S -> {D} . S",
        f"judgement {D} . S |- (I + I)[id] == I + I",
        f"judgement {D} . S . I |- pair : (Sigma S I)[down][down]",
        f"judgement {D} . S |- (refl : (Id S)[v!]) == refl : (Id S)[v!]",
        f"judgement {D} . S . S[down] |- Id S type",
    ]


@given(st.integers(0, 2**32 - 1))
def test_derivable_judgements_hold_on_random_sources(seed):
    n, src = random_source(random.Random(seed))
    r = check_source(src + "\n".join(derivable(n)) + "\n")
    bad = [v.format() for v in r.entries if not v.ok]
    assert not bad, src + "\n".join(bad)


@given(st.integers(0, 2**32 - 1))
def test_pi_terms_correspond_to_tuples_on_random_sources(seed):
    n, src = random_source(random.Random(seed))
    env = check_source(src).env
    assert count_full_tuples(env.types["I"].inst) == len(full_tuples(pi(*piargs(env))))


def piargs(env):
    S = env.types["S"].inst
    return S.base, S, env.types["I"].inst


@given(st.integers(0, 2**32 - 1))
def test_sum_is_not_its_summand(seed):
    n, src = random_source(random.Random(seed))
    r = check_source(src + f"judgement D {n} . S |- I + I == I\n")
    assert r.entries[-1].status == "fails" and r.entries[-1].witness
