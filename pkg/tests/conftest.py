import random
from itertools import product
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from simpdb.gen import GenConfig, gen_complex, gen_display, gen_instance
from simpdb.instance import elements, row_value

DATA = Path(__file__).resolve().parent.parent / "src" / "simpdb" / "data"

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CFG = GenConfig()


@pytest.fixture
def data_dir():
    return DATA


# strategies: hypothesis draws the seed, the library generators build the object

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def complexes(draw):
    return gen_complex(random.Random(draw(seeds)), CFG)


@st.composite
def instances(draw, plant=0.6):
    rng = random.Random(draw(seeds))
    X = gen_complex(rng, CFG)
    return gen_instance(rng, CFG, X, plant=plant)


@st.composite
def displays(draw):
    """(f, J) with J over the target of a random display map f."""
    rng = random.Random(draw(seeds))
    X = gen_complex(rng, CFG)
    J = gen_instance(rng, CFG, X)
    return gen_display(rng, CFG, X), J


@st.composite
def fibred(draw):
    """(X, J, G) with G over the category of elements of J."""
    rng = random.Random(draw(seeds))
    X = gen_complex(rng, CFG)
    J = gen_instance(rng, CFG, X)
    E, _ = elements(X, J)
    return X, J, gen_instance(rng, CFG, E)


# brute-force oracles, written without the library's row builders


def has_row(J, face, assignment):
    """Some row of J at face takes the given value at every vertex."""
    return any(all(row_value(r, face, u) == assignment[u] for u in face) for r in J.rows[face])


def brute_full_tuples(J):
    """Every choice of one value per attribute, filtered by every face."""
    X = J.base
    out = []
    for vals in product(*(J.rows[(v,)] for v in X.vertices)):
        choice = dict(zip(X.vertices, vals))
        if all(has_row(J, f, choice) for f in X.faces):
            out.append(choice)
    return out
