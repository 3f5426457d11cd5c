"""Simplicial databases: schemas as simplicial complexes, instances in tuple form, and a dependent type theory over them."""

from .complex import (
    Complex,
    SchemaMorphism,
    compose,
    face_map,
    face_path,
    identity,
    make_complex,
    make_morphism,
    simplex,
)
from .instance import (
    FullTuple,
    Instance,
    elements,
    full_tuples,
    lift,
    make_full_tuple,
    make_instance,
    section,
    substitute,
    subst_tuple,
)
from .values import UNIT, Atom, Family, Pair, Row, Tag, Value

__version__ = "0.1.0"
