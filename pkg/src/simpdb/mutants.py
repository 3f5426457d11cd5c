"""Deliberately broken operations, used to show that the law suite has teeth."""

from __future__ import annotations

from itertools import product

from .complex import Complex
from .gen import default_ops
from .instance import Instance
from .semantics import _attribute_families, _over_elements
from .values import Row

__all__ = ["MUTANTS", "mutant_ops", "pi_without_compatibility"]


def pi_without_compatibility(X: Complex, J: Instance, G: Instance) -> Instance:
    """Π_J G with the fibre compatibility condition dropped: every combination of attribute families."""
    _over_elements(X, J, G)
    fams = _attribute_families(X, J, G)
    rows = {}
    for x in X.faces:
        if len(x) == 1:
            rows[x] = fams[x[0]]
        else:
            rows[x] = [Row.from_sorted(tuple(zip(x, c))) for c in product(*(fams[v] for v in x))]
    return Instance(X, rows)


MUTANTS = {"pi-no-compat": {"pi": pi_without_compatibility}}


def mutant_ops(name: str):
    ops = default_ops()
    for k, v in MUTANTS[name].items():
        setattr(ops, k, v)
    return ops
