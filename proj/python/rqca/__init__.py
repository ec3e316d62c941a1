"""Root-of-unity quantum cluster algebras: seeds, mutation, exchange graphs and discriminants."""

import json as _json

from . import _core
from ._core import (
    BudgetExceeded,
    Error,
    Seed,
    UsageError,
    counterexample_seed,
    degree_identity,
    finite_type_seed,
    mutate,
    satisfies_coprime,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Seed",
    "UsageError",
    "counterexample_seed",
    "degree_identity",
    "exchange_identity",
    "explore",
    "finite_type_seed",
    "frobenius_check",
    "load_seed",
    "mutate",
    "satisfies_coprime",
    "selftest",
    "shadow_iso",
    "torus_discriminant",
    "unipotent_discriminant",
    "unipotent_seed",
    "weyl_discriminant",
    "weyl_seed",
]


def load_seed(data):
    """Seed from a dict or JSON text in the seed schema (1-based indices)."""
    if not isinstance(data, str):
        data = _json.dumps(data)
    return Seed.from_json(data)


def _decoded(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


explore = _decoded(_core.explore)
shadow_iso = _decoded(_core.shadow_iso)
exchange_identity = _decoded(_core.exchange_identity)
frobenius_check = _decoded(_core.frobenius_check)
torus_discriminant = _decoded(_core.torus_discriminant)
weyl_discriminant = _decoded(_core.weyl_discriminant)
weyl_seed = _decoded(_core.weyl_seed)
unipotent_seed = _decoded(_core.unipotent_seed)
unipotent_discriminant = _decoded(_core.unipotent_discriminant)
selftest = _decoded(_core.selftest)
