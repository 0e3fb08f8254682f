"""Exact Milnor/Tjurina invariants of isolated hypersurface germs and their joins.

Thin wrappers over the compiled core; every report arrives as plain dicts
decoded from the core's canonical JSON.
"""

import json

from ._core import CheckFailedError, NonIsolatedError  # noqa: F401
from . import _core

__all__ = [
    "CheckFailedError",
    "NonIsolatedError",
    "catalog_text",
    "family_scan",
    "invariants",
    "join",
]


def invariants(text, vars):
    """Invariant report for one germ given as polynomial text."""
    return json.loads(_core.invariants_json(text, list(vars)))


def join(text1, vars1, text2, vars2, mode="auto", oracle=False):
    """Join-identity report for a pair of germs."""
    return json.loads(_core.join_json(text1, list(vars1), text2, list(vars2), mode, oracle))


def family_scan(n, max_terms=1):
    """tau across one-coefficient deformations of y^n - x^(n+1)."""
    return json.loads(_core.family_scan_json(n, max_terms))


def catalog_text():
    """The bundled germ catalog, germ-file format."""
    return _core.catalog_text()
