"""Planar central configurations of four bodies."""

import json

from . import _ccfour
from ._ccfour import Error, SCHEMA_VERSION, cayley_menger, mass_scale, sign_pattern, tetrahedron

__all__ = [
    "Error",
    "SCHEMA_VERSION",
    "cayley_menger",
    "kite",
    "mass_scale",
    "sign_pattern",
    "solve",
    "tetrahedron",
    "verify",
]


def _settings(settings):
    return None if settings is None else json.dumps(settings)


def solve(masses, settings=None):
    """Every planar central configuration for the given masses, as a document dict."""
    return json.loads(_ccfour.solve(list(masses), _settings(settings)))


def kite(masses, settings=None):
    """Configurations symmetric under swapping particles 3 and 4 (requires m3 == m4)."""
    return json.loads(_ccfour.kite(list(masses), _settings(settings)))


def verify(document, masses=None):
    if not isinstance(document, str):
        document = json.dumps(document)
    return _ccfour.verify(document, None if masses is None else list(masses))
