"""Finite covariant Stone-von Neumann toolkit."""

import json

from ._modweyl import (
    Action,
    ConfigError,
    FiniteAbelianGroup,
    HeisenbergRep,
    StructuralError,
    ValidationError,
    __version__,
    decompose,
    demo,
    fourier,
    inequivalence_witness,
    inverse_fourier,
    random_heisenberg,
    schrodinger,
    takai,
    validate_heisenberg,
)
from ._modweyl import verify as _verify


def verify(config):
    """Run the suites of a config (dict or JSON text); returns the report as a dict."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_verify(text))


__all__ = [
    "Action",
    "ConfigError",
    "FiniteAbelianGroup",
    "HeisenbergRep",
    "StructuralError",
    "ValidationError",
    "__version__",
    "decompose",
    "demo",
    "fourier",
    "inequivalence_witness",
    "inverse_fourier",
    "random_heisenberg",
    "schrodinger",
    "takai",
    "validate_heisenberg",
    "verify",
]
