"""Linearizations of rational matrices: exact certification, AAA and CORK."""

import json

from ._core import (
    RatlinError,
    __version__,
    aaa,
    barycentric_eval,
    check_linearization,
    eigenvalues,
    irreducible,
    local_orders,
    pole_zero_structure,
    run_json,
    sample,
    set_valued_aaa,
    smith_invariant_factors,
    transfer_function,
)
from ._core import run as _run


def run(config_path, mode=None):
    """Run the pipeline on a config file and return the report as a dict."""
    return json.loads(_run(config_path, mode))


__all__ = [
    "RatlinError",
    "__version__",
    "aaa",
    "barycentric_eval",
    "check_linearization",
    "eigenvalues",
    "irreducible",
    "local_orders",
    "pole_zero_structure",
    "run",
    "run_json",
    "sample",
    "set_valued_aaa",
    "smith_invariant_factors",
    "transfer_function",
]
