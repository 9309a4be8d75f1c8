"""Weighted Davenport-Mahler-Mignotte root separation bounds.

All bound values are log2. Instances use the same JSON layout as the dmm CLI:
``{"roots": [[re, im], ...], "multiplicities": [...], "edges": [[i, j, w], ...]}``
with 0-based root indices.
"""

import json

from ._core import (
    Error,
    InfeasibleError,
    InputError,
    NumericError,
    choose_potentials,
    confluent_det,
    dmm_unweighted,
    find_roots,
    log2_mahler_measure,
    nuclear_norm,
    separation,
    weighted_main,
)
from . import _core

__all__ = [
    "Error",
    "InfeasibleError",
    "InputError",
    "NumericError",
    "bounds",
    "choose_potentials",
    "confluent_det",
    "dmm_unweighted",
    "find_roots",
    "generate",
    "log2_mahler_measure",
    "nuclear_norm",
    "separation",
    "verify",
    "weighted_main",
]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def bounds(instance, strategy="all", mu=None, tolerance=1e-6):
    """Every bound on an instance, as the report dict printed by ``dmm bounds``."""
    return json.loads(_core.bounds_json(_text(instance), strategy, mu, tolerance))


def verify(instance, strategy="all", mu=None, tolerance=1e-6, check_steps=False):
    """Replay the determinant reduction; same dict as ``dmm verify``."""
    return json.loads(_core.verify_json(_text(instance), strategy, mu, tolerance, check_steps))


def generate(seed=1, r_min=2, r_max=6, w_max=6):
    """One random instance dict."""
    return json.loads(_core.generate_json(seed, r_min, r_max, w_max))
