"""Exact spectral/tiling checks on finite abelian groups."""

import json

from ._spectile import (
    DEFAULT_BUDGET,
    CycInt,
    Group,
    InputError,
    Subset,
    annihilator,
    build_E,
    build_K,
    can_tile,
    difference_set,
    find_spectrum,
    ft_indicator_at,
    is_log_hadamard,
    is_spectrum,
    is_tiling,
    power_tiling_check,
    subgroup_generated,
    zero_set,
)
from . import _spectile

EXIT_CODES = {"verified_true": 0, "verified_false": 1, "inconclusive": 2, "error": 3}


def verify_usc(budget=DEFAULT_BUDGET, threads=1, mode="auto"):
    return json.loads(_spectile._verify_usc(budget, threads, mode))


def verify_gamma(variant="z15", budget=DEFAULT_BUDGET, threads=1, mode="auto"):
    return json.loads(_spectile._verify_gamma(variant, budget, threads, mode))


def lift(variant="z15", k=2, budget=DEFAULT_BUDGET, threads=1, mode="auto"):
    return json.loads(_spectile._lift(variant, k, budget, threads, mode))


def compose(kind, bundle, budget=DEFAULT_BUDGET, threads=1, mode="auto"):
    """kind is 'tiling' or 'spectral'; bundle is a dict in the compose input format."""
    text = bundle if isinstance(bundle, str) else json.dumps(bundle)
    return json.loads(_spectile._compose(kind, text, budget, threads, mode))
