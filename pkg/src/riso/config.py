"""Job-level configuration and defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

#: series are expanded to this t-exponent unless overridden (CLI/env)
DEFAULT_PRECISION = Fraction(32)
#: flattened coefficient-extension degree cap
DEFAULT_EXT_BOUND = 24
#: Poincare series depth cap
DEFAULT_LMAX = 5
#: extra refinement depth for liftability exhaustion
DEFAULT_SLACK = 3
#: largest residue characteristic accepted by the counters
MAX_BASE = 11
#: finite risometry configurations are capped at this many points
MAX_FINITE_POINTS = 64


def default_precision() -> Fraction:
    env = os.environ.get("RISO_PRECISION")
    if env:
        return Fraction(env)
    return DEFAULT_PRECISION


@dataclass
class JobConfig:
    """Bundle of caps and modes threaded through the CLI."""

    precision: Fraction = field(default_factory=default_precision)
    ext_bound: int = DEFAULT_EXT_BOUND
    lmax: int = DEFAULT_LMAX
    slack: int = DEFAULT_SLACK
    mode: str = "complex"          # complex | real
    output: str = "text"           # text | json | dot
    oracle: bool = False
    motivic: bool = False

    def __post_init__(self):
        if self.precision <= 0 or self.ext_bound <= 0 or self.lmax < 0:
            raise ValueError("bounds must be positive")
        if self.mode not in ("complex", "real"):
            raise ValueError(f"unknown field mode {self.mode!r}")
