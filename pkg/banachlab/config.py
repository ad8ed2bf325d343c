"""
Tolerances and process-level settings for banachlab
"""

import logging
import os
from dataclasses import dataclass, replace as _replace
from typing import Optional

import numpy as np

BANACHLAB_LOG_LEVEL = os.environ.get("BANACHLAB_LOG_LEVEL", "WARNING")
BANACHLAB_SEED = int(os.environ.get("BANACHLAB_SEED", str(0x5EED)), 0)
BANACHLAB_MAX_DIM = int(os.environ.get("BANACHLAB_MAX_DIM", "64"))


@dataclass(frozen=True)
class Tolerances:
    """Every default tolerance used by the package, overridable per call"""

    associativity: float = 1e-12
    submultiplicative: float = 1e-12
    submultiplicative_sampled: float = 1e-9
    identity_norm: float = 1e-12
    homomorphism: float = 1e-12
    singular_rank: float = 1e-12
    inverse_check: float = 1e-10
    power_iteration: float = 1e-10
    power_iteration_cap: int = 20000
    cone: float = 1e-7
    abscissa: float = 1e-5
    span_rank: float = 1e-9
    ideal_rank: float = 1e-10
    support_defect: float = 1e-7
    route_agreement: float = 1e-6
    limit_step: float = 1e-8
    m_property: float = 1e-9
    centrality: float = 1e-10
    cohen_residual: float = 1e-9
    series: float = 1e-12
    quadrature: float = 1e-10
    numrange_slack: float = 1e-9

    def replace(self, **changes) -> "Tolerances":
        """Return a copy with the given fields overridden"""
        return _replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()


def get_tolerances(tolerances: Optional[Tolerances] = None) -> Tolerances:
    return tolerances if tolerances is not None else DEFAULT_TOLERANCES


def make_rng(rng=None) -> np.random.Generator:
    """
    Resolve a random generator

    Args:
        rng: an existing Generator, an integer seed, or None for the configured seed

    Returns:
        numpy Generator
    """
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(BANACHLAB_SEED if rng is None else rng)


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging for command-line use; library code never calls this"""
    logging.basicConfig(
        level=getattr(logging, (level or BANACHLAB_LOG_LEVEL).upper(), logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
