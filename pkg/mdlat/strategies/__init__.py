"""Estrategias de extracción de la presión de bulk."""

from __future__ import annotations

from concurrent.futures import Executor
from typing import Optional

from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import LatticeKind
from mdlat.strategies.base_strategy import PressureStrategy
from mdlat.strategies.cylinder_strategy import CylinderDifferenceStrategy
from mdlat.strategies.torus_strategy import TorusStabilizationStrategy

_DEFAULTS = {
    LatticeKind.square: Strategy.torus,
    LatticeKind.chain: Strategy.torus,
    LatticeKind.triangular: Strategy.cylinder,
    LatticeKind.hexagonal: Strategy.cylinder,
}


def default_strategy(kind: LatticeKind) -> Strategy:
    return _DEFAULTS[LatticeKind(kind)]


def get_strategy(
    strategy: Strategy,
    executor: Optional[Executor] = None,
    check_counts: bool = False,
) -> PressureStrategy:
    if Strategy(strategy) == Strategy.torus:
        return TorusStabilizationStrategy(executor, check_counts)
    return CylinderDifferenceStrategy(executor, check_counts)


__all__ = [
    "CylinderDifferenceStrategy",
    "PressureStrategy",
    "TorusStabilizationStrategy",
    "default_strategy",
    "get_strategy",
]
