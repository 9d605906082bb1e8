"""
Serie de presión de bulk f(x) = lim (1/N) ln sum_s a(s) x^s, orden K.

Dos maneras de aislar la parte de bulk:
  - toro: f = (1/N) log Z en dos toros; sin efectos de tamaño ambos coinciden.
  - cilindro: f = (log Z(M+1) - log Z(M)) / c; los términos de superficie
    se cancelan en la diferencia. El control repite con M+1, M+2.

En ambos casos se exige igualdad exacta de racionales (compuerta de
estabilización).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from mdlat.errors import StabilizationGateError, UsageError
from mdlat.models.count_models import MatchingCountTable
from mdlat.models.expansion_models import PressureSeries, Strategy
from mdlat.models.lattice_models import LatticeSpec
from mdlat.ratseries import TruncatedSeries, scale, series_log

logger = logging.getLogger(__name__)


def log_partition(table: MatchingCountTable, order: int) -> TruncatedSeries:
    """log Z(x) hasta orden K a partir de a(0..K)."""
    if table.max_order < order:
        raise UsageError(f"{table.graph_id}: la tabla llega a orden {table.max_order} < {order}")
    z = TruncatedSeries.from_coeffs(table.counts[: order + 1], order)
    return series_log(z)


def _gate(
    spec: LatticeSpec,
    order: int,
    candidates: Sequence[TruncatedSeries],
    sizes: Sequence[Tuple[int, int]],
) -> TruncatedSeries:
    first, second = candidates
    differences = [(k, first[k], second[k]) for k in range(1, order + 1) if first[k] != second[k]]
    if differences:
        raise StabilizationGateError(order, sizes, differences, lattice=spec.name)
    logger.info(f"{spec.name}: compuerta superada a orden {order} con tamaños {list(sizes)}")
    return first


def pressure_from_counts(
    spec: LatticeSpec,
    tables: Sequence[MatchingCountTable],
    order: int,
    strategy: Strategy,
) -> PressureSeries:
    """
    Combina las tablas de conteo en la serie de presión, con compuerta.

    - torus: dos tablas (toros L y L').
    - cylinder: tres tablas de igual circunferencia y longitudes M, M+1, M+2.

    :raises StabilizationGateError: si las dos estimaciones difieren.
    """
    sizes = [t.dims for t in tables]

    if strategy == Strategy.torus:
        if len(tables) != 2:
            raise UsageError("la estrategia de toro necesita exactamente dos tablas")
        candidates: List[TruncatedSeries] = [
            scale(log_partition(t, order), Fraction(1, t.num_vertices)) for t in tables
        ]
    elif strategy == Strategy.cylinder:
        if len(tables) != 3:
            raise UsageError("la estrategia de cilindro necesita tres longitudes consecutivas")
        circumference = tables[0].dims[0]
        lengths = [t.dims[1] for t in tables]
        if any(t.dims[0] != circumference for t in tables):
            raise UsageError("los cilindros deben compartir circunferencia")
        if lengths != list(range(lengths[0], lengths[0] + 3)):
            raise UsageError(f"longitudes no consecutivas: {lengths}")
        logs = [log_partition(t, order) for t in tables]
        inverse_c = Fraction(1, circumference)
        candidates = [scale(logs[1] - logs[0], inverse_c), scale(logs[2] - logs[1], inverse_c)]
    else:
        raise UsageError(f"estrategia desconocida: {strategy}")

    bulk = _gate(spec, order, candidates, sizes)
    return PressureSeries(
        spec=spec,
        order=order,
        coeffs=bulk.coeffs[1:],
        strategy=strategy,
        sizes=tuple(sizes),
    )
