"""
De la presión f(x) a la expansión en p de la entropía.

    p(x)  = 2 x f'(x)                      (cada dímero cubre dos sitios)
    x(p)  = inversa composicional de p(x)
    A(p)  = f(x(p)) - (p/2) ln(q x(p) / p)
    lambda(p) = -(p/2) ln(p/q) + A(p)

Todo en racionales exactos; no hay búsqueda numérica de raíces.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from mdlat.errors import SeriesOrderError, UsageError
from mdlat.lattice import bethe_spec
from mdlat.models.expansion_models import PExpansion, PressureSeries
from mdlat.models.lattice_models import LatticeSpec
from mdlat.ratseries import (
    TruncatedSeries,
    scale,
    series_compose,
    series_log,
    series_revert,
)

logger = logging.getLogger(__name__)


def b_from_A(q: int, k: int, a_k: Fraction) -> Fraction:
    """b_k = 2 q^(k-1) (k(k-1) A_k + 1)."""
    return 2 * Fraction(q) ** (k - 1) * (k * (k - 1) * a_k + 1)


def _expansion_from_analytic(spec: LatticeSpec, analytic: TruncatedSeries) -> PExpansion:
    q = spec.coordination
    order = analytic.order
    b = [b_from_A(q, k, analytic[k]) for k in range(2, order + 1)]
    a = [analytic[k] + Fraction(1, k * (k - 1)) for k in range(2, order + 1)]
    return PExpansion(spec=spec, order=order, A=analytic.coeffs, b=b, a=a)


def density_series(f: TruncatedSeries) -> TruncatedSeries:
    """p(x) = 2 x f'(x), del mismo orden que f."""
    coeffs = [0] + [2 * k * f[k] for k in range(1, f.order + 1)]
    return TruncatedSeries.from_coeffs(coeffs, f.order)


def entropy_p_expansion(pressure: PressureSeries) -> PExpansion:
    """
    Transformada de Legendre formal de la presión.

    :raises SeriesOrderError: si K < 2 o si f_1 = 0 (p(x) no invertible).
    """
    order = pressure.order
    q = pressure.spec.coordination
    if order < 2:
        raise SeriesOrderError(f"orden {order} insuficiente: se necesita K >= 2")

    f = pressure.as_series()
    density = density_series(f)
    x_of_p = series_revert(density)

    f_of_p = series_compose(f, x_of_p)
    ratio = scale(x_of_p.shift_down(), q)
    log_ratio = series_log(ratio)
    half_p_log = TruncatedSeries.from_coeffs([0] + [c / 2 for c in log_ratio.coeffs], order)

    analytic = f_of_p - half_p_log
    expansion = _expansion_from_analytic(pressure.spec, analytic)
    logger.info(
        f"{pressure.spec.name}: b = {', '.join(str(v) for v in expansion.b)}"
    )
    return expansion


def extract_b(expansion: PExpansion) -> List[Fraction]:
    """Numeradores normalizados b_2..b_K (racionales: la integralidad se observa)."""
    return list(expansion.b)


def tree_expansion(q: int, order: int) -> PExpansion:
    """
    Expansión exacta del árbol q-regular desde su forma cerrada:

        A(p) = -(1-p) ln(1-p) + ((q-p)/2) ln(1-p/q)
    """
    if order < 2:
        raise SeriesOrderError(f"orden {order} insuficiente: se necesita K >= 2")
    one_minus_p = TruncatedSeries.from_coeffs([1, -1], order)
    one_minus_y = TruncatedSeries.from_coeffs([1, Fraction(-1, q)], order)
    half_q_minus_p = TruncatedSeries.from_coeffs([Fraction(q, 2), Fraction(-1, 2)], order)

    analytic = half_q_minus_p * series_log(one_minus_y) - one_minus_p * series_log(one_minus_p)
    return _expansion_from_analytic(bethe_spec(q), analytic)


def lambda_from_expansion(expansion: PExpansion, p: float) -> float:
    """-(p/2) ln(p/q) + A(p) en flotante."""
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"p={p} fuera de [0, 1]")
    if p == 0:
        return 0.0
    q = expansion.spec.coordination
    return -0.5 * p * math.log(p / q) + expansion.analytic_series().evaluate(p)


class GirthDeviation(BaseModel):
    """Primer k con b_k != 1 frente a la cintura de la red."""

    model_config = ConfigDict(frozen=True)

    lattice: str
    order: int
    first_deviation: Optional[int] = None
    girth: Optional[int] = None
    coincide: Optional[bool] = None
    status: str


def girth_deviation_report(expansion: PExpansion) -> GirthDeviation:
    """
    Observación (no teorema): ¿el primer b_k != 1 aparece en k = cintura?

    status: "coincide", "differ", "none-up-to-K" o "inconclusive" (K < cintura).
    """
    girth = expansion.spec.girth
    first = next(
        (k for k in range(2, expansion.order + 1) if expansion.b_at(k) != 1),
        None,
    )
    if girth is None or expansion.order < girth:
        return GirthDeviation(
            lattice=expansion.spec.name,
            order=expansion.order,
            first_deviation=first,
            girth=girth,
            coincide=None,
            status="inconclusive",
        )
    if first is None:
        status = "none-up-to-K"
    else:
        status = "coincide" if first == girth else "differ"
    return GirthDeviation(
        lattice=expansion.spec.name,
        order=expansion.order,
        first_deviation=first,
        girth=girth,
        coincide=first == girth,
        status=status,
    )
