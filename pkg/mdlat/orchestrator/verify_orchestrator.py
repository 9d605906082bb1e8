from __future__ import annotations

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from fractions import Fraction
from time import perf_counter
from typing import Dict, List, Optional, Tuple

from mdlat.config import Settings, load_settings
from mdlat.errors import MdlatError, UsageError
from mdlat.lattice import LATTICE_ORDER, lattice_spec
from mdlat.legendre import entropy_p_expansion, girth_deviation_report
from mdlat.models.expansion_models import PExpansion, PressureSeries, Strategy
from mdlat.models.lattice_models import LatticeKind, LatticeSpec
from mdlat.models.report_models import (
    CoefficientComparison,
    LatticeVerification,
    VerificationReport,
    VerifyRequest,
)
from mdlat.paper_library import PaperLibrary
from mdlat.ratseries import rational_to_str
from mdlat.strategies import default_strategy, get_strategy

logger = logging.getLogger(__name__)

# La cadena no tiene serie impresa; se verifica contra el árbol (b_k = 1).
CHAIN_DEFAULT_ORDER = 8


class VerifyOrchestrator:
    """
    Orquestador principal de la verificación.

    Flujo por red (todas las redes en paralelo con asyncio.gather):
        1) La estrategia elige las instancias de la compuerta y las cuenta
           en el pool de procesos compartido.
        2) Presión de bulk -> transformada de Legendre -> b_k.
        3) Comparación exacta contra la serie publicada (o b_k = 1 en la cadena).

    El ensamblado del reporte es secuencial, en el orden fijo
    square, triangular, hexagonal, chain.
    """

    def __init__(
        self,
        library: Optional[PaperLibrary] = None,
        settings: Optional[Settings] = None,
        executor: Optional[Executor] = None,
    ) -> None:
        self.library = library or PaperLibrary()
        self.settings = settings or load_settings()
        self.executor = executor

    # ------------------------------------------------------------------
    # ÓRDENES Y REFERENCIAS
    # ------------------------------------------------------------------
    def default_order(self, kind: LatticeKind) -> int:
        if LatticeKind(kind) == LatticeKind.chain:
            return CHAIN_DEFAULT_ORDER
        order = self.library.printed_order(kind)
        if order is None:
            raise UsageError(f"'{LatticeKind(kind).value}' no tiene orden impreso")
        return order

    def expected_b(self, spec: LatticeSpec, order: int) -> Tuple[str, List[Fraction]]:
        """(referencia, b_2..b_K esperados)."""
        if spec.kind == LatticeKind.chain:
            return "tree", [Fraction(1)] * (order - 1)
        printed = self.library.get_series(spec.kind)
        if order > printed.order:
            raise UsageError(
                f"orden {order} por encima del orden impreso {printed.order}",
                lattice=spec.name,
            )
        return "paper", list(printed.b[: order - 1])

    def _resolve_orders(self, request: VerifyRequest) -> Dict[LatticeKind, int]:
        orders = {}
        for kind in request.lattices:
            order = request.orders.get(kind, self.default_order(kind))
            if order < 2:
                raise UsageError(
                    f"orden {order} insuficiente: se necesita K >= 2", lattice=kind.value
                )
            # valida contra el orden impreso antes de contar nada
            self.expected_b(lattice_spec(kind), order)
            orders[kind] = order
        return orders

    # ------------------------------------------------------------------
    # PIPELINE
    # ------------------------------------------------------------------
    async def compute_pressure(
        self,
        spec: LatticeSpec,
        order: int,
        strategy: Optional[Strategy] = None,
        size: Optional[Tuple[int, int]] = None,
        executor: Optional[Executor] = None,
    ) -> PressureSeries:
        chosen = strategy or default_strategy(spec.kind)
        runner = get_strategy(chosen, executor or self.executor, self.settings.debug_checks)
        try:
            return await runner.run(spec, order, size)
        except MdlatError as exc:
            raise exc.with_lattice(spec.name)

    async def compute_expansion(
        self,
        spec: LatticeSpec,
        order: int,
        strategy: Optional[Strategy] = None,
        size: Optional[Tuple[int, int]] = None,
        executor: Optional[Executor] = None,
    ) -> PExpansion:
        pressure = await self.compute_pressure(spec, order, strategy, size, executor)
        try:
            return entropy_p_expansion(pressure)
        except MdlatError as exc:
            raise exc.with_lattice(spec.name)

    async def _verify_lattice(
        self,
        spec: LatticeSpec,
        order: int,
        request: VerifyRequest,
        executor: Optional[Executor],
    ) -> LatticeVerification:
        strategy = request.strategy or default_strategy(spec.kind)
        pressure = await self.compute_pressure(spec, order, strategy, request.size, executor)
        start = perf_counter()
        try:
            expansion = entropy_p_expansion(pressure)
        except MdlatError as exc:
            raise exc.with_lattice(spec.name)
        # conteos propios (sin espera en el pool compartido) + transformada
        elapsed = pressure.count_seconds + perf_counter() - start

        reference, expected = self.expected_b(spec, order)
        comparisons = [
            CoefficientComparison(
                k=k,
                computed=rational_to_str(got),
                expected=rational_to_str(want),
                equal=got == want,
            )
            for k, got, want in zip(range(2, order + 1), expansion.b, expected)
        ]
        deviation = girth_deviation_report(expansion)
        equal = all(c.equal for c in comparisons)
        if not equal:
            logger.warning(f"{spec.name}: los b_k calculados difieren de la referencia")

        return LatticeVerification(
            lattice=spec.kind,
            order=order,
            reference=reference,
            computed_b=[rational_to_str(v) for v in expansion.b],
            expected_b=[rational_to_str(v) for v in expected],
            comparisons=comparisons,
            equal=equal,
            a2=rational_to_str(expansion.A[2]),
            first_deviation=deviation.first_deviation,
            girth=spec.girth,
            strategy=strategy,
            sizes=list(pressure.sizes),
            wall_time_s=round(elapsed, 3) if request.record_timings else None,
        )

    async def verify(self, request: VerifyRequest) -> VerificationReport:
        orders = self._resolve_orders(request)
        kinds = [k for k in LATTICE_ORDER if k in orders]

        own_pool = None
        executor = self.executor
        if executor is None:
            own_pool = ProcessPoolExecutor(max_workers=self.settings.worker_count)
            executor = own_pool
        try:
            entries = await asyncio.gather(
                *(
                    self._verify_lattice(lattice_spec(kind), orders[kind], request, executor)
                    for kind in kinds
                )
            )
        finally:
            if own_pool is not None:
                own_pool.shutdown(wait=True)

        report = VerificationReport.from_entries(list(entries))
        logger.info(
            f"verificación: {report.matched_comparisons}/{report.total_comparisons} "
            "coincidencias exactas"
        )
        return report
