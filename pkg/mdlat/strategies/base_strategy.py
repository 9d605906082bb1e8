from __future__ import annotations

import asyncio
import logging
from abc import ABC, abstractmethod
from concurrent.futures import Executor
from time import perf_counter
from typing import List, Optional, Tuple

from mdlat.lattice import build_instance
from mdlat.matchcount import count_matchings
from mdlat.models.count_models import MatchingCountTable
from mdlat.models.expansion_models import PressureSeries, Strategy
from mdlat.models.lattice_models import Geometry, LatticeKind, LatticeSpec
from mdlat.pressure import pressure_from_counts

logger = logging.getLogger(__name__)

Instance = Tuple[Geometry, Tuple[int, int]]


def count_instance(
    spec: LatticeSpec,
    geometry: Geometry,
    dims: Tuple[int, int],
    order: int,
    check: bool = False,
) -> MatchingCountTable:
    """Construye la instancia y cuenta; función de módulo para poder enviarse a un proceso."""
    graph = build_instance(spec, geometry, dims)
    return count_matchings(graph, order, method="dp", check=check)


def timed_count_instance(
    spec: LatticeSpec,
    geometry: Geometry,
    dims: Tuple[int, int],
    order: int,
    check: bool = False,
) -> Tuple[MatchingCountTable, float]:
    """count_instance cronometrado dentro del proceso de trabajo (sin la espera en cola)."""
    start = perf_counter()
    table = count_instance(spec, geometry, dims, order, check)
    return table, perf_counter() - start


def gate_size(spec: LatticeSpec, order: int) -> int:
    """Tamaño mínimo K+2 de la compuerta (par en la red hexagonal)."""
    size = order + 2
    if spec.kind == LatticeKind.hexagonal and size % 2:
        size += 1
    return size


class PressureStrategy(ABC):
    """
    Contrato base de las estrategias de extracción de la presión de bulk.

    Cada estrategia:

      - Expone un `strategy_id` (torus / cylinder).
      - Elige las instancias de la compuerta (`gate_instances`), automáticamente
        a partir de K o a partir de un tamaño forzado.
      - Cuenta las instancias en paralelo sobre `executor` y combina las tablas
        con `pressure_from_counts`.
    """

    strategy_id: Strategy

    def __init__(self, executor: Optional[Executor] = None, check_counts: bool = False) -> None:
        self.executor = executor
        self.check_counts = check_counts

    @abstractmethod
    def gate_instances(
        self,
        spec: LatticeSpec,
        order: int,
        size: Optional[Tuple[int, int]] = None,
    ) -> List[Instance]:
        """Instancias (geometría, dims) cuyos conteos alimentan la compuerta."""
        ...

    async def _count(
        self, spec: LatticeSpec, instance: Instance, order: int
    ) -> Tuple[MatchingCountTable, float]:
        geometry, dims = instance
        loop = asyncio.get_running_loop()
        table, seconds = await loop.run_in_executor(
            self.executor, timed_count_instance, spec, geometry, dims, order, self.check_counts
        )
        logger.info(
            f"{spec.name} {geometry.value} {dims[0]}x{dims[1]} K={order}: {seconds:.2f} s"
        )
        return table, seconds

    async def run(
        self,
        spec: LatticeSpec,
        order: int,
        size: Optional[Tuple[int, int]] = None,
    ) -> PressureSeries:
        instances = self.gate_instances(spec, order, size)
        logger.info(f"{spec.name}: estrategia {self.strategy_id.value}, instancias {instances}")
        results = await asyncio.gather(*(self._count(spec, inst, order) for inst in instances))
        tables = [table for table, _ in results]
        pressure = pressure_from_counts(spec, tables, order, self.strategy_id)
        return pressure.model_copy(update={"count_seconds": sum(s for _, s in results)})
