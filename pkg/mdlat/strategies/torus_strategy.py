from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import Geometry, LatticeKind, LatticeSpec
from mdlat.strategies.base_strategy import Instance, PressureStrategy, gate_size

logger = logging.getLogger(__name__)


class TorusStabilizationStrategy(PressureStrategy):
    """
    Estrategia TORUS.

    f_k = [x^k] (1/N) log Z en dos toros, L x L y L' x L' con L' = L + 1
    (L + 2 en la red hexagonal, que exige dimensiones pares). La cadena usa
    los ciclos C_n y C_{n+1}.
    """

    strategy_id = Strategy.torus

    def gate_instances(
        self,
        spec: LatticeSpec,
        order: int,
        size: Optional[Tuple[int, int]] = None,
    ) -> List[Instance]:
        minimum = order + 2
        if spec.kind == LatticeKind.chain:
            n = size[0] if size else gate_size(spec, order)
            dims = [(n, 1), (n + 1, 1)]
            smallest = n
        else:
            step = 2 if spec.kind == LatticeKind.hexagonal else 1
            lx, ly = size if size else (gate_size(spec, order),) * 2
            dims = [(lx, ly), (lx + step, ly + step)]
            smallest = min(lx, ly)

        if smallest < minimum:
            logger.warning(
                f"{spec.name}: toro de lado {smallest} < K+2={minimum}; "
                "la compuerta decidirá si el tamaño basta"
            )
        return [(Geometry.torus, d) for d in dims]
