from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from mdlat.errors import LatticeSizeError
from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import Geometry, LatticeKind, LatticeSpec
from mdlat.strategies.base_strategy import Instance, PressureStrategy, gate_size

logger = logging.getLogger(__name__)


class CylinderDifferenceStrategy(PressureStrategy):
    """
    Estrategia CYLINDER.

    Circunferencia c >= K+2 (obligatoria) y longitudes M, M+1, M+2 con M >= K+2:
    f = (log Z(M+1) - log Z(M)) / c, controlada contra la diferencia
    siguiente. La frontera del barrido es una sola rebanada de c sitios,
    sin costura. Para la cadena el cilindro es un camino (c = 1).
    """

    strategy_id = Strategy.cylinder

    def gate_instances(
        self,
        spec: LatticeSpec,
        order: int,
        size: Optional[Tuple[int, int]] = None,
    ) -> List[Instance]:
        minimum = order + 2
        required = 1 if spec.kind == LatticeKind.chain else gate_size(spec, order)
        if size:
            circumference, length = size
        else:
            circumference, length = required, minimum

        # las tres longitudes comparten la costura: la compuerta no ve este error
        if circumference < required:
            raise LatticeSizeError(
                f"circunferencia {circumference} insuficiente para K={order}: "
                f"se requiere c >= {required}",
                lattice=spec.name,
            )
        if length < minimum:
            logger.warning(
                f"{spec.name}: longitud {length} por debajo de K+2={minimum}; "
                "la compuerta decidirá si basta"
            )
        return [(Geometry.cylinder, (circumference, length + i)) for i in range(3)]
