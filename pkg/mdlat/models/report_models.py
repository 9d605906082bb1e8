from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import LatticeKind


class VerifyRequest(BaseModel):
    """Qué verificar: redes, órdenes, y anulaciones de estrategia/tamaño."""

    model_config = ConfigDict(extra="ignore")

    lattices: List[LatticeKind]
    orders: Dict[LatticeKind, int] = Field(default_factory=dict)
    strategy: Optional[Strategy] = None
    size: Optional[Tuple[int, int]] = None
    record_timings: bool = False


class CoefficientComparison(BaseModel):
    model_config = ConfigDict(extra="ignore")

    k: int
    computed: str
    expected: str
    equal: bool


class LatticeVerification(BaseModel):
    """Resultado de una red: b_k calculados frente a los de referencia."""

    model_config = ConfigDict(extra="ignore")

    lattice: LatticeKind
    order: int
    reference: str = Field(description="'paper' (impreso) o 'tree' (b_k = 1, la cadena).")
    computed_b: List[str]
    expected_b: List[str]
    comparisons: List[CoefficientComparison]
    equal: bool
    a2: str = Field(description="A_2 = f_2 / q^2.")
    first_deviation: Optional[int] = None
    girth: Optional[int] = None
    strategy: Strategy
    sizes: List[Tuple[int, int]]
    wall_time_s: Optional[float] = Field(
        default=None,
        description="Segundos de conteo propios de la red más la transformada de Legendre.",
    )


class VerificationReport(BaseModel):
    """
    Reporte global. `passed` es cierto si y solo si todas las
    comparaciones son igualdades exactas.
    """

    model_config = ConfigDict(extra="ignore")

    entries: List[LatticeVerification]
    total_comparisons: int
    matched_comparisons: int
    passed: bool

    @classmethod
    def from_entries(cls, entries: List[LatticeVerification]) -> "VerificationReport":
        comparisons = [c for e in entries for c in e.comparisons]
        matched = sum(1 for c in comparisons if c.equal)
        return cls(
            entries=entries,
            total_comparisons=len(comparisons),
            matched_comparisons=matched,
            passed=matched == len(comparisons),
        )


class CurveTable(BaseModel):
    """Curvas lambda(p): una fila por punto de la malla."""

    model_config = ConfigDict(extra="ignore")

    columns: List[str]
    rows: List[List[float]]
    exact_differences: Dict[str, List[str]] = Field(
        default_factory=dict,
        description="Coeficientes exactos red - árbol por orden, k = 2..K.",
    )
