from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Any, List, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from mdlat.models.lattice_models import LatticeSpec
from mdlat.ratseries import TruncatedSeries, rational_to_str, to_rational


def _as_fractions(value: Any) -> Tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in value)


def _as_strings(values: Tuple[Fraction, ...]) -> List[str]:
    return [rational_to_str(v) for v in values]


class Strategy(str, Enum):
    """Estrategia de extracción de la presión de bulk."""

    torus = "torus"
    cylinder = "cylinder"


class PressureSeries(BaseModel):
    """
    f(x) = sum_{k=1..K} f_k x^k, la presión por sitio de bulk.

    `sizes` registra las instancias usadas (dims de cada toro, o
    (circunferencia, longitud) de cada cilindro).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: LatticeSpec
    order: int = Field(ge=1)
    coeffs: Tuple[Fraction, ...] = Field(description="f_1..f_K")
    strategy: Strategy
    sizes: Tuple[Tuple[int, int], ...] = ()
    count_seconds: float = Field(
        default=0.0,
        exclude=True,
        description="Suma de los tiempos de conteo medidos dentro de cada proceso.",
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def _exact(cls, value: Any) -> Tuple[Fraction, ...]:
        return _as_fractions(value)

    @model_validator(mode="after")
    def _check(self) -> "PressureSeries":
        if len(self.coeffs) != self.order:
            raise ValueError("coeffs debe contener f_1..f_K")
        if self.coeffs[0] != Fraction(self.spec.coordination, 2):
            raise ValueError(f"f_1 debe ser q/2 (es {self.coeffs[0]})")
        return self

    @field_serializer("coeffs")
    def _serialize_coeffs(self, coeffs: Tuple[Fraction, ...]) -> List[str]:
        return _as_strings(coeffs)

    def as_series(self) -> TruncatedSeries:
        """f como serie de orden K con término constante 0."""
        return TruncatedSeries.from_coeffs((0,) + tuple(self.coeffs), self.order)

    def to_wire(self) -> dict:
        return {
            "lattice": self.spec.name,
            "K": self.order,
            "f": _as_strings(self.coeffs),
            "strategy": self.strategy.value,
            "sizes": [list(s) for s in self.sizes],
        }


class PExpansion(BaseModel):
    """
    Expansión en p de la entropía: lambda(p) = -(p/2) ln(p/q) + A(p).

    A_k para k = 0..K; b_k y a_k para k = 2..K, con
      b_k = 2 q^(k-1) (k(k-1) A_k + 1)
      a_k = A_k + 1/(k(k-1)) = (q/2) b_k / (k(k-1) q^k)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: LatticeSpec
    order: int = Field(ge=2)
    A: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]
    a: Tuple[Fraction, ...]

    @field_validator("A", "b", "a", mode="before")
    @classmethod
    def _exact(cls, value: Any) -> Tuple[Fraction, ...]:
        return _as_fractions(value)

    @model_validator(mode="after")
    def _check(self) -> "PExpansion":
        if len(self.A) != self.order + 1:
            raise ValueError("A debe contener A_0..A_K")
        if len(self.b) != self.order - 1 or len(self.a) != self.order - 1:
            raise ValueError("b y a deben contener k = 2..K")
        if self.A[0] != 0 or self.A[1] != Fraction(1, 2):
            raise ValueError(f"A_0 = 0 y A_1 = 1/2 requeridos (A_0={self.A[0]}, A_1={self.A[1]})")
        return self

    @field_serializer("A", "b", "a")
    def _serialize(self, values: Tuple[Fraction, ...]) -> List[str]:
        return _as_strings(values)

    def b_at(self, k: int) -> Fraction:
        return self.b[k - 2]

    def analytic_series(self) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.A, self.order)

    def to_wire(self) -> dict:
        return {
            "lattice": self.spec.name,
            "q": self.spec.coordination,
            "K": self.order,
            "A": _as_strings(self.A),
            "b": _as_strings(self.b),
            "a": _as_strings(self.a),
        }
