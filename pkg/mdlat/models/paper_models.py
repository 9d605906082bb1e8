from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from mdlat.models.lattice_models import LatticeKind, LatticeSpec
from mdlat.ratseries import rational_to_str, to_rational


def _fractions(value: Any) -> Tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in value)


class KernelTable(BaseModel):
    """Núcleos de la expansión en clusters J_1..J_m, como datos opacos."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: LatticeSpec
    values: Tuple[Fraction, ...]

    @field_validator("values", mode="before")
    @classmethod
    def _exact(cls, value: Any) -> Tuple[Fraction, ...]:
        return _fractions(value)

    @field_serializer("values")
    def _serialize(self, values: Tuple[Fraction, ...]) -> List[str]:
        return [rational_to_str(v) for v in values]


class PaperSeries(BaseModel):
    """
    Coeficientes b_k (k = 2..K) tal como aparecen impresos, agrupados como
    (q/2) * b_k / (k(k-1)) * (p/q)^k.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: LatticeSpec
    order: int = Field(ge=2, description="Orden utilizable K.")
    b: Tuple[Fraction, ...]

    @field_validator("b", mode="before")
    @classmethod
    def _exact(cls, value: Any) -> Tuple[Fraction, ...]:
        return _fractions(value)

    @model_validator(mode="after")
    def _length(self) -> "PaperSeries":
        if len(self.b) != self.order - 1:
            raise ValueError(f"se esperaban {self.order - 1} coeficientes b_k, hay {len(self.b)}")
        return self

    @field_serializer("b")
    def _serialize(self, values: Tuple[Fraction, ...]) -> List[str]:
        return [rational_to_str(v) for v in values]

    @property
    def q(self) -> int:
        return self.spec.coordination

    def term_coefficients(self) -> List[Fraction]:
        """c_k = (q/2) b_k / (k(k-1) q^k), k = 2..K: los a_k de la serie en p."""
        q = self.q
        return [
            Fraction(q, 2) * bk / (k * (k - 1) * q**k)
            for k, bk in zip(range(2, self.order + 1), self.b)
        ]

    def analytic_coefficients(self) -> List[Fraction]:
        """A_0..A_K de la parte analítica, A(p) = lambda(p) + (p/2) ln(p/q)."""
        coeffs = [Fraction(0), Fraction(1, 2)]
        for k, ck in zip(range(2, self.order + 1), self.term_coefficients()):
            coeffs.append(ck - Fraction(1, k * (k - 1)))
        return coeffs


class PaperSeriesBlock(BaseModel):
    model_config = ConfigDict(extra="ignore")

    order: int
    b: List[str]


class PaperDataFile(BaseModel):
    """
    Archivo *.paper.json de una red:

      {
        "lattice": "square",
        "coordination": 4,
        "girth": 4,
        "kernels": ["0", "1/16", ...],
        "kernelNotes": "...",
        "series": {"order": 7, "b": ["1", "1", "7", ...]},
        "anchors": ["41/(5·4)"]
      }
    """

    model_config = ConfigDict(populate_by_name=True, extra="ignore")

    lattice: LatticeKind
    coordination: int
    girth: Optional[int] = None
    kernels: List[str] = Field(default_factory=list)
    kernel_notes: Optional[str] = Field(default=None, alias="kernelNotes")
    series: PaperSeriesBlock
    anchors: List[str] = Field(default_factory=list)

    @field_validator("kernels")
    @classmethod
    def _kernels_are_rationals(cls, value: List[str]) -> List[str]:
        for v in value:
            Fraction(v)
        return value

    def lattice_spec(self) -> LatticeSpec:
        return LatticeSpec(kind=self.lattice, coordination=self.coordination, girth=self.girth)

    def kernel_table(self) -> KernelTable:
        return KernelTable(spec=self.lattice_spec(), values=self.kernels)

    def paper_series(self) -> PaperSeries:
        return PaperSeries(spec=self.lattice_spec(), order=self.series.order, b=self.series.b)
