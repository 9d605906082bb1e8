"""
Aritmética racional exacta y series formales truncadas.

Todos los coeficientes del pipeline viven aquí como `Fraction`; no hay
punto flotante salvo en `TruncatedSeries.evaluate`, que solo usa el
módulo de reportes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from mdlat.errors import SeriesOrderError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

DEFAULT_ORDER = 7


def to_rational(value: RationalLike) -> Fraction:
    """Convierte int, Fraction o cadena 'num/den' a Fraction (nunca float)."""
    if isinstance(value, float):
        raise TypeError("float no admitido en coeficientes exactos")
    return Fraction(value)


def rational_to_str(value: Fraction) -> str:
    """Forma de cable 'num/den' ('-7' si el denominador es 1)."""
    return str(value)


def rational_from_str(text: str) -> Fraction:
    return Fraction(text.strip())


class TruncatedSeries(BaseModel):
    """
    Serie formal c_0 + c_1 x + ... + c_K x^K con coeficientes racionales.

    Las potencias > K son desconocidas, no cero: todas las operaciones
    binarias exigen el mismo orden (o un `truncate` explícito antes).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    order: int = Field(ge=0)
    coeffs: Tuple[Fraction, ...]

    @field_validator("coeffs", mode="before")
    @classmethod
    def _exact(cls, value: Any) -> Tuple[Fraction, ...]:
        return tuple(to_rational(c) for c in value)

    @model_validator(mode="after")
    def _length_matches_order(self) -> "TruncatedSeries":
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"se esperaban {self.order + 1} coeficientes, hay {len(self.coeffs)}"
            )
        return self

    @field_serializer("coeffs")
    def _serialize_coeffs(self, coeffs: Tuple[Fraction, ...]) -> list:
        return [rational_to_str(c) for c in coeffs]

    # ------------------------------------------------------------------
    # CONSTRUCTORES
    # ------------------------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], order: int) -> "TruncatedSeries":
        """Rellena con ceros (o recorta) hasta longitud order+1."""
        values = [to_rational(c) for c in coeffs][: order + 1]
        values += [Fraction(0)] * (order + 1 - len(values))
        return cls(order=order, coeffs=tuple(values))

    @classmethod
    def constant(cls, value: RationalLike, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """La serie x (o 0 si order == 0)."""
        return cls.from_coeffs([0, 1], order)

    # ------------------------------------------------------------------
    # ACCESO
    # ------------------------------------------------------------------
    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesOrderError(
                f"no se puede extender una serie de orden {self.order} a {order}"
            )
        return TruncatedSeries(order=order, coeffs=self.coeffs[: order + 1])

    def derivative(self) -> "TruncatedSeries":
        """s'(x); el resultado pierde un orden (el último coeficiente es desconocido)."""
        if self.order == 0:
            raise SeriesOrderError("la derivada de una serie de orden 0 es desconocida")
        return TruncatedSeries(
            order=self.order - 1,
            coeffs=tuple(k * self.coeffs[k] for k in range(1, self.order + 1)),
        )

    def shift_down(self) -> "TruncatedSeries":
        """s(x)/x, definido solo si el término constante es 0."""
        if self.coeffs[0] != 0:
            raise SeriesOrderError("s(x)/x requiere término constante 0")
        if self.order == 0:
            raise SeriesOrderError("s(x)/x de una serie de orden 0 es desconocida")
        return TruncatedSeries(order=self.order - 1, coeffs=self.coeffs[1:])

    def evaluate(self, x: float) -> float:
        """Evaluación en flotante (Horner); solo para reportes."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    # ------------------------------------------------------------------
    # ARITMÉTICA
    # ------------------------------------------------------------------
    def _check_same_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise SeriesOrderError(
                f"órdenes distintos: {self.order} y {other.order} (truncar explícitamente)"
            )

    def __add__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(to_rational(other), self.order)
        return series_arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(to_rational(other), self.order)
        return series_arith(self, other, "sub")

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(order=self.order, coeffs=tuple(-c for c in self.coeffs))

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return series_arith(self, other, "mul")
        return scale(self, to_rational(other))

    def __rmul__(self, other: Any) -> "TruncatedSeries":
        return scale(self, to_rational(other))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = ", ".join(rational_to_str(c) for c in self.coeffs)
        return f"TruncatedSeries(order={self.order}, [{terms}])"


# ----------------------------------------------------------------------
# OPERACIONES
# ----------------------------------------------------------------------
def scale(s: TruncatedSeries, factor: RationalLike) -> TruncatedSeries:
    factor = to_rational(factor)
    return TruncatedSeries(order=s.order, coeffs=tuple(factor * c for c in s.coeffs))


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> Tuple[Fraction, ...]:
    out = []
    for n in range(order + 1):
        acc = Fraction(0)
        for k in range(n + 1):
            if a[k] and b[n - k]:
                acc += a[k] * b[n - k]
        out.append(acc)
    return tuple(out)


def series_arith(a: TruncatedSeries, b: Any, op: str) -> TruncatedSeries:
    """
    Suma, resta, producto (truncado a K) o producto por escalar.

    Para op == "scalar-mul", `b` es el escalar racional.
    """
    if op == "scalar-mul":
        return scale(a, b)
    if not isinstance(b, TruncatedSeries):
        raise SeriesOrderError(f"operando no es una serie para '{op}'")
    a._check_same_order(b)

    if op == "add":
        coeffs = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
    elif op == "sub":
        coeffs = tuple(x - y for x, y in zip(a.coeffs, b.coeffs))
    elif op == "mul":
        coeffs = _convolve(a.coeffs, b.coeffs, a.order)
    else:
        raise SeriesOrderError(f"operación desconocida: {op}")
    return TruncatedSeries(order=a.order, coeffs=coeffs)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """
    L = log(s) con L(0) = 0, por la recurrencia de L' = s'/s:

        L_n = s_n - (1/n) * sum_{k=1}^{n-1} k L_k s_{n-k}
    """
    if s[0] != 1:
        raise SeriesOrderError(f"log requiere término constante 1 (es {s[0]})")
    logs = [Fraction(0)] * (s.order + 1)
    for n in range(1, s.order + 1):
        acc = Fraction(0)
        for k in range(1, n):
            if logs[k] and s[n - k]:
                acc += k * logs[k] * s[n - k]
        logs[n] = s[n] - acc / n
    return TruncatedSeries(order=s.order, coeffs=tuple(logs))


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """E = exp(s) por E_n = (1/n) * sum_{k=1}^{n} k s_k E_{n-k}."""
    if s[0] != 0:
        raise SeriesOrderError(f"exp requiere término constante 0 (es {s[0]})")
    exps = [Fraction(0)] * (s.order + 1)
    exps[0] = Fraction(1)
    for n in range(1, s.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if s[k] and exps[n - k]:
                acc += k * s[k] * exps[n - k]
        exps[n] = acc / n
    return TruncatedSeries(order=s.order, coeffs=tuple(exps))


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(x)) truncada a K, por Horner sobre series."""
    outer._check_same_order(inner)
    if inner[0] != 0:
        raise SeriesOrderError(f"composición requiere inner(0) = 0 (es {inner[0]})")
    result = TruncatedSeries.constant(outer[outer.order], outer.order)
    for k in range(outer.order - 1, -1, -1):
        result = result * inner + outer[k]
    return result


def series_revert(s: TruncatedSeries) -> TruncatedSeries:
    """
    Inversa composicional r con s(r(p)) = p hasta orden K.

    Resolución orden a orden: el coeficiente n de s(r) es s_1 r_n más
    términos que solo dependen de r_1..r_{n-1}.
    """
    if s[0] != 0:
        raise SeriesOrderError(f"reversión requiere s(0) = 0 (es {s[0]})")
    if s.order == 0:
        return TruncatedSeries.constant(0, 0)
    if s[1] == 0:
        raise SeriesOrderError("reversión requiere s'(0) != 0")

    coeffs = [Fraction(0)] * (s.order + 1)
    coeffs[1] = 1 / s[1]
    for n in range(2, s.order + 1):
        trial = TruncatedSeries(order=s.order, coeffs=tuple(coeffs))
        residual = series_compose(s, trial)[n]
        coeffs[n] = -residual / s[1]
    return TruncatedSeries(order=s.order, coeffs=tuple(coeffs))
