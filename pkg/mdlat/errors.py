from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


class MdlatError(Exception):
    """Raíz de todos los errores del motor. `exit_code` lo usa la CLI."""

    exit_code: int = 1

    def __init__(self, message: str, lattice: Optional[str] = None) -> None:
        super().__init__(message)
        self.message = message
        self.lattice = lattice

    def with_lattice(self, lattice: str) -> "MdlatError":
        """Adjunta la red en la que ocurrió el error (si aún no la tiene)."""
        if self.lattice is None:
            self.lattice = lattice
        return self

    def __str__(self) -> str:
        if self.lattice:
            return f"[{self.lattice}] {self.message}"
        return self.message


# ----------------------------------------------------------------------
# Errores de uso (código de salida 1)
# ----------------------------------------------------------------------
class UsageError(MdlatError, ValueError):
    """Argumentos o precondiciones inválidas."""

    exit_code = 1


class ConfigError(UsageError):
    pass


class UnknownLatticeError(UsageError):
    pass


class SeriesOrderError(UsageError):
    """Órdenes distintos o precondición de serie violada (término constante, etc.)."""


class LatticeSizeError(UsageError):
    pass


class BruteForceTooLargeError(UsageError):
    pass


class FrontierTooWideError(UsageError):
    pass


class MissingPaperDataError(UsageError):
    pass


# ----------------------------------------------------------------------
# Fallos de verificación
# ----------------------------------------------------------------------
class StabilizationGateError(MdlatError):
    """
    Los coeficientes calculados a dos tamaños no coinciden exactamente:
    los tamaños son demasiado pequeños para el orden pedido.
    """

    exit_code = 2

    def __init__(
        self,
        order: int,
        sizes: Sequence[Tuple[int, int]],
        differences: List[Tuple[int, Fraction, Fraction]],
        lattice: Optional[str] = None,
    ) -> None:
        self.order = order
        self.sizes = list(sizes)
        self.differences = differences
        detail = ", ".join(f"f_{k}: {a} != {b}" for k, a, b in differences)
        super().__init__(
            f"sizes too small for order {order} (sizes {self.sizes}): {detail}",
            lattice=lattice,
        )


class PaperMismatchError(MdlatError):
    exit_code = 3


class CountInvariantError(MdlatError):
    """Una tabla de conteos viola a(0) = 1, a(1) = E o la fórmula cerrada de a(2)."""

    exit_code = 4
