"""
Constantes publicadas y formas cerradas de comparación.

Las constantes (núcleos y coeficientes b_k) se leen de `data/paper/` a
través de PaperLibrary. Las formas cerradas se evalúan en doble
precisión con la convención t ln t = 0 en t = 0.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import List

from mdlat.errors import MissingPaperDataError, UsageError
from mdlat.lattice import bethe_spec
from mdlat.models.lattice_models import LatticeKind, LatticeSpec
from mdlat.models.paper_models import KernelTable, PaperDataFile, PaperSeries
from mdlat.paper_library import PaperLibrary


@lru_cache(maxsize=1)
def get_library() -> PaperLibrary:
    return PaperLibrary()


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"p={p} fuera de [0, 1]")


def xlogx(t: float) -> float:
    return 0.0 if t == 0 else t * math.log(t)


# ----------------------------------------------------------------------
# FORMAS CERRADAS
# ----------------------------------------------------------------------
def lambda_leading(q: int, p: float) -> float:
    """1/2 (p ln q - p ln p - 2(1-p) ln(1-p) - p)."""
    _check_p(p)
    return 0.5 * (p * math.log(q) - xlogx(p) - 2.0 * xlogx(1.0 - p) - p)


def lambda_truncated(ps: PaperSeries, p: float) -> float:
    """Término principal + (q/2) sum_{k=2..K} b_k/(k(k-1)) (p/q)^k."""
    _check_p(p)
    tail = sum(
        float(c) * p**k for k, c in zip(range(2, ps.order + 1), ps.term_coefficients())
    )
    return lambda_leading(ps.q, p) + tail


def lambda_1d_exact(p: float) -> float:
    """Entropía exacta de la cadena: (1-p/2)ln(1-p/2) - (p/2)ln(p/2) - (1-p)ln(1-p)."""
    _check_p(p)
    return xlogx(1.0 - p / 2.0) - xlogx(p / 2.0) - xlogx(1.0 - p)


def lambda_tree(q: int, p: float) -> float:
    """
    Árbol q-regular (red de Bethe), la compleción con b_k = 1:

        -(p/2) ln(p/q) - (1-p) ln(1-p) + ((q-p)/2) ln(1-p/q)
    """
    _check_p(p)
    if q < 2:
        raise UsageError(f"q={q}: el árbol requiere q >= 2")
    y = p / q
    return 0.5 * q * (xlogx(1.0 - y) - xlogx(y)) - xlogx(1.0 - p)


# ----------------------------------------------------------------------
# CONSTANTES
# ----------------------------------------------------------------------
def _two_dimensional(spec: LatticeSpec) -> LatticeKind:
    if spec.kind not in (LatticeKind.square, LatticeKind.triangular, LatticeKind.hexagonal):
        raise MissingPaperDataError(f"'{spec.name}' no tiene tabla de núcleos publicada")
    return spec.kind


def kernel_table(spec: LatticeSpec) -> KernelTable:
    return get_library().get_kernel_table(_two_dimensional(spec))


def paper_b(spec: LatticeSpec) -> PaperSeries:
    return get_library().get_series(_two_dimensional(spec))


def paper_a(spec: LatticeSpec) -> List[Fraction]:
    """a_k = (q/2) b_k / (k(k-1) q^k), k = 2..K."""
    return paper_b(spec).term_coefficients()


def tree_series(q: int, order: int) -> PaperSeries:
    """La serie del árbol q-regular en la forma impresa: b_k = 1 para todo k."""
    return PaperSeries(spec=bethe_spec(q), order=order, b=[1] * (order - 1))


def printed_order(kind: LatticeKind) -> int:
    order = get_library().printed_order(kind)
    if order is None:
        raise MissingPaperDataError(f"'{LatticeKind(kind).value}' no tiene serie publicada")
    return order


def dump_constants() -> str:
    """Volcado JSON determinista de todas las constantes ('num/den')."""
    library = get_library()
    payload = [
        library.get(kind).model_dump(mode="json", by_alias=True)
        for kind in library.get_all_lattices()
    ]
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def load_constants(text: str) -> List[PaperDataFile]:
    return [PaperDataFile.model_validate(item) for item in json.loads(text)]
