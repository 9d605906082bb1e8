"""
Reportes de verificación y tablas de curvas lambda(p).

Los valores de curva salen en flotante con 15 cifras significativas; los
coeficientes, como racionales exactos 'num/den'.
"""

from __future__ import annotations

import asyncio
import csv
import io
import json
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from mdlat.config import Settings
from mdlat.errors import UsageError
from mdlat.lattice import LATTICE_ORDER
from mdlat.models.expansion_models import PExpansion, Strategy
from mdlat.models.lattice_models import LatticeKind, LatticeSpec
from mdlat.models.paper_models import PaperSeries
from mdlat.models.report_models import CurveTable, VerificationReport, VerifyRequest
from mdlat.orchestrator.verify_orchestrator import VerifyOrchestrator
from mdlat.paperdata import (
    lambda_1d_exact,
    lambda_leading,
    lambda_tree,
    lambda_truncated,
    paper_b,
)
from mdlat.ratseries import rational_to_str

logger = logging.getLogger(__name__)

DEFAULT_LATTICES: List[LatticeKind] = [
    LatticeKind.square,
    LatticeKind.triangular,
    LatticeKind.hexagonal,
]


# ----------------------------------------------------------------------
# VERIFICACIÓN
# ----------------------------------------------------------------------
def verify_all(
    orders: Optional[Dict[LatticeKind, int]] = None,
    lattices: Optional[Sequence[LatticeKind]] = None,
    include_chain: bool = False,
    strategy: Optional[Strategy] = None,
    size: Optional[Tuple[int, int]] = None,
    record_timings: bool = False,
    settings: Optional[Settings] = None,
    orchestrator: Optional[VerifyOrchestrator] = None,
) -> VerificationReport:
    """
    Ejecuta el pipeline completo por red y compara con las constantes publicadas.

    :raises UsageError: si algún orden supera el impreso.
    :raises StabilizationGateError: si los tamaños no bastan para el orden.
    """
    kinds = list(lattices or DEFAULT_LATTICES)
    if include_chain and LatticeKind.chain not in kinds:
        kinds.append(LatticeKind.chain)
    request = VerifyRequest(
        lattices=kinds,
        orders=orders or {},
        strategy=strategy,
        size=size,
        record_timings=record_timings,
    )
    runner = orchestrator or VerifyOrchestrator(settings=settings)
    return asyncio.run(runner.verify(request))


def render_report_json(report: VerificationReport) -> str:
    payload = report.model_dump(mode="json")
    for entry in payload["entries"]:
        if entry.get("wall_time_s") is None:
            entry.pop("wall_time_s", None)
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_report_text(report: VerificationReport) -> str:
    lines: List[str] = []
    for entry in report.entries:
        status = "OK" if entry.equal else "MISMATCH"
        lines.append(
            f"{entry.lattice.value}: K={entry.order} strategy={entry.strategy.value} "
            f"sizes={' '.join(f'{a}x{b}' for a, b in entry.sizes)} [{status}]"
        )
        for c in entry.comparisons:
            mark = "==" if c.equal else "!="
            lines.append(f"  b_{c.k} = {c.computed} {mark} {c.expected}")
        lines.append(f"  A_2 = {entry.a2}")
        if entry.first_deviation is not None:
            lines.append(f"  first b_k != 1 at k={entry.first_deviation} (girth {entry.girth})")
        if entry.wall_time_s is not None:
            lines.append(f"  wall time {entry.wall_time_s:.3f} s")
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(
        f"{report.matched_comparisons}/{report.total_comparisons} exact matches: {verdict}"
    )
    return "\n".join(lines) + "\n"


def render_expansion_text(expansion: PExpansion) -> str:
    spec = expansion.spec
    lines = [f"lattice {spec.name} q={spec.coordination} K={expansion.order}"]
    for k, value in enumerate(expansion.A):
        lines.append(f"A_{k} = {rational_to_str(value)}")
    for k in range(2, expansion.order + 1):
        lines.append(f"b_{k} = {rational_to_str(expansion.b_at(k))}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# CURVAS
# ----------------------------------------------------------------------
def tree_difference_coefficients(
    series: Union[PExpansion, PaperSeries],
) -> List[Fraction]:
    """(q/2)(b_k - 1)/(k(k-1) q^k), k = 2..K: coeficientes de red menos árbol."""
    q = series.spec.coordination
    return [
        Fraction(q, 2) * (bk - 1) / (k * (k - 1) * q**k)
        for k, bk in zip(range(2, series.order + 1), series.b)
    ]


def make_grid(p_min: Fraction, p_max: Fraction, steps: int) -> List[Fraction]:
    """`steps` intervalos iguales en [p_min, p_max], puntos exactos."""
    p_min, p_max = Fraction(p_min), Fraction(p_max)
    if steps < 1:
        raise UsageError(f"steps={steps}: se requiere >= 1")
    if not 0 <= p_min <= p_max <= 1:
        raise UsageError(f"malla [{p_min}, {p_max}] fuera de [0, 1]")
    width = p_max - p_min
    return [p_min + width * Fraction(i, steps) for i in range(steps + 1)]


def _columns(spec: LatticeSpec) -> List[str]:
    q = spec.coordination
    value = "chain_exact" if spec.kind == LatticeKind.chain else f"{spec.name}_truncated"
    return [f"leading_q{q}", value, f"tree_q{q}", f"{spec.name}_minus_tree"]


def curve_table(specs: Sequence[LatticeSpec], grid: Sequence[Fraction]) -> CurveTable:
    """
    Columnas: p y, por red, el término principal, la serie truncada (la
    forma exacta en la cadena), el árbol de igual q y la diferencia.
    """
    if any(not 0 <= Fraction(p) <= 1 for p in grid):
        raise UsageError("la malla debe estar contenida en [0, 1]")

    unique = {s.kind: s for s in specs}
    specs = [unique[kind] for kind in LATTICE_ORDER if kind in unique]
    if not specs:
        raise UsageError("se requiere al menos una red: square, triangular, hexagonal o chain")
    columns = ["p"]
    for spec in specs:
        columns.extend(_columns(spec))

    printed = {s.kind: paper_b(s) for s in specs if s.kind != LatticeKind.chain}
    rows: List[List[float]] = []
    for point in grid:
        p = float(point)
        row = [p]
        for spec in specs:
            q = spec.coordination
            if spec.kind == LatticeKind.chain:
                value = lambda_1d_exact(p)
            else:
                value = lambda_truncated(printed[spec.kind], p)
            tree = lambda_tree(q, p)
            row.extend([lambda_leading(q, p), value, tree, value - tree])
        rows.append(row)

    differences = {
        kind.value: [rational_to_str(c) for c in tree_difference_coefficients(series)]
        for kind, series in printed.items()
    }
    logger.debug(f"tabla de curvas: {len(rows)} filas, {len(columns)} columnas")
    return CurveTable(columns=columns, rows=rows, exact_differences=differences)


def format_float(value: float) -> str:
    text = format(value, ".15g")
    return "0" if text == "-0" else text


def render_table_csv(table: CurveTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_float(v) for v in row])
    return buffer.getvalue()


def render_table_json(table: CurveTable) -> str:
    payload = {
        "columns": table.columns,
        "rows": [[format_float(v) for v in row] for row in table.rows],
        "exactDifferences": table.exact_differences,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_table_text(table: CurveTable) -> str:
    cells = [table.columns] + [[format_float(v) for v in row] for row in table.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    for lattice, coeffs in table.exact_differences.items():
        lines.append(f"{lattice} - tree: " + ", ".join(coeffs))
    return "\n".join(lines) + "\n"
