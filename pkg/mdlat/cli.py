"""
Punto de entrada de línea de comandos.

    mdlat verify [--lattice L] [--order K] [--strategy S] [--all] [--timings]
    mdlat coeffs --lattice L --order K
    mdlat counts --lattice L --size AxB --max-dimers K
    mdlat kernels --lattice L
    mdlat table --lattice L[,L...] --p-min a --p-max b --steps n --format csv
    mdlat constants
    mdlat graph --lattice L --size AxB

Los datos van a stdout (o a --output); el progreso, a stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, NoReturn, Optional, Sequence, Tuple

from pydantic import ValidationError

from mdlat.config import Settings, load_settings
from mdlat.errors import LatticeSizeError, MdlatError, PaperMismatchError, UsageError
from mdlat.lattice import build_instance, parse_lattice
from mdlat.matchcount import count_matchings
from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import Geometry, LatticeKind, LatticeSpec
from mdlat.orchestrator.verify_orchestrator import VerifyOrchestrator
from mdlat.paperdata import dump_constants, kernel_table
from mdlat.ratseries import rational_to_str
from mdlat.strategies import default_strategy
from mdlat.report import (
    curve_table,
    make_grid,
    render_expansion_text,
    render_report_json,
    render_report_text,
    render_table_csv,
    render_table_json,
    render_table_text,
    verify_all,
)

logger = logging.getLogger(__name__)


class MdlatArgumentParser(argparse.ArgumentParser):
    """argparse que reporta los errores de uso como UsageError (código 1)."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


# ----------------------------------------------------------------------
# PARSEO DE ARGUMENTOS
# ----------------------------------------------------------------------
def parse_size(
    text: str, spec: LatticeSpec, geometry: Geometry = Geometry.torus
) -> Tuple[int, int]:
    """'AxB', o un solo entero n (cadena: C_n o camino de n vértices; 2D: n x n)."""
    parts = text.lower().split("x")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise LatticeSizeError(f"tamaño inválido: '{text}' (se esperaba AxB)") from None
    if len(values) == 2:
        return values[0], values[1]
    if len(values) != 1:
        raise LatticeSizeError(f"tamaño inválido: '{text}' (se esperaba AxB)")
    n = values[0]
    if spec.kind == LatticeKind.chain:
        return (1, n) if geometry == Geometry.cylinder else (n, 1)
    return n, n


def parse_lattice_list(text: str) -> List[LatticeSpec]:
    return [parse_lattice(name) for name in text.split(",") if name.strip()]


def build_parser() -> MdlatArgumentParser:
    parser = MdlatArgumentParser(
        prog="mdlat",
        description="Verificación exacta de las series en p de la entropía monómero-dímero.",
    )
    common = MdlatArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="progreso en stderr (INFO)")
    common.add_argument("--output", help="escribe los datos en este archivo en lugar de stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> MdlatArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    verify = add("verify", "reproduce los b_k publicados")
    verify.add_argument("--lattice", help="red o lista separada por comas")
    verify.add_argument("--order", type=int, help="orden K (por defecto, el impreso)")
    verify.add_argument("--strategy", choices=[s.value for s in Strategy])
    verify.add_argument("--size", help="fuerza el tamaño de la compuerta, AxB")
    verify.add_argument("--all", action="store_true", help="incluye la cadena (K = 8)")
    verify.add_argument("--timings", action="store_true", help="añade tiempos al reporte")
    verify.add_argument("--format", choices=["json", "text"], default="json")

    coeffs = add("coeffs", "A_k y b_k calculados")
    coeffs.add_argument("--lattice", required=True)
    coeffs.add_argument("--order", type=int, required=True)
    coeffs.add_argument("--strategy", choices=[s.value for s in Strategy])
    coeffs.add_argument("--size")
    coeffs.add_argument("--format", choices=["json", "text"], default="text")

    counts = add("counts", "conteos exactos a(0..K)")
    counts.add_argument("--lattice", required=True)
    counts.add_argument("--size", required=True)
    counts.add_argument("--max-dimers", type=int, required=True)
    counts.add_argument(
        "--geometry", choices=[Geometry.torus.value, Geometry.cylinder.value], default="torus"
    )
    counts.add_argument("--method", choices=["dp", "bruteforce"], default="dp")
    counts.add_argument("--format", choices=["json", "text"], default="json")

    kernels = add("kernels", "núcleos publicados")
    kernels.add_argument("--lattice", required=True)
    kernels.add_argument("--format", choices=["json", "text"], default="text")

    table = add("table", "curvas lambda(p)")
    table.add_argument("--lattice", default="square,triangular,hexagonal")
    table.add_argument("--p-min", default="0")
    table.add_argument("--p-max", default="1")
    table.add_argument("--steps", type=int, default=10)
    table.add_argument("--format", choices=["csv", "json", "text"], default="csv")

    add("constants", "vuelca todas las constantes publicadas")

    graph = add("graph", "lista de aristas de una instancia")
    graph.add_argument("--lattice", required=True)
    graph.add_argument("--size", required=True)
    graph.add_argument(
        "--geometry", choices=[Geometry.torus.value, Geometry.cylinder.value], default="torus"
    )
    return parser


def _fraction_arg(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{name}: valor inválido '{text}'") from None


# ----------------------------------------------------------------------
# MANEJADORES
# ----------------------------------------------------------------------
def _size_geometry(spec: LatticeSpec, strategy: Optional[str]) -> Geometry:
    chosen = Strategy(strategy) if strategy else default_strategy(spec.kind)
    return Geometry.cylinder if chosen == Strategy.cylinder else Geometry.torus


Handler = Callable[[argparse.Namespace, Settings], Tuple[str, int]]


def _handle_verify(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    specs = parse_lattice_list(args.lattice) if args.lattice else None
    kinds = [s.kind for s in specs] if specs else None
    orders: Dict[LatticeKind, int] = {}
    if args.order is not None:
        targets = kinds or [LatticeKind.square, LatticeKind.triangular, LatticeKind.hexagonal]
        orders = {k: args.order for k in targets}
    size = None
    if args.size:
        if not specs or len(specs) != 1:
            raise UsageError("--size requiere exactamente una red en --lattice")
        size = parse_size(args.size, specs[0], _size_geometry(specs[0], args.strategy))

    report = verify_all(
        orders=orders,
        lattices=kinds,
        include_chain=args.all,
        strategy=Strategy(args.strategy) if args.strategy else None,
        size=size,
        record_timings=args.timings,
        settings=settings,
    )
    text = render_report_json(report) if args.format == "json" else render_report_text(report)
    if not report.passed:
        mismatch = PaperMismatchError(
            f"{report.matched_comparisons}/{report.total_comparisons} coincidencias exactas"
        )
        logger.error(str(mismatch))
        return text, mismatch.exit_code
    return text, 0


def _handle_coeffs(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    spec = parse_lattice(args.lattice)
    size = parse_size(args.size, spec, _size_geometry(spec, args.strategy)) if args.size else None
    strategy = Strategy(args.strategy) if args.strategy else None

    async def compute():
        with ProcessPoolExecutor(max_workers=settings.worker_count) as pool:
            orchestrator = VerifyOrchestrator(settings=settings, executor=pool)
            return await orchestrator.compute_expansion(spec, args.order, strategy, size)

    expansion = asyncio.run(compute())
    if args.format == "json":
        return json.dumps(expansion.to_wire(), indent=2) + "\n", 0
    return render_expansion_text(expansion), 0


def _handle_counts(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    spec = parse_lattice(args.lattice)
    geometry = Geometry(args.geometry)
    dims = parse_size(args.size, spec, geometry)
    graph = build_instance(spec, geometry, dims)
    table = count_matchings(
        graph, args.max_dimers, method=args.method, check=settings.debug_checks
    )
    if args.format == "json":
        return json.dumps(table.to_wire()) + "\n", 0
    return " ".join(str(c) for c in table.counts) + "\n", 0


def _handle_kernels(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    table = kernel_table(parse_lattice(args.lattice))
    values = [rational_to_str(v) for v in table.values]
    if args.format == "json":
        return json.dumps({"lattice": table.spec.name, "kernels": values}, indent=2) + "\n", 0
    return "".join(f"J_{i} = {v}\n" for i, v in enumerate(values, start=1)), 0


def _handle_table(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    specs = parse_lattice_list(args.lattice)
    grid = make_grid(
        _fraction_arg(args.p_min, "--p-min"),
        _fraction_arg(args.p_max, "--p-max"),
        args.steps,
    )
    table = curve_table(specs, grid)
    renderers = {"csv": render_table_csv, "json": render_table_json, "text": render_table_text}
    return renderers[args.format](table), 0


def _handle_constants(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    return dump_constants(), 0


def _handle_graph(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    spec = parse_lattice(args.lattice)
    geometry = Geometry(args.geometry)
    graph = build_instance(spec, geometry, parse_size(args.size, spec, geometry))
    header = f"# {graph.graph_id} N={graph.num_vertices} E={graph.num_edges}\n"
    return header + graph.to_edge_list_text(), 0


HANDLERS: Dict[str, Handler] = {
    "verify": _handle_verify,
    "coeffs": _handle_coeffs,
    "counts": _handle_counts,
    "kernels": _handle_kernels,
    "table": _handle_table,
    "constants": _handle_constants,
    "graph": _handle_graph,
}


# ----------------------------------------------------------------------
# ENTRADA
# ----------------------------------------------------------------------
def _configure_logging(settings: Settings, verbose: bool) -> None:
    package_logger = logging.getLogger("mdlat")
    package_logger.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.INFO if verbose else settings.log_level)
    package_logger.propagate = False


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Ejecuta la CLI y devuelve el código de salida (0, 1 uso, 2 compuerta, 3 discrepancia)."""
    try:
        settings = load_settings()
        args = build_parser().parse_args(argv)
        _configure_logging(settings, args.verbose)
        text, code = HANDLERS[args.command](args, settings)
        _emit(text, args.output)
        return code
    except MdlatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
