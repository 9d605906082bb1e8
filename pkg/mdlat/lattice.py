from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional, Tuple

import networkx as nx

from mdlat.errors import LatticeSizeError, UnknownLatticeError
from mdlat.models.lattice_models import Geometry, LatticeKind, LatticeSpec, TorusGraph

logger = logging.getLogger(__name__)


LATTICE_SPECS: Dict[LatticeKind, LatticeSpec] = {
    LatticeKind.square: LatticeSpec(kind=LatticeKind.square, coordination=4, girth=4),
    LatticeKind.triangular: LatticeSpec(kind=LatticeKind.triangular, coordination=6, girth=3),
    LatticeKind.hexagonal: LatticeSpec(kind=LatticeKind.hexagonal, coordination=3, girth=6),
    LatticeKind.chain: LatticeSpec(kind=LatticeKind.chain, coordination=2, girth=None),
}

# Orden fijo de reportes: square, triangular, hexagonal, chain.
LATTICE_ORDER: List[LatticeKind] = [
    LatticeKind.square,
    LatticeKind.triangular,
    LatticeKind.hexagonal,
    LatticeKind.chain,
]

_ALIASES: Dict[str, LatticeKind] = {
    "square": LatticeKind.square,
    "rectangular": LatticeKind.square,
    "sq": LatticeKind.square,
    "triangular": LatticeKind.triangular,
    "tri": LatticeKind.triangular,
    "hexagonal": LatticeKind.hexagonal,
    "hex": LatticeKind.hexagonal,
    "honeycomb": LatticeKind.hexagonal,
    "chain": LatticeKind.chain,
    "1d": LatticeKind.chain,
}


def lattice_spec(kind: LatticeKind) -> LatticeSpec:
    return LATTICE_SPECS[LatticeKind(kind)]


def bethe_spec(q: int) -> LatticeSpec:
    """Árbol q-regular; sin ciclos, así que la cintura es infinita."""
    return LatticeSpec(kind=LatticeKind.bethe, coordination=q, girth=None)


def parse_lattice(name: str) -> LatticeSpec:
    """Acepta el nombre canónico o un alias ('tri', 'hex', '1d', ...)."""
    kind = _ALIASES.get(name.strip().lower())
    if kind is None:
        raise UnknownLatticeError(
            f"red desconocida: '{name}' (opciones: square, triangular, hexagonal, chain)"
        )
    return LATTICE_SPECS[kind]


# ----------------------------------------------------------------------
# VALIDACIÓN DE TAMAÑOS
# ----------------------------------------------------------------------
def _check_periodic_dim(spec: LatticeSpec, value: int, label: str) -> None:
    if spec.kind == LatticeKind.hexagonal:
        if value < 4:
            raise LatticeSizeError(f"{label}={value}: la red hexagonal requiere >= 4")
        if value % 2:
            raise LatticeSizeError(f"{label}={value}: la red hexagonal requiere dimensión par")
    elif value < 3:
        raise LatticeSizeError(f"{label}={value}: se requiere >= 3 para un grafo simple")


def _normalized(edges: List[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in edges))


# ----------------------------------------------------------------------
# CONSTRUCTORES
# ----------------------------------------------------------------------
def build_torus(spec: LatticeSpec, lx: int, ly: int = 1) -> TorusGraph:
    """
    Toro Lx x Ly (la cadena es el ciclo C_Lx y exige Ly = 1).

    square:     (i,j)-(i+1,j), (i,j)-(i,j+1)
    triangular: lo anterior + diagonales (i,j)-(i+1,j+1)
    hexagonal:  horizontales siempre, verticales solo si i+j es par (brick wall)
    """
    if spec.kind == LatticeKind.chain:
        if lx < 3:
            raise LatticeSizeError(f"Lx={lx}: el ciclo requiere longitud >= 3")
        if ly != 1:
            raise LatticeSizeError(f"Ly={ly}: la cadena es unidimensional (Ly = 1)")
        edges = [(i, (i + 1) % lx) for i in range(lx)]
        return TorusGraph(
            spec=spec,
            geometry=Geometry.torus,
            dims=(lx, 1),
            num_vertices=lx,
            edges=_normalized(edges),
        )

    _check_periodic_dim(spec, lx, "Lx")
    _check_periodic_dim(spec, ly, "Ly")

    def idx(i: int, j: int) -> int:
        return (j % ly) * lx + (i % lx)

    edges: List[Tuple[int, int]] = []
    for j in range(ly):
        for i in range(lx):
            v = idx(i, j)
            edges.append((v, idx(i + 1, j)))
            if spec.kind != LatticeKind.hexagonal or (i + j) % 2 == 0:
                edges.append((v, idx(i, j + 1)))
            if spec.kind == LatticeKind.triangular:
                edges.append((v, idx(i + 1, j + 1)))

    graph = TorusGraph(
        spec=spec,
        geometry=Geometry.torus,
        dims=(lx, ly),
        num_vertices=lx * ly,
        edges=_normalized(edges),
    )
    logger.debug(f"Toro {graph.graph_id}: N={graph.num_vertices}, E={graph.num_edges}")
    return graph


def build_cylinder(spec: LatticeSpec, circumference: int, length: int) -> TorusGraph:
    """
    Cilindro: periódico en la primera coordenada, borde libre en la segunda.

    Para la cadena la circunferencia debe ser 1 y el resultado es el camino
    de `length` vértices.
    """
    if length < 1:
        raise LatticeSizeError(f"length={length}: se requiere >= 1")

    if spec.kind == LatticeKind.chain:
        if circumference != 1:
            raise LatticeSizeError("la cadena solo admite circunferencia 1 (un camino)")
        edges = [(j, j + 1) for j in range(length - 1)]
        return TorusGraph(
            spec=spec,
            geometry=Geometry.cylinder,
            dims=(1, length),
            num_vertices=length,
            edges=_normalized(edges),
        )

    _check_periodic_dim(spec, circumference, "circumference")
    c = circumference

    def idx(i: int, j: int) -> int:
        return j * c + (i % c)

    edges = []
    for j in range(length):
        for i in range(c):
            v = idx(i, j)
            edges.append((v, idx(i + 1, j)))
            if j + 1 >= length:
                continue
            if spec.kind != LatticeKind.hexagonal or (i + j) % 2 == 0:
                edges.append((v, idx(i, j + 1)))
            if spec.kind == LatticeKind.triangular:
                edges.append((v, idx(i + 1, j + 1)))

    return TorusGraph(
        spec=spec,
        geometry=Geometry.cylinder,
        dims=(c, length),
        num_vertices=c * length,
        edges=_normalized(edges),
    )


def build_instance(
    spec: LatticeSpec, geometry: Geometry, dims: Tuple[int, int]
) -> TorusGraph:
    if geometry == Geometry.torus:
        return build_torus(spec, *dims)
    if geometry == Geometry.cylinder:
        return build_cylinder(spec, *dims)
    raise LatticeSizeError(f"geometría no construible: {geometry.value}")


# ----------------------------------------------------------------------
# LISTAS DE ARISTAS / AUDITORÍAS
# ----------------------------------------------------------------------
def parse_edge_list(text: str, num_vertices: Optional[int] = None) -> TorusGraph:
    """Inversa de `TorusGraph.to_edge_list_text` (líneas 'u v'; '#' comenta)."""
    edges: List[Tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"línea {lineno}: se esperaba 'u v', hay '{line}'")
        edges.append((int(parts[0]), int(parts[1])))
    if num_vertices is None:
        num_vertices = 1 + max((max(e) for e in edges), default=-1)
    return TorusGraph.from_edge_list(num_vertices, edges)


def to_networkx(graph: TorusGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.num_vertices))
    g.add_edges_from(graph.edges)
    return g


def shortest_cycle_length(graph: TorusGraph) -> Optional[int]:
    """Cintura por fuerza bruta (networkx); None si el grafo es acíclico."""
    girth = nx.girth(to_networkx(graph))
    if girth == math.inf:
        return None
    return int(girth)
