"""
Conteo exacto de emparejamientos con a lo sumo K dímeros.

Dos motores:
  - `count_bruteforce`: DFS sobre aristas ordenadas (oráculo para grafos pequeños).
  - `count_frontier_dp`: programación dinámica de frontera, vértice a vértice.

La DP elimina los vértices en orden de índice (en redes 2D: rebanada a
rebanada, cada una de abajo arriba en la primera coordenada). Cada arista
se procesa cuando se procesa su extremo mayor. El estado es el conjunto
de vértices vivos ya emparejados; un vértice sale de la frontera tras
procesar su último vecino. En el toro, los vértices de la rebanada 0
siguen vivos hasta la última rebanada: esa es la costura periódica, y
como cada estado necesita un dímero por cada dos vértices marcados, el
truncamiento a K dímeros acota su población.

El polinomio de cada estado (coeficientes 0..K) se empaqueta en un
único entero de Python con dígitos de `bits` bits: multiplicar por x es
un desplazamiento y sumar polinomios es sumar enteros. Ningún dígito
supera C(E, d), así que nunca hay acarreo entre dígitos.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from math import comb
from typing import Dict, List, Sequence, Tuple

from mdlat.errors import BruteForceTooLargeError, CountInvariantError, FrontierTooWideError
from mdlat.models.count_models import MatchingCountTable
from mdlat.models.lattice_models import Geometry, LatticeKind, TorusGraph

logger = logging.getLogger(__name__)

MAX_FRONTIER_WIDTH = 14
MAX_LIVE_VERTICES = 2 * MAX_FRONTIER_WIDTH + 4
BRUTE_FORCE_MAX_EDGES = 40
BRUTE_FORCE_MAX_ORDER = 4


def _make_table(graph: TorusGraph, max_order: int, counts: Sequence[int]) -> MatchingCountTable:
    return MatchingCountTable(
        graph_id=graph.graph_id,
        lattice=graph.spec.name if graph.spec else None,
        dims=graph.dims,
        num_vertices=graph.num_vertices,
        num_edges=graph.num_edges,
        max_order=max_order,
        counts=tuple(counts),
    )


# ----------------------------------------------------------------------
# FUERZA BRUTA
# ----------------------------------------------------------------------
def count_bruteforce(graph: TorusGraph, max_order: int) -> MatchingCountTable:
    """
    Enumera todos los emparejamientos de hasta `max_order` aristas.

    :raises BruteForceTooLargeError: si E > 40 y K > 4.
    """
    if graph.num_edges > BRUTE_FORCE_MAX_EDGES and max_order > BRUTE_FORCE_MAX_ORDER:
        raise BruteForceTooLargeError(
            f"too large for brute force: E={graph.num_edges}, K={max_order} "
            f"(límite E <= {BRUTE_FORCE_MAX_EDGES} o K <= {BRUTE_FORCE_MAX_ORDER})"
        )

    edge_masks = [(1 << u) | (1 << v) for u, v in graph.edges]
    counts = [0] * (max_order + 1)

    def extend(start: int, used: int, depth: int) -> None:
        counts[depth] += 1
        if depth == max_order:
            return
        for idx in range(start, len(edge_masks)):
            mask = edge_masks[idx]
            if used & mask:
                continue
            extend(idx + 1, used | mask, depth + 1)

    extend(0, 0, 0)
    return _make_table(graph, max_order, counts)


# ----------------------------------------------------------------------
# DP DE FRONTERA
# ----------------------------------------------------------------------
def _elimination_plan(graph: TorusGraph) -> Tuple[List[List[int]], List[int]]:
    """
    Para cada vértice v: vecinos anteriores (aristas que se emiten en v) y
    máscara de los vértices que abandonan la frontera tras procesar v.
    """
    adj = graph.neighbors()
    back = [sorted(u for u in adj[v] if u < v) for v in range(graph.num_vertices)]
    leaving = [0] * graph.num_vertices
    for u in range(graph.num_vertices):
        last = max([u] + adj[u])
        leaving[last] |= 1 << u
    return back, leaving


def frontier_width(graph: TorusGraph) -> int:
    """Máximo número de vértices vivos a la vez durante el barrido."""
    _, leaving = _elimination_plan(graph)
    live = width = 0
    for v in range(graph.num_vertices):
        live += 1
        width = max(width, live)
        live -= bin(leaving[v]).count("1")
    return width


def _check_frontier(graph: TorusGraph) -> None:
    lattice_instance = (
        graph.geometry in (Geometry.torus, Geometry.cylinder)
        and graph.spec is not None
        and graph.spec.kind != LatticeKind.chain
    )
    if lattice_instance and graph.dims[0] > MAX_FRONTIER_WIDTH:
        raise FrontierTooWideError(
            f"Lx={graph.dims[0]} supera el ancho de frontera máximo {MAX_FRONTIER_WIDTH}"
        )
    width = frontier_width(graph)
    if width > MAX_LIVE_VERTICES:
        raise FrontierTooWideError(
            f"frontera de {width} vértices (máximo {MAX_LIVE_VERTICES})"
        )


def _digit_bits(num_edges: int, max_order: int) -> int:
    largest = max(comb(num_edges, d) for d in range(max_order + 1))
    return largest.bit_length() + 1


def count_frontier_dp(graph: TorusGraph, max_order: int) -> MatchingCountTable:
    """
    Conteos a(0..K) por DP de frontera con acumuladores de precisión arbitraria.

    :raises FrontierTooWideError: si la instancia excede el ancho de frontera.
    """
    _check_frontier(graph)
    back, leaving = _elimination_plan(graph)

    bits = _digit_bits(graph.num_edges, max_order)
    full = (1 << (bits * (max_order + 1))) - 1
    peak = 1

    # matched-mask -> polinomio empaquetado
    states: Dict[int, int] = {0: 1}
    for v in range(graph.num_vertices):
        v_bit = 1 << v
        keep = ~leaving[v]
        neighbors = [(1 << u) for u in back[v]]
        nxt: Dict[int, int] = defaultdict(int)

        for matched, poly in states.items():
            nxt[matched & keep] += poly
            if not neighbors:
                continue
            shifted = (poly << bits) & full
            if not shifted:
                continue
            for u_bit in neighbors:
                if matched & u_bit:
                    continue
                nxt[(matched | u_bit | v_bit) & keep] += shifted

        states = nxt
        peak = max(peak, len(states))

    packed = states.get(0, 0)
    digit = (1 << bits) - 1
    counts = [(packed >> (bits * d)) & digit for d in range(max_order + 1)]
    logger.debug(f"DP {graph.graph_id} K={max_order}: pico de {peak} estados")
    return _make_table(graph, max_order, counts)


# ----------------------------------------------------------------------
# INVARIANTES / DESPACHO
# ----------------------------------------------------------------------
def expected_a2(graph: TorusGraph) -> int:
    """a(2) = C(E,2) - sum_v C(deg v, 2)."""
    return comb(graph.num_edges, 2) - sum(comb(d, 2) for d in graph.degrees())


def check_closed_forms(table: MatchingCountTable, graph: TorusGraph) -> None:
    """
    :raises CountInvariantError: si a(0), a(1) o a(2) no cumplen su fórmula cerrada.
    """
    expected = [1, graph.num_edges, expected_a2(graph)]
    for s, value in enumerate(expected[: table.max_order + 1]):
        if table.counts[s] != value:
            raise CountInvariantError(
                f"{table.graph_id}: a({s}) = {table.counts[s]}, se esperaba {value}"
            )


def count_matchings(
    graph: TorusGraph,
    max_order: int,
    method: str = "dp",
    check: bool = False,
) -> MatchingCountTable:
    """Despacha a la DP o a la fuerza bruta; `check` verifica las fórmulas cerradas."""
    if method == "dp":
        table = count_frontier_dp(graph, max_order)
    elif method == "bruteforce":
        table = count_bruteforce(graph, max_order)
    else:
        raise ValueError(f"método de conteo desconocido: {method}")
    if check:
        check_closed_forms(table, graph)
    return table
