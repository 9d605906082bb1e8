from __future__ import annotations

from collections import Counter
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class LatticeKind(str, Enum):
    """Familias de redes soportadas; `bethe` es el árbol regular de referencia."""

    square = "square"
    triangular = "triangular"
    hexagonal = "hexagonal"
    chain = "chain"
    bethe = "bethe"


class Geometry(str, Enum):
    """Condiciones de contorno de una instancia finita."""

    torus = "torus"
    cylinder = "cylinder"
    custom = "custom"


class LatticeSpec(BaseModel):
    """
    Descriptor de una familia de redes: coordinación q y cintura (girth).

    `girth = None` representa cintura infinita (la cadena).
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    kind: LatticeKind
    coordination: int = Field(ge=2, description="Número de vecinos q.")
    girth: Optional[int] = Field(
        default=None,
        ge=3,
        description="Longitud del ciclo más corto; None = infinito.",
    )

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def q(self) -> int:
        return self.coordination


class TorusGraph(BaseModel):
    """
    Instancia finita (toro, cilindro o grafo ad hoc) lista para enumerar.

    Los vértices se indexan 0..N-1; en redes 2D el sitio (i, j) tiene
    índice j * Lx + i, de modo que el barrido avanza por rebanadas de Lx
    sitios a lo largo de la segunda coordenada.
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    spec: Optional[LatticeSpec] = None
    geometry: Geometry = Geometry.custom
    dims: Tuple[int, int]
    num_vertices: int = Field(ge=0)
    edges: Tuple[Tuple[int, int], ...]

    @model_validator(mode="after")
    def _simple_graph(self) -> "TorusGraph":
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"lazo en el vértice {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"arista ({u}, {v}) fuera de rango")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"arista paralela {key}")
            seen.add(key)

        if self.geometry == Geometry.torus and self.spec is not None:
            degrees = self.degrees()
            bad = [v for v, d in enumerate(degrees) if d != self.spec.coordination]
            if bad:
                raise ValueError(
                    f"toro no regular: vértice {bad[0]} tiene grado {degrees[bad[0]]}"
                )
            if 2 * len(self.edges) != self.num_vertices * self.spec.coordination:
                raise ValueError("E != N q / 2 en el toro")
        return self

    # ------------------------------------------------------------------
    # CONSULTAS
    # ------------------------------------------------------------------
    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def graph_id(self) -> str:
        kind = self.spec.name if self.spec else "graph"
        return f"{kind}-{self.geometry.value}-{self.dims[0]}x{self.dims[1]}"

    def degrees(self) -> List[int]:
        counter: Counter = Counter()
        for u, v in self.edges:
            counter[u] += 1
            counter[v] += 1
        return [counter[v] for v in range(self.num_vertices)]

    def neighbors(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    # ------------------------------------------------------------------
    # CONSTRUCCIÓN / TRANSFORMACIÓN
    # ------------------------------------------------------------------
    @classmethod
    def from_edge_list(
        cls, num_vertices: int, edges: List[Tuple[int, int]]
    ) -> "TorusGraph":
        """Grafo ad hoc (caminos, grafos de prueba, importación de listas de aristas)."""
        return cls(
            spec=None,
            geometry=Geometry.custom,
            dims=(num_vertices, 1),
            num_vertices=num_vertices,
            edges=tuple((int(u), int(v)) for u, v in edges),
        )

    def without_vertex(self, vertex: int) -> "TorusGraph":
        """Borra un vértice y reindexa conservando el orden relativo."""
        if not 0 <= vertex < self.num_vertices:
            raise ValueError(f"vértice {vertex} fuera de rango")

        def relabel(v: int) -> int:
            return v - 1 if v > vertex else v

        kept = [(relabel(u), relabel(v)) for u, v in self.edges if vertex not in (u, v)]
        return TorusGraph(
            spec=self.spec,
            geometry=Geometry.custom,
            dims=self.dims,
            num_vertices=self.num_vertices - 1,
            edges=tuple(kept),
        )

    def to_edge_list_text(self) -> str:
        """Una pareja 'u v' (índices base 0) por línea."""
        return "".join(f"{u} {v}\n" for u, v in self.edges)
