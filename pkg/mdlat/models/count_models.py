from __future__ import annotations

from typing import List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)


class MatchingCountTable(BaseModel):
    """
    Conteos exactos a(s) de emparejamientos con s dímeros, s = 0..K.

    En JSON los conteos viajan como cadenas decimales:

      {"lattice": "square", "dims": [4, 4], "counts": ["1", "32", "400"]}
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="ignore")

    graph_id: str = Field(alias="graphId")
    lattice: Optional[str] = None
    dims: Tuple[int, int]
    num_vertices: int = Field(alias="numVertices", ge=0)
    num_edges: int = Field(alias="numEdges", ge=0)
    max_order: int = Field(alias="K", ge=0)
    counts: Tuple[int, ...]

    @field_validator("counts", mode="before")
    @classmethod
    def _parse_counts(cls, value):
        return tuple(int(c) for c in value)

    @model_validator(mode="after")
    def _basic_invariants(self) -> "MatchingCountTable":
        if len(self.counts) != self.max_order + 1:
            raise ValueError("counts debe tener longitud K+1")
        if any(c < 0 for c in self.counts):
            raise ValueError("conteo negativo")
        if self.counts[0] != 1:
            raise ValueError(f"a(0) debe ser 1 (es {self.counts[0]})")
        if self.max_order >= 1 and self.counts[1] != self.num_edges:
            raise ValueError(f"a(1) debe ser E={self.num_edges} (es {self.counts[1]})")
        for s in range(self.num_vertices // 2 + 1, self.max_order + 1):
            if self.counts[s]:
                raise ValueError(f"a({s}) debe ser 0 para s > N/2")
        return self

    @field_serializer("counts")
    def _serialize_counts(self, counts: Tuple[int, ...]) -> List[str]:
        return [str(c) for c in counts]

    def to_wire(self) -> dict:
        """Forma pública del volcado JSON de la CLI."""
        return {
            "lattice": self.lattice or "graph",
            "dims": list(self.dims),
            "counts": [str(c) for c in self.counts],
        }
