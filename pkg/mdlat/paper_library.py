from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional

from mdlat.errors import MissingPaperDataError
from mdlat.lattice import lattice_spec
from mdlat.models.lattice_models import LatticeKind
from mdlat.models.paper_models import KernelTable, PaperDataFile, PaperSeries

logger = logging.getLogger(__name__)

DEFAULT_DATA_DIR = Path(__file__).parent / "data" / "paper"


class PaperLibrary:
    """
    Carga en memoria los archivos de constantes publicadas (*.paper.json)
    y expone métodos de consulta por red.

    Estructura esperada en disco:

        mdlat/
          data/
            paper/
              square.paper.json
              triangular.paper.json
              hexagonal.paper.json

    Cada archivo debe cumplir el esquema de PaperDataFile.
    """

    def __init__(self, base_dir: Path = DEFAULT_DATA_DIR) -> None:
        """
        :param base_dir: Directorio con los *.paper.json.
        """
        self.base_dir = base_dir
        self._by_lattice: Dict[LatticeKind, PaperDataFile] = {}
        self._load_all()

    # ------------------------------------------------------------------
    # CARGA INTERNA
    # ------------------------------------------------------------------
    def _load_all(self) -> None:
        """
        Carga todos los *.paper.json del directorio.

        No lanza excepción si el directorio no existe; deja la librería
        vacía y las consultas fallarán con MissingPaperDataError.
        """
        if not self.base_dir.exists():
            logger.warning(f"Directorio de constantes inexistente: {self.base_dir}")
            return

        for path in sorted(self.base_dir.glob("*.paper.json")):
            content = path.read_text(encoding="utf-8")
            data = PaperDataFile.model_validate_json(content)
            expected = lattice_spec(data.lattice)
            if (data.coordination, data.girth) != (expected.coordination, expected.girth):
                logger.error(
                    f"{path.name}: q={data.coordination}, cintura={data.girth} no coinciden "
                    f"con {expected.name} (q={expected.coordination}, cintura={expected.girth})"
                )
                continue
            if data.lattice in self._by_lattice:
                logger.warning(
                    f"Constantes duplicadas para {data.lattice.value} en {path.name}; "
                    "se conserva la primera"
                )
                continue
            self._by_lattice[data.lattice] = data

    # ------------------------------------------------------------------
    # API PÚBLICA
    # ------------------------------------------------------------------
    def get(self, kind: LatticeKind) -> PaperDataFile:
        data = self._by_lattice.get(LatticeKind(kind))
        if data is None:
            raise MissingPaperDataError(
                f"no hay constantes publicadas para '{LatticeKind(kind).value}'"
            )
        return data

    def get_kernel_table(self, kind: LatticeKind) -> KernelTable:
        return self.get(kind).kernel_table()

    def get_series(self, kind: LatticeKind) -> PaperSeries:
        return self.get(kind).paper_series()

    def printed_order(self, kind: LatticeKind) -> Optional[int]:
        data = self._by_lattice.get(LatticeKind(kind))
        return data.series.order if data else None

    def get_all_lattices(self) -> List[LatticeKind]:
        order = list(LatticeKind)
        return sorted(self._by_lattice.keys(), key=order.index)

    def reload(self) -> None:
        """Recarga todas las constantes desde disco."""
        self._by_lattice.clear()
        self._load_all()
