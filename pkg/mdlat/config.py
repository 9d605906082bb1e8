from __future__ import annotations

import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from mdlat.errors import ConfigError

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """
    Configuración de ejecución leída del entorno (y de un `.env` opcional).

    Variables reconocidas:
      - MDLAT_THREADS: tope de procesos de trabajo (por defecto, todos los núcleos).
      - MDLAT_LOG_LEVEL: nivel del log de diagnóstico (por defecto WARNING).
      - MDLAT_DEBUG_CHECKS: verifica a(0), a(1), a(2) en cada tabla calculada.
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    threads: Optional[int] = Field(
        default=None,
        ge=1,
        description="Número máximo de procesos; None = os.cpu_count().",
    )
    log_level: str = Field(default="WARNING")
    debug_checks: bool = Field(default=False)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"nivel de log desconocido: {value}")
        return value

    @property
    def worker_count(self) -> int:
        return self.threads or os.cpu_count() or 1


def load_settings(env_file: Optional[str] = None) -> Settings:
    """
    Carga `.env` (si existe) y construye Settings desde os.environ.

    :raises ConfigError: si alguna variable no es válida.
    """
    load_dotenv(env_file, override=False)

    raw = {
        "threads": os.getenv("MDLAT_THREADS") or None,
        "log_level": os.getenv("MDLAT_LOG_LEVEL", "WARNING"),
        "debug_checks": os.getenv("MDLAT_DEBUG_CHECKS", "false"),
    }
    try:
        return Settings.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"configuración inválida: {exc.errors()[0]['msg']}") from exc
