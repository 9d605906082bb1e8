"""Verificación exacta de las series en p de la entropía monómero-dímero."""

__version__ = "0.1.0"
