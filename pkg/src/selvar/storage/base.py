"""
Clase base para almacenamiento de resultados.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

import pandas as pd

from ..models import RunManifest


class ResultStorageBase(ABC):
    """Clase base abstracta para persistir las salidas de un comando."""

    @abstractmethod
    def save_text(self, path: str, content: str) -> str:
        """
        Guarda un texto (DOT, JSON ya serializado...).

        Args:
            path: Destino
            content: Contenido

        Returns:
            Ruta escrita
        """
        pass

    @abstractmethod
    def save_json(self, path: str, obj: Any) -> str:
        """Guarda un objeto como JSON estable."""
        pass

    @abstractmethod
    def save_frame(self, path: str, frame: pd.DataFrame) -> str:
        """Guarda una tabla como CSV."""
        pass

    @abstractmethod
    def digests(self) -> Dict[str, str]:
        """Huella SHA-256 de cada salida guardada hasta ahora."""
        pass

    @abstractmethod
    def write_manifest(self, manifest: RunManifest, path: str) -> str:
        """
        Escribe el manifiesto de la ejecución junto con las huellas de las salidas.

        Returns:
            Ruta del manifiesto
        """
        pass
