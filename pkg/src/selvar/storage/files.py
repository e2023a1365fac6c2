"""
Almacenamiento de resultados en ficheros con manifiesto de huellas.
"""

import hashlib
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict

import pandas as pd

from ..config import get_logger
from ..models import RunManifest
from ..reports import dumps_stable, frame_to_csv
from .base import ResultStorageBase

logger = get_logger(__name__)


def calculate_file_hash(filepath: str) -> str:
    """
    Calcula hash SHA-256 de un archivo.

    Args:
        filepath: Ruta al archivo

    Returns:
        Hash hexadecimal del archivo, o cadena vacía si no se puede leer
    """
    sha256_hash = hashlib.sha256()
    try:
        with open(filepath, "rb") as f:
            for byte_block in iter(lambda: f.read(4096), b""):
                sha256_hash.update(byte_block)
        return sha256_hash.hexdigest()
    except OSError as e:
        logger.error(f"Error calculando hash de {filepath}: {e}")
        return ""


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).strftime('%Y-%m-%dT%H:%M:%SZ')


class FileResultStorage(ResultStorageBase):
    """Escribe las salidas en disco (UTF-8, fin de línea ``\\n``) y recuerda sus huellas."""

    def __init__(self):
        self._outputs: Dict[str, str] = {}

    def save_text(self, path: str, content: str) -> str:
        target = Path(path)
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, 'w', encoding='utf-8', newline='\n') as f:
            f.write(content)
        self._outputs[str(target)] = calculate_file_hash(str(target))
        logger.debug(f"Salida escrita: {target}")
        return str(target)

    def save_json(self, path: str, obj: Any) -> str:
        return self.save_text(path, dumps_stable(obj))

    def save_frame(self, path: str, frame: pd.DataFrame) -> str:
        return self.save_text(path, frame_to_csv(frame))

    def digests(self) -> Dict[str, str]:
        return dict(sorted(self._outputs.items()))

    def write_manifest(self, manifest: RunManifest, path: str) -> str:
        manifest.outputs = self.digests()
        if not manifest.finished_at:
            manifest.finished_at = utc_timestamp()
        target = Path(path)
        with open(target, 'w', encoding='utf-8', newline='\n') as f:
            f.write(dumps_stable(manifest))
        logger.info(f"Manifiesto escrito en {target} ({len(manifest.outputs)} salidas)")
        return str(target)
