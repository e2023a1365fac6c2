"""
Lectura y escritura de tablas mixtas en CSV, y esquemas JSON de tipos.
"""

import csv
import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from ..config import get_logger
from ..models import DataError, DuplicateHeaderError, MixedDataTable, SchemaError, VariableKind
from .base import TableParserBase

logger = get_logger(__name__)

PathLike = Union[str, Path]


class CsvTableParser(TableParserBase):
    """Parser de ficheros CSV (RFC 4180, UTF-8 con o sin BOM, con cabecera)."""

    def _read_raw(self) -> pd.DataFrame:
        path = Path(self.source)
        if not path.is_file():
            raise DataError(f"No se puede leer el fichero {path}")

        with open(path, newline='', encoding='utf-8-sig') as f:
            header = next(csv.reader(f), None)
        if not header:
            raise DataError(f"El fichero {path} no tiene cabecera")
        header = [name.strip() for name in header]
        duplicates = sorted({name for name in header if header.count(name) > 1})
        if duplicates:
            raise DuplicateHeaderError(f"Cabecera con nombres repetidos: {', '.join(duplicates)}")

        raw = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            encoding='utf-8-sig',
        )
        raw.columns = header
        return raw


def load_schema(path: PathLike) -> List[Dict]:
    """
    Lee un esquema JSON: lista de ``{name, kind, levels?}``.

    Args:
        path: Ruta del esquema

    Returns:
        Lista de entradas validadas
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            entries = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"No se puede leer el esquema {path}: {e}") from e

    if not isinstance(entries, list):
        raise SchemaError("El esquema debe ser una lista de variables")
    for entry in entries:
        if not isinstance(entry, dict) or 'name' not in entry or 'kind' not in entry:
            raise SchemaError(f"Entrada de esquema inválida: {entry!r}")
        VariableKind.parse(str(entry['kind']))
    return entries


def load_csv(
    path: PathLike,
    schema: Optional[Sequence[Dict]] = None,
    na_policy: str = 'drop_row',
) -> MixedDataTable:
    """
    Carga un CSV como tabla mixta.

    Sin esquema, una columna numérica con más de ``max(10, √n)`` valores distintos
    es continua; el resto son discretas con niveles en orden de aparición.

    Args:
        path: Fichero CSV
        schema: Tipos explícitos opcionales
        na_policy: Solo ``'drop_row'`` (eliminación por filas)

    Returns:
        MixedDataTable; ``dropped_rows`` indica las filas eliminadas
    """
    if na_policy != 'drop_row':
        raise DataError(f"Política de ausentes no soportada: {na_policy}")
    return CsvTableParser(str(path), schema).parse()


def table_schema(table: MixedDataTable) -> List[Dict]:
    """Esquema JSON equivalente a los tipos y niveles de la tabla."""
    schema = []
    for spec in table.specs:
        entry: Dict = {'name': spec.name, 'kind': spec.kind.value}
        if spec.is_discrete:
            entry['levels'] = list(spec.levels)
        schema.append(entry)
    return schema


def save_schema(table: MixedDataTable, path: PathLike) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(table_schema(table), f, indent=2, ensure_ascii=False)


def write_csv(table: MixedDataTable, path: PathLike) -> None:
    """Escribe la tabla con reales a 17 cifras significativas (ida y vuelta exacta)."""
    table.to_frame().to_csv(path, index=False, float_format='%.17g', encoding='utf-8')
    logger.debug(f"Tabla escrita en {path}")
