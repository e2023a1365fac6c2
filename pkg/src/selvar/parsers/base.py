"""
Parser base para tablas de datos mixtos.
"""

import math
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import get_logger
from ..models import (
    EmptyTableError,
    MixedDataTable,
    MixedTypesInColumnError,
    SchemaError,
    VariableKind,
    VariableSpec,
)

logger = get_logger(__name__)


class TableParserBase(ABC):
    """
    Clase base abstracta para parsers de tablas.

    Las subclases solo leen el origen como texto; el tipado, la política de
    valores ausentes y la codificación de niveles son comunes.
    """

    MISSING_TOKENS = frozenset({'', 'NA', 'NaN', 'nan', 'N/A', '?'})

    def __init__(self, source: str, schema: Optional[Sequence[Dict]] = None):
        """
        Inicializa el parser.

        Args:
            source: Ruta del origen de datos
            schema: Lista opcional de ``{name, kind, levels?}`` que fija los tipos
        """
        self.source = source
        self.schema = list(schema) if schema is not None else None

    @abstractmethod
    def _read_raw(self) -> pd.DataFrame:
        """Lee el origen como DataFrame de cadenas, una columna por variable."""
        pass

    def parse(self) -> MixedDataTable:
        """
        Parsea el origen completo y devuelve la tabla tipada.

        Returns:
            MixedDataTable con las filas incompletas eliminadas
        """
        raw = self._read_raw()
        raw = raw.apply(lambda column: column.map(self._clean_text))

        missing = raw.apply(lambda column: column.map(self._is_missing))
        complete = ~missing.any(axis=1)
        dropped = int((~complete).sum())
        raw = raw.loc[complete].reset_index(drop=True)

        if raw.shape[0] == 0:
            raise EmptyTableError(f"No hay filas utilizables en {self.source}")
        if dropped:
            logger.warning(f"{dropped} filas con valores ausentes descartadas de {self.source}")

        specs, columns = self._type_columns(raw)
        table = MixedDataTable(specs=tuple(specs), columns=tuple(columns), dropped_rows=dropped)
        logger.info(
            f"Tabla cargada: {table.n_rows} filas, {table.p} variables "
            f"({sum(s.is_discrete for s in specs)} discretas)"
        )
        return table

    def _type_columns(self, raw: pd.DataFrame) -> Tuple[List[VariableSpec], List[np.ndarray]]:
        if self.schema is None:
            return self._infer_columns(raw)
        return self._apply_schema(raw)

    def _infer_columns(self, raw: pd.DataFrame) -> Tuple[List[VariableSpec], List[np.ndarray]]:
        n = raw.shape[0]
        threshold = max(10.0, math.sqrt(n))
        specs, columns = [], []
        for index, name in enumerate(raw.columns):
            values = raw[name]
            numbers = self._to_number(values)
            numeric = numbers.notna()
            if numeric.all():
                if numbers.nunique() > threshold:
                    specs.append(VariableSpec(name, VariableKind.CONTINUOUS, index))
                    columns.append(numbers.to_numpy(dtype=np.float64))
                    continue
            elif numeric.any():
                raise MixedTypesInColumnError(
                    f"La columna {name} mezcla valores numéricos y no numéricos"
                )
            levels = tuple(pd.unique(values))
            specs.append(VariableSpec(name, VariableKind.DISCRETE, index, levels))
            columns.append(self._encode(values, levels))
        return specs, columns

    def _apply_schema(self, raw: pd.DataFrame) -> Tuple[List[VariableSpec], List[np.ndarray]]:
        by_name = {entry['name']: entry for entry in self.schema}
        missing = [name for name in raw.columns if name not in by_name]
        unknown = [name for name in by_name if name not in raw.columns]
        if missing or unknown:
            raise SchemaError(
                f"El esquema no coincide con la cabecera (sin esquema: {missing}, "
                f"inexistentes: {unknown})"
            )

        specs, columns = [], []
        for index, name in enumerate(raw.columns):
            entry = by_name[name]
            kind = VariableKind.parse(entry['kind'])
            values = raw[name]
            if kind is VariableKind.CONTINUOUS:
                numbers = self._to_number(values)
                if numbers.isna().any():
                    raise SchemaError(f"La columna continua {name} contiene valores no numéricos")
                specs.append(VariableSpec(name, kind, index))
                columns.append(numbers.to_numpy(dtype=np.float64))
            else:
                levels = tuple(str(level) for level in entry.get('levels') or pd.unique(values))
                unexpected = set(values) - set(levels)
                if unexpected:
                    raise SchemaError(f"Niveles no declarados en {name}: {sorted(unexpected)}")
                specs.append(VariableSpec(name, kind, index, levels))
                columns.append(self._encode(values, levels))
        return specs, columns

    def _clean_text(self, text) -> str:
        """Limpia y normaliza texto."""
        return str(text).strip() if text is not None else ""

    def _is_missing(self, text: str) -> bool:
        return text in self.MISSING_TOKENS

    def _to_number(self, values: pd.Series) -> pd.Series:
        """Convierte a float; lo no numérico o no finito queda como NaN."""
        numbers = pd.to_numeric(values, errors='coerce').astype(np.float64)
        return numbers.where(np.isfinite(numbers))

    @staticmethod
    def _encode(values: pd.Series, levels: Sequence[str]) -> np.ndarray:
        lookup = {level: code for code, level in enumerate(levels)}
        return values.map(lookup).to_numpy(dtype=np.int64)
