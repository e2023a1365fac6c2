"""
Tabla de datos mixtos (discretos y continuos) y sus resúmenes.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .enums import VariableKind
from .errors import DataError, NotContinuousError, NotDiscreteError, UnknownVariableError

VarRef = Union[int, str]


@dataclass(frozen=True)
class VariableSpec:
    """Descripción de una columna: nombre, tipo y niveles (si es discreta)."""
    name: str
    kind: VariableKind
    index: int
    levels: Tuple[str, ...] = ()

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if not self.name:
            raise DataError("El nombre de la variable no puede estar vacío")
        if self.kind is VariableKind.DISCRETE:
            if not self.levels:
                raise DataError(f"La variable discreta {self.name} no tiene niveles")
            if len(set(self.levels)) != len(self.levels):
                raise DataError(f"La variable {self.name} tiene niveles duplicados")
        elif self.levels:
            raise DataError(f"La variable continua {self.name} no admite niveles")

    @property
    def is_discrete(self) -> bool:
        return self.kind is VariableKind.DISCRETE

    @property
    def n_levels(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class MixedDataTable:
    """
    Muestra tipada e inmutable.

    Las columnas discretas guardan códigos enteros ``0..L-1`` y las continuas
    reales finitos. ``dropped_rows`` recuerda las filas descartadas al cargar.
    """
    specs: Tuple[VariableSpec, ...]
    columns: Tuple[np.ndarray, ...]
    dropped_rows: int = 0
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if len(self.specs) != len(self.columns):
            raise DataError("Número de especificaciones distinto del número de columnas")
        names = [spec.name for spec in self.specs]
        if len(set(names)) != len(names):
            raise DataError("Los nombres de variable deben ser únicos")

        frozen: List[np.ndarray] = []
        n_rows = None
        for position, (spec, column) in enumerate(zip(self.specs, self.columns)):
            if spec.index != position:
                raise DataError(f"Índice inconsistente para {spec.name}: {spec.index} != {position}")
            if spec.is_discrete:
                values = np.array(column, dtype=np.int64, copy=True)
                if values.size and (values.min() < 0 or values.max() >= spec.n_levels):
                    raise DataError(f"Código fuera de rango en la variable {spec.name}")
            else:
                values = np.array(column, dtype=np.float64, copy=True)
                if not np.all(np.isfinite(values)):
                    raise DataError(f"Valores no finitos en la variable continua {spec.name}")
            if values.ndim != 1:
                raise DataError(f"La columna {spec.name} debe ser unidimensional")
            if n_rows is None:
                n_rows = values.shape[0]
            elif values.shape[0] != n_rows:
                raise DataError("Todas las columnas deben tener la misma longitud")
            values.setflags(write=False)
            frozen.append(values)

        if n_rows is None or n_rows < 2:
            raise DataError("La tabla necesita al menos 2 filas")

        object.__setattr__(self, 'columns', tuple(frozen))
        self._index.update({name: i for i, name in enumerate(names)})

    @property
    def n_rows(self) -> int:
        return int(self.columns[0].shape[0])

    @property
    def p(self) -> int:
        return len(self.specs)

    @property
    def names(self) -> List[str]:
        return [spec.name for spec in self.specs]

    @property
    def kinds(self) -> List[VariableKind]:
        return [spec.kind for spec in self.specs]

    def index_of(self, var: VarRef) -> int:
        """Resuelve un nombre o índice de variable a su índice."""
        if isinstance(var, (int, np.integer)):
            if not 0 <= int(var) < self.p:
                raise UnknownVariableError(f"Índice de variable fuera de rango: {var}")
            return int(var)
        try:
            return self._index[var]
        except KeyError:
            raise UnknownVariableError(f"Variable desconocida: {var}") from None

    def spec(self, var: VarRef) -> VariableSpec:
        return self.specs[self.index_of(var)]

    def column(self, var: VarRef) -> np.ndarray:
        return self.columns[self.index_of(var)]

    def discrete_column(self, var: VarRef) -> np.ndarray:
        """Códigos de una variable discreta (NotDiscrete si es continua)."""
        spec = self.spec(var)
        if not spec.is_discrete:
            raise NotDiscreteError(f"La variable {spec.name} no es discreta")
        return self.columns[spec.index]

    def continuous_column(self, var: VarRef) -> np.ndarray:
        """Valores de una variable continua (NotContinuous si es discreta)."""
        spec = self.spec(var)
        if spec.is_discrete:
            raise NotContinuousError(f"La variable {spec.name} no es continua")
        return self.columns[spec.index]

    def subset_rows(self, rows: Sequence[int]) -> 'MixedDataTable':
        """Nueva tabla con las filas indicadas (mismos niveles y especificaciones)."""
        rows = np.asarray(rows, dtype=np.int64)
        return MixedDataTable(
            specs=self.specs,
            columns=tuple(column[rows] for column in self.columns),
        )

    def to_frame(self) -> pd.DataFrame:
        """DataFrame con etiquetas de nivel para las discretas."""
        data = {}
        for spec, column in zip(self.specs, self.columns):
            if spec.is_discrete:
                data[spec.name] = np.asarray(spec.levels, dtype=object)[column]
            else:
                data[spec.name] = column
        return pd.DataFrame(data, columns=self.names)


@dataclass(frozen=True)
class CellCounts:
    """Tabla de contingencia de dos variables discretas."""
    dims: Tuple[int, int]
    counts: np.ndarray
    row_margins: np.ndarray
    col_margins: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @classmethod
    def from_counts(cls, counts) -> 'CellCounts':
        """Construye la tabla a partir de una matriz de conteos."""
        matrix = np.asarray(counts, dtype=np.int64)
        if matrix.ndim != 2 or np.any(matrix < 0):
            raise DataError("Los conteos deben formar una matriz no negativa")
        return cls(
            dims=(int(matrix.shape[0]), int(matrix.shape[1])),
            counts=matrix,
            row_margins=matrix.sum(axis=1),
            col_margins=matrix.sum(axis=0),
        )


@dataclass(frozen=True)
class GroupStats:
    """
    Conteo, media y varianza (denominador n) de una continua por nivel de una discreta.

    ``s0`` es la varianza global con denominador N.
    """
    n_i: np.ndarray
    mean_i: np.ndarray
    var_i: np.ndarray
    s0: float
    grand_mean: float
    flags: Tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return int(self.n_i.sum())

    @property
    def observed(self) -> np.ndarray:
        """Máscara de niveles con al menos una observación."""
        return self.n_i >= 1
