"""
Jerarquía de excepciones y registros de diagnóstico.

Las condiciones recuperables no se lanzan como excepciones: se anotan como
códigos (``flags``) en los resultados y se recogen en ``Diagnostic``.
"""

from dataclasses import dataclass
from typing import Optional, Sequence


class SelvarError(Exception):
    """Error base del sistema."""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage


class ConfigError(SelvarError):
    """Parámetro de configuración inválido."""


# Datos

class DataError(SelvarError):
    """Problema con los datos de entrada."""


class EmptyTableError(DataError):
    """No quedan filas utilizables."""


class MixedTypesInColumnError(DataError):
    """Columna con valores numéricos y no numéricos sin esquema explícito."""


class DuplicateHeaderError(DataError):
    """Nombre de columna repetido en la cabecera."""


class SchemaError(DataError):
    """Esquema inválido o incompatible con los datos."""


class UnknownVariableError(DataError):
    """Variable inexistente en la tabla."""


class NotDiscreteError(DataError):
    """Se esperaba una variable discreta."""


class NotContinuousError(DataError):
    """Se esperaba una variable continua."""


class ConstantColumnError(DataError):
    """Columna sin variabilidad."""


class TooFewRowsError(DataError):
    """Número de filas insuficiente para la operación."""


# Estimación

class EstimationError(SelvarError):
    """Fallo numérico o de precondición en un estimador."""


class PreconditionError(EstimationError):
    """Argumentos fuera del dominio de la operación."""


class TooFewSamplesError(EstimationError):
    """Muestra demasiado pequeña para el estimador kNN."""


class AllTiedError(EstimationError):
    """Todos los valores de una columna son iguales."""


class RankDeficientError(EstimationError):
    """Matriz de diseño sin rango completo."""

    def __init__(self, columns: Sequence[str], stage: Optional[str] = None):
        super().__init__(f"Matriz de diseño sin rango completo; columnas: {', '.join(columns)}", stage)
        self.columns = list(columns)


class FoldTooSmallError(EstimationError):
    """Un fold deja menos filas de entrenamiento que columnas de diseño."""


class SingletonPathStepError(EstimationError):
    """El coeficiente de entropía no se define para path-steps de una variable."""


class SameNodeError(EstimationError):
    """Distancia pedida entre un nodo y sí mismo."""


# Pipeline

class SelectionError(SelvarError):
    """Error en una etapa del pipeline, con el path-step donde ocurrió."""

    def __init__(self, message: str, stage: str, k: Optional[int] = None):
        where = f"{stage}" if k is None else f"{stage} (w_{k})"
        super().__init__(f"{where}: {message}", stage)
        self.k = k


@dataclass(frozen=True)
class Diagnostic:
    """Incidencia no fatal registrada durante una ejecución."""
    stage: str
    code: str
    message: str
    recoverable: bool = True


class Flags:
    """Códigos de incidencias no fatales."""
    ZERO_MARGIN = "ZERO_MARGIN"
    EMPTY_GROUP = "EMPTY_GROUP"
    DEGENERATE_GROUP = "DEGENERATE_GROUP"
    DEGENERATE_CORRELATION = "DEGENERATE_CORRELATION"
    DEGENERATE_GROUP_VARIANCE = "DEGENERATE_GROUP_VARIANCE"
    CONSTANT_COLUMN = "CONSTANT_COLUMN"
    INFINITE_EDGE = "INFINITE_EDGE"
    ALL_SMOOTHED_OUT = "ALL_SMOOTHED_OUT"
    DENSITY_FLOORED = "DENSITY_FLOORED"
    ISOLATED_TARGET = "ISOLATED_TARGET"
    ONLY_SINGLETON_STEP = "ONLY_SINGLETON_STEP"
    ALL_PRUNED = "ALL_PRUNED"
    NOT_CONVERGED = "NOT_CONVERGED"
    ROWS_DROPPED = "ROWS_DROPPED"
    ZERO_ENTROPY = "ZERO_ENTROPY"
    CV_SUBSAMPLED = "CV_SUBSAMPLED"
