"""
Resultados de ajuste: OLS, validación cruzada, elastic net, varrank y tests kNN.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .enums import VarrankScheme


@dataclass(frozen=True)
class OlsFit:
    """Ajuste por mínimos cuadrados con tests t por coeficiente."""
    column_names: Tuple[str, ...]
    column_vars: Tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    r2: float
    adj_r2: float
    residual_variance: float
    in_sample_mse: float
    n: int
    p_used: int
    target: str = ''
    fitted: Optional[np.ndarray] = None

    @property
    def df_resid(self) -> int:
        return self.n - self.p_used - 1

    @property
    def regressors(self) -> Tuple[str, ...]:
        """Variables (no columnas) presentes en el ajuste, en orden de diseño."""
        seen = []
        for var in self.column_vars[1:]:
            if var not in seen:
                seen.append(var)
        return tuple(seen)

    def coefficient(self, column: str) -> float:
        return float(self.coefficients[self.column_names.index(column)])

    def variable_pvalues(self) -> Dict[str, float]:
        """p-valor mínimo de cada bloque de columnas asociado a una variable."""
        result: Dict[str, float] = {}
        for var, p_value in zip(self.column_vars[1:], self.p_values[1:]):
            result[var] = min(result.get(var, 1.0), float(p_value))
        return result

    def variable_tvalues(self) -> Dict[str, float]:
        """Estadístico t de mayor valor absoluto de cada bloque."""
        result: Dict[str, float] = {}
        for var, t_value in zip(self.column_vars[1:], self.t_values[1:]):
            if var not in result or abs(t_value) > abs(result[var]):
                result[var] = float(t_value)
        return result


@dataclass(frozen=True)
class CvResult:
    """MSE por fold de una validación cruzada en h grupos."""
    folds: int
    fold_mse: Tuple[float, ...]
    mean_mse: float
    seed: int


@dataclass(frozen=True)
class ElasticNetFit:
    """Solución de descenso por coordenadas del criterio elastic net."""
    beta: np.ndarray
    lambda1: float
    lambda2: float
    iterations: int
    converged: bool
    objective_trace: Tuple[float, ...] = ()

    @property
    def alpha(self) -> float:
        """Proporción de penalización cuadrática ``λ2 / (λ1 + λ2)``."""
        total = self.lambda1 + self.lambda2
        return self.lambda2 / total if total > 0 else 0.0

    @property
    def flags(self) -> Tuple[str, ...]:
        return () if self.converged else ("NOT_CONVERGED",)


@dataclass(frozen=True)
class VarrankRanking:
    """
    Selección voraz hacia delante de varrank.

    ``scores[s, j]`` es la puntuación del candidato ``j`` en el paso ``s``
    (NaN si ya estaba seleccionado).
    """
    target: str
    candidates: Tuple[str, ...]
    selected: Tuple[str, ...]
    scores: np.ndarray
    scheme: VarrankScheme
    relevance: Dict[str, float]
    excluded: Tuple[str, ...] = ()

    def step_score(self, variable: str) -> float:
        """Puntuación con la que se eligió una variable seleccionada."""
        step = self.selected.index(variable)
        return float(self.scores[step, self.candidates.index(variable)])


@dataclass(frozen=True)
class IndependenceTestResult:
    """Resultado del test de independencia por permutaciones."""
    mi_hat: float
    p_value: float
    reject: bool
    variable: str = ''
