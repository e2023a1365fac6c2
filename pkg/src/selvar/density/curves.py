"""
Curvas de densidad para comparar la marginal empírica con las estimadas.
"""

from typing import Optional, Sequence

import numpy as np
import pandas as pd
from statsmodels.nonparametric.kde import KDEUnivariate

from ..config import DensityConfig, get_logger
from ..models import MixedDataTable, OlsFit
from ..models.table import VarRef
from .engine import ConditionalDensityModel, fit_conditional_density, mixture_marginal
from .kernels import silverman_reference

logger = get_logger(__name__)

DEFAULT_POINTS = 512


def _empirical(values: np.ndarray, grid: np.ndarray) -> np.ndarray:
    kde = KDEUnivariate(np.asarray(values, dtype=np.float64))
    kde.fit(kernel='gau', bw='silverman', fft=False)
    return np.asarray(kde.evaluate(grid), dtype=np.float64)


def _grid(values: np.ndarray, half_width: float, points: int) -> np.ndarray:
    return np.linspace(values.min() - 3.0 * half_width, values.max() + 3.0 * half_width, points)


def density_curves(model: ConditionalDensityModel, points: int = DEFAULT_POINTS) -> pd.DataFrame:
    """
    Tabla ``y, f_empirical, f_conditional`` sobre una malla del objetivo.

    Para un objetivo continuo la malla cubre ``[min - 3h, max + 3h]`` con
    ``points`` puntos; para uno discreto se usan sus niveles y las
    frecuencias relativas.
    """
    target = model.target
    marginal = mixture_marginal(model)
    if target.discrete:
        grid = np.arange(target.levels)
        empirical = np.bincount(target.values, minlength=target.levels) / model.n
        return pd.DataFrame({'y': grid, 'f_empirical': empirical, 'f_conditional': marginal(grid)})

    grid = _grid(target.values, model.bandwidths.target, points)
    return pd.DataFrame({
        'y': grid,
        'f_empirical': _empirical(target.values, grid),
        'f_conditional': marginal(grid),
    })


def per_variable_curves(
    table: MixedDataTable,
    target: VarRef,
    variables: Sequence[VarRef],
    cv: Optional[DensityConfig] = None,
    points: int = DEFAULT_POINTS,
) -> pd.DataFrame:
    """
    Marginal del objetivo reconstruida con cada variable por separado.

    Devuelve una columna ``f|<nombre>`` por variable junto a la empírica.
    """
    y = table.continuous_column(target)
    grid = _grid(y, silverman_reference(y), points)
    frame = pd.DataFrame({'y': grid, 'f_empirical': _empirical(y, grid)})
    for var in variables:
        model = fit_conditional_density(table, target, [var], cv)
        frame[f"f|{table.spec(var).name}"] = mixture_marginal(model)(grid)
    logger.debug(f"Curvas por variable: {len(variables)} ajustes")
    return frame


def fitted_value_curves(fit: OlsFit, y: np.ndarray, points: int = DEFAULT_POINTS) -> pd.DataFrame:
    """Densidad del objetivo frente a la de los valores ajustados de un OLS."""
    if fit.fitted is None:
        raise ValueError("El ajuste no conserva los valores ajustados")
    y = np.asarray(y, dtype=np.float64)
    both = np.concatenate([y, fit.fitted])
    grid = _grid(both, silverman_reference(y), points)
    return pd.DataFrame({
        'y': grid,
        'f_empirical': _empirical(y, grid),
        'f_fitted': _empirical(fit.fitted, grid),
    })
