"""
Núcleos producto: gaussiano para continuas y Aitchison-Aitken para discretas.
"""

import math

import numpy as np
from statsmodels.nonparametric.bandwidths import bw_silverman

from ..config import DensityConfig
from ..models import ConstantColumnError

# Las densidades se acotan inferiormente antes de tomar logaritmos
DENSITY_FLOOR = 1e-300
LOG_FLOOR = math.log(DENSITY_FLOOR)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def silverman_reference(values: np.ndarray) -> float:
    """Ancho de banda de referencia de Silverman de una muestra continua."""
    values = np.asarray(values, dtype=np.float64)
    reference = float(bw_silverman(values))
    if not math.isfinite(reference) or reference <= 0.0:
        reference = float(np.std(values)) * values.shape[0] ** (-0.2)
    if reference <= 0.0:
        raise ConstantColumnError("No se puede fijar un ancho de banda para una columna constante")
    return reference


def continuous_multipliers(cfg: DensityConfig) -> np.ndarray:
    """Multiplicadores log-espaciados de la referencia de Silverman."""
    return np.geomspace(cfg.grid_low, cfg.grid_high, cfg.grid_points)


def discrete_grid(levels: int, cfg: DensityConfig) -> np.ndarray:
    """Malla uniforme de λ en ``[0, (L-1)/L]``; el extremo superior es el núcleo plano."""
    if levels <= 1:
        return np.zeros(1)
    return np.linspace(0.0, (levels - 1) / levels, cfg.discrete_grid_points)


def start_index(multipliers: np.ndarray) -> int:
    """Punto de la malla más cercano (en escala log) a la referencia."""
    return int(np.argmin(np.abs(np.log(multipliers))))


def log_kernel_matrix(a: np.ndarray, b: np.ndarray, bandwidth: float,
                      discrete: bool, levels: int = 0) -> np.ndarray:
    """
    Matriz ``log K(a_i, b_j)`` de un núcleo univariante.

    Un ancho infinito (continuas) o ``λ = (L-1)/L`` (discretas) dan un núcleo
    constante. Los logaritmos se acotan en ``LOG_FLOOR``.
    """
    if discrete:
        if levels <= 1:
            return np.zeros((a.shape[0], b.shape[0]))
        same = a[:, None] == b[None, :]
        log_same = math.log(max(1.0 - bandwidth, DENSITY_FLOOR))
        log_other = math.log(max(bandwidth / (levels - 1), DENSITY_FLOOR))
        return np.where(same, log_same, log_other)

    if math.isinf(bandwidth):
        return np.zeros((a.shape[0], b.shape[0]))
    scaled = (a[:, None] - b[None, :]) / bandwidth
    return np.maximum(-0.5 * scaled * scaled - math.log(bandwidth) - _LOG_SQRT_2PI, LOG_FLOOR)
