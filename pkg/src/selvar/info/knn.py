"""
Estimador kNN de información mutua (Kraskov, tipo 1) y test de independencia
por permutaciones.
"""

import hashlib
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence

import numpy as np
from scipy.special import digamma
from sklearn.neighbors import NearestNeighbors

from ..config import KraskovConfig, get_logger
from ..models import (
    AllTiedError,
    IndependenceTestResult,
    MixedDataTable,
    PreconditionError,
    TooFewSamplesError,
)
from ..models.table import VarRef

logger = get_logger(__name__)

JITTER_SCALE = 1e-10


def _jitter(values: np.ndarray, seed: int) -> np.ndarray:
    """
    Añade ruido uniforme de amplitud ``1e-10 × rango`` para romper empates.

    El generador depende de la semilla y del contenido de la columna, de modo
    que una misma columna recibe siempre el mismo ruido.
    """
    values = np.asarray(values, dtype=np.float64)
    span = float(np.ptp(values))
    if span == 0.0:
        raise AllTiedError("Columna constante: el estimador kNN no está definido")
    digest = hashlib.sha256(values.tobytes()).digest()
    rng = np.random.default_rng([seed, int.from_bytes(digest[:8], 'little')])
    return values + rng.uniform(-1.0, 1.0, size=values.shape[0]) * JITTER_SCALE * span


def _count_within(values: np.ndarray, radius: np.ndarray) -> np.ndarray:
    """Número de puntos a distancia estrictamente menor que ``radius`` (sin contar el propio)."""
    ordered = np.sort(values)
    low = np.searchsorted(ordered, values - radius, side='right')
    high = np.searchsorted(ordered, values + radius, side='left')
    return np.maximum(high - low - 1, 0)


def _ksg(x: np.ndarray, y: np.ndarray, k: int) -> float:
    n = x.shape[0]
    points = np.column_stack([x, y])
    search = NearestNeighbors(n_neighbors=k + 1, metric='chebyshev').fit(points)
    distances, _ = search.kneighbors(points)
    radius = distances[:, k]
    nx = _count_within(x, radius)
    ny = _count_within(y, radius)
    return float(digamma(k) + digamma(n) - np.mean(digamma(nx + 1) + digamma(ny + 1)))


def _check_sample(x: np.ndarray, y: np.ndarray, k: int) -> None:
    if x.ndim != 1 or x.shape != y.shape:
        raise PreconditionError("x e y deben ser vectores de la misma longitud")
    if k < 1:
        raise PreconditionError("k debe ser positivo")
    if x.shape[0] <= k:
        raise TooFewSamplesError(f"Se necesitan más de k={k} observaciones (hay {x.shape[0]})")


def kraskov_mi(x: Sequence[float], y: Sequence[float], k: int = 3, seed: int = 0) -> float:
    """
    Estimación kNN de la MI (nats) con vecindarios en norma del máximo.

    ``Î = ψ(k) + ψ(n) - media[ψ(n_x + 1) + ψ(n_y + 1)]``

    Args:
        x: Muestra de la primera variable (las discretas como códigos)
        y: Muestra de la segunda variable
        k: Número de vecinos
        seed: Semilla del ruido que rompe empates

    Returns:
        Estimación de la información mutua
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_sample(x, y, k)
    return _ksg(_jitter(x, seed), _jitter(y, seed), k)


def independence_test(x: Sequence[float], y: Sequence[float],
                      cfg: KraskovConfig = KraskovConfig(),
                      threads: int = 1) -> IndependenceTestResult:
    """
    Test de independencia por permutaciones de ``y``.

    ``p = (1 + #{b : Î_b >= Î_obs}) / (B + 1)``; con B=99 el mínimo es 0.01.
    Cada réplica usa el generador ``default_rng([seed, b])``.
    """
    cfg.validate()
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_sample(x, y, cfg.k_neighbors)

    xj = _jitter(x, cfg.seed)
    yj = _jitter(y, cfg.seed)
    k = cfg.k_neighbors
    observed = _ksg(xj, yj, k)

    def replicate(b: int) -> float:
        order = np.random.default_rng([cfg.seed, b]).permutation(yj.shape[0])
        return _ksg(xj, yj[order], k)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            null = list(executor.map(replicate, range(cfg.permutations)))
    else:
        null = [replicate(b) for b in range(cfg.permutations)]

    exceed = sum(1 for value in null if value >= observed)
    p_value = (1 + exceed) / (cfg.permutations + 1)
    return IndependenceTestResult(mi_hat=observed, p_value=p_value, reject=p_value <= cfg.alpha)


def screen_variables(table: MixedDataTable, target: VarRef, variables: Sequence[VarRef],
                     cfg: KraskovConfig = KraskovConfig(),
                     threads: int = 1) -> List[IndependenceTestResult]:
    """Aplica el test de independencia entre el objetivo y cada variable, en orden."""
    y = table.column(target).astype(np.float64)

    def run(var: VarRef) -> IndependenceTestResult:
        spec = table.spec(var)
        result = independence_test(table.column(var).astype(np.float64), y, cfg)
        logger.debug(f"Test kNN {spec.name}: Î={result.mi_hat:.4f}, p={result.p_value:.3f}")
        return IndependenceTestResult(result.mi_hat, result.p_value, result.reject, spec.name)

    if threads > 1 and len(variables) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(run, variables))
    return [run(var) for var in variables]
