"""
Elastic net por descenso por coordenadas cíclico y su ajuste por validación cruzada.

Criterio: ``|y - Xβ|² + λ1·|β|₁ + λ2·|β|²`` sobre datos estandarizados.
"""

from typing import Optional, Tuple

import numpy as np
from sklearn.model_selection import KFold

from ..config import EnetGridConfig, get_logger
from ..models import ElasticNetFit

logger = get_logger(__name__)


def soft_threshold(z: float, gamma: float) -> float:
    """Operador ``S(z, γ) = sign(z)·max(|z| - γ, 0)``."""
    if z > gamma:
        return z - gamma
    if z < -gamma:
        return z + gamma
    return 0.0


def enet_objective(X: np.ndarray, y: np.ndarray, beta: np.ndarray,
                   lambda1: float, lambda2: float) -> float:
    residual = y - X @ beta
    return float(residual @ residual + lambda1 * np.abs(beta).sum() + lambda2 * beta @ beta)


def elastic_net_fit(X: np.ndarray, y: np.ndarray, lambda1: float, lambda2: float,
                    tol: float = 1e-8, max_iter: int = 100_000,
                    beta0: Optional[np.ndarray] = None) -> ElasticNetFit:
    """
    Minimiza el criterio elastic net con actualizaciones
    ``β_j ← S(x_jᵀ r_{-j}, λ1/2) / (x_jᵀ x_j + λ2)``.

    Args:
        X: Predictores estandarizados
        y: Respuesta estandarizada
        lambda1: Penalización L1
        lambda2: Penalización L2
        tol: Umbral de convergencia sobre el mayor cambio de coordenada
        max_iter: Máximo de barridos
        beta0: Punto de partida (arranque en caliente)

    Returns:
        ElasticNetFit con la traza del objetivo tras cada barrido
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    p = X.shape[1]
    gram = X.T @ X
    xty = X.T @ y
    yty = float(y @ y)
    beta = np.zeros(p) if beta0 is None else np.array(beta0, dtype=np.float64, copy=True)
    half_l1 = lambda1 / 2.0

    def objective(b: np.ndarray) -> float:
        return float(yty - 2.0 * xty @ b + b @ gram @ b + lambda1 * np.abs(b).sum() + lambda2 * b @ b)

    trace = [objective(beta)]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        max_delta = 0.0
        for j in range(p):
            denominator = gram[j, j] + lambda2
            if denominator <= 0:
                continue
            partial = xty[j] - gram[j] @ beta + gram[j, j] * beta[j]
            updated = soft_threshold(partial, half_l1) / denominator
            max_delta = max(max_delta, abs(updated - beta[j]))
            beta[j] = updated
        trace.append(objective(beta))
        if max_delta < tol:
            converged = True
            break

    if not converged:
        logger.warning(f"Elastic net sin converger tras {max_iter} barridos (λ1={lambda1:g}, λ2={lambda2:g})")
    return ElasticNetFit(
        beta=beta,
        lambda1=float(lambda1),
        lambda2=float(lambda2),
        iterations=iterations,
        converged=converged,
        objective_trace=tuple(trace),
    )


def lambda_path(X: np.ndarray, y: np.ndarray, mix: float, grid: EnetGridConfig) -> np.ndarray:
    """
    λ totales log-espaciados desde ``λ_max = 2·max|x_jᵀy| / (1 - α)`` hacia abajo.

    Con ``λ1 = (1 - α)·λ`` el extremo superior anula todos los coeficientes.
    """
    lambda_max = 2.0 * float(np.max(np.abs(X.T @ y))) / (1.0 - mix)
    if lambda_max <= 0:
        return np.zeros(1)
    return np.geomspace(lambda_max, lambda_max * grid.lambda_ratio, grid.n_lambdas)


def _split_penalty(total: float, mix: float) -> Tuple[float, float]:
    return (1.0 - mix) * total, mix * total


def tune_elastic_net(X: np.ndarray, y: np.ndarray, grid: Optional[EnetGridConfig] = None,
                     seed: int = 0) -> ElasticNetFit:
    """
    Elige ``(λ1, λ2)`` por validación cruzada recorriendo cada camino de λ
    con arranque en caliente, y reajusta sobre todos los datos.

    ``X`` e ``y`` deben estar estandarizados. Los empates se resuelven a favor
    de la penalización mayor.
    """
    grid = grid or EnetGridConfig()
    grid.validate()
    folds = list(KFold(n_splits=grid.folds, shuffle=True, random_state=seed).split(X))

    best: Tuple[float, float, float] = (np.inf, 0.0, 0.0)
    for mix in grid.mixes:
        path = lambda_path(X, y, mix, grid)
        errors = np.zeros(path.shape[0])
        for train, test in folds:
            beta: Optional[np.ndarray] = None
            for i, total in enumerate(path):
                lambda1, lambda2 = _split_penalty(total, mix)
                fit = elastic_net_fit(X[train], y[train], lambda1, lambda2,
                                      tol=grid.tol, max_iter=grid.max_iter, beta0=beta)
                beta = fit.beta
                residual = y[test] - X[test] @ beta
                errors[i] += float(residual @ residual) / test.shape[0]
        errors /= len(folds)
        i = int(np.argmin(errors))
        if errors[i] < best[0]:
            best = (float(errors[i]),) + _split_penalty(float(path[i]), mix)

    _, lambda1, lambda2 = best
    logger.debug(f"Elastic net elegido: λ1={lambda1:.4g}, λ2={lambda2:.4g}, CV-MSE={best[0]:.4g}")
    return elastic_net_fit(X, y, lambda1, lambda2, tol=grid.tol, max_iter=grid.max_iter)

