"""
Regresión lineal por mínimos cuadrados: diseño con dummies, tests t,
R² ajustado, validación cruzada en h grupos y poda por significación.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
import statsmodels.api as sm
from scipy import linalg
from scipy import stats
from sklearn.model_selection import KFold

from ..config import get_logger
from ..models import (
    CvResult,
    FoldTooSmallError,
    MixedDataTable,
    OlsFit,
    PreconditionError,
    RankDeficientError,
    TooFewRowsError,
)
from ..models.table import VarRef

logger = get_logger(__name__)

INTERCEPT = '(Intercept)'


def design_matrix(table: MixedDataTable,
                  regressors: Sequence[VarRef]) -> Tuple[np.ndarray, List[str], List[str]]:
    """
    Matriz de diseño con intercepto.

    Las discretas se codifican con una dummy por nivel observado salvo el
    primero, que hace de referencia; cada dummy se llama ``nombre=nivel``.
    Los niveles declarados que no aparecen en los datos no generan columna.

    Returns:
        Tupla (matriz, nombres de columna, variable de cada columna)
    """
    columns = [np.ones(table.n_rows)]
    names = [INTERCEPT]
    owners = [INTERCEPT]
    for var in regressors:
        spec = table.spec(var)
        values = table.column(spec.index)
        if spec.is_discrete:
            for code in np.unique(values)[1:].astype(int):
                columns.append((values == code).astype(np.float64))
                names.append(f"{spec.name}={spec.levels[code]}")
                owners.append(spec.name)
        else:
            columns.append(np.asarray(values, dtype=np.float64))
            names.append(spec.name)
            owners.append(spec.name)
    return np.column_stack(columns), names, owners


def _check_rank(X: np.ndarray, names: Sequence[str]) -> None:
    _, r, pivots = linalg.qr(X, mode='economic', pivoting=True)
    diagonal = np.abs(np.diag(r))
    if diagonal.size == 0:
        return
    tol = diagonal[0] * max(X.shape) * np.finfo(np.float64).eps
    rank = int(np.sum(diagonal > tol))
    if rank < X.shape[1]:
        raise RankDeficientError([names[i] for i in pivots[rank:]])


def ols_fit(X: np.ndarray, y: np.ndarray, column_names: Optional[Sequence[str]] = None,
            column_vars: Optional[Sequence[str]] = None, target: str = '') -> OlsFit:
    """
    Ajusta ``y ~ X`` por QR; la primera columna de ``X`` es el intercepto.

    Args:
        X: Matriz de diseño ``n × (p_used + 1)``
        y: Respuesta
        column_names: Nombres de columna (por defecto ``x0, x1, ...``)
        column_vars: Variable a la que pertenece cada columna
        target: Nombre de la respuesta

    Returns:
        OlsFit con coeficientes, tests t y R²
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, width = X.shape
    p_used = width - 1
    names = list(column_names) if column_names is not None else [f"x{i}" for i in range(width)]
    owners = list(column_vars) if column_vars is not None else names
    if n <= p_used + 1:
        raise TooFewRowsError(f"Se necesitan más de {p_used + 1} filas para {p_used} regresores")
    _check_rank(X, names)

    result = sm.OLS(y, X).fit(method='qr')
    params = np.asarray(result.params, dtype=np.float64)
    bse = np.asarray(result.bse, dtype=np.float64)
    df_resid = n - p_used - 1

    with np.errstate(divide='ignore', invalid='ignore'):
        t_values = np.where(bse > 0, params / bse, np.where(params == 0, 0.0, np.sign(params) * np.inf))
    p_values = np.clip(2.0 * stats.t.sf(np.abs(t_values), df_resid), 0.0, 1.0)

    residuals = y - X @ params
    ssr = float(residuals @ residuals)
    centered = y - y.mean()
    tss = float(centered @ centered)
    if tss > 0:
        r2 = 1.0 - ssr / tss
    else:
        r2 = 1.0 if ssr == 0 else 0.0
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / df_resid

    return OlsFit(
        column_names=tuple(names),
        column_vars=tuple(owners),
        coefficients=params,
        std_errors=bse,
        t_values=t_values,
        p_values=p_values,
        r2=r2,
        adj_r2=adj_r2,
        residual_variance=ssr / df_resid,
        in_sample_mse=ssr / n,
        n=n,
        p_used=p_used,
        target=target,
        fitted=X @ params,
    )


def fit_regressors(table: MixedDataTable, target: VarRef,
                   regressors: Sequence[VarRef]) -> OlsFit:
    """Construye el diseño de ``regressors`` y ajusta el OLS de ``target``."""
    X, names, owners = design_matrix(table, regressors)
    y = table.continuous_column(target)
    return ols_fit(X, y, names, owners, target=table.spec(target).name)


def kfold_cv_mse(table: MixedDataTable, target: VarRef, regressors: Sequence[VarRef],
                 h: int = 10, seed: int = 0) -> CvResult:
    """
    MSE de validación cruzada en ``h`` grupos con asignación barajada por semilla.

    Raises:
        FoldTooSmallError: Si la parte de entrenamiento de un fold tiene menos
            filas que columnas de diseño + 1
    """
    X, _, _ = design_matrix(table, regressors)
    y = table.continuous_column(target)
    n = table.n_rows
    if not 2 <= h <= n:
        raise PreconditionError(f"El número de folds debe estar en [2, {n}]")

    fold_mse = []
    for train, test in KFold(n_splits=h, shuffle=True, random_state=seed).split(X):
        if train.shape[0] < X.shape[1] + 1:
            raise FoldTooSmallError(
                f"Fold con {train.shape[0]} filas de entrenamiento para {X.shape[1]} columnas"
            )
        beta = np.linalg.lstsq(X[train], y[train], rcond=None)[0]
        error = y[test] - X[test] @ beta
        fold_mse.append(float(np.mean(error * error)))
    return CvResult(folds=h, fold_mse=tuple(fold_mse), mean_mse=float(np.mean(fold_mse)), seed=seed)


def prune_by_ttest(table: MixedDataTable, target: VarRef, fit: OlsFit, alpha: float = 0.05,
                   stepwise: bool = False) -> Tuple[Tuple[str, ...], Optional[OlsFit]]:
    """
    Elimina los regresores no significativos (p > alpha) y reajusta.

    Por defecto la poda es simultánea con un único reajuste; ``stepwise``
    elimina el menos significativo en cada vuelta. Un bloque de dummies se
    conserva si alguna de sus columnas es significativa.

    Returns:
        Tupla (variables conservadas, ajuste final o None si no queda ninguna)
    """
    if not stepwise:
        p_values = fit.variable_pvalues()
        kept = tuple(var for var in fit.regressors if p_values[var] <= alpha)
        if not kept:
            return (), None
        if kept == fit.regressors:
            return kept, fit
        return kept, fit_regressors(table, target, kept)

    current = fit
    while True:
        p_values = current.variable_pvalues()
        kept = list(current.regressors)
        worst = max(kept, key=lambda var: p_values[var])
        if p_values[worst] <= alpha:
            return tuple(kept), current
        kept.remove(worst)
        logger.debug(f"Eliminada {worst} (p={p_values[worst]:.4f})")
        if not kept:
            return (), None
        current = fit_regressors(table, target, kept)
