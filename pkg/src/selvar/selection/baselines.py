"""
Métodos de referencia: ranking varrank (MIFS normalizado) y comparación
repetida entrenamiento/test frente a elastic net.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.stats import entropy
from sklearn.metrics import mutual_info_score
from sklearn.preprocessing import StandardScaler

from ..config import EnetGridConfig, SplitConfig, get_logger
from ..models import (
    ComparisonReport,
    ComparisonRow,
    MixedDataTable,
    PreconditionError,
    SelectionReport,
    VarrankRanking,
    VarrankScheme,
)
from ..models.table import VarRef
from ..regression import design_matrix, tune_elastic_net

logger = get_logger(__name__)

REDUNDANCY_FLOOR = 1e-12


def discretize(table: MixedDataTable, var: VarRef) -> np.ndarray:
    """
    Códigos discretos de una variable.

    Las continuas se parten en ``ceil(n^(1/3))`` intervalos de igual frecuencia.
    """
    spec = table.spec(var)
    values = table.column(spec.index)
    if spec.is_discrete:
        return np.asarray(values, dtype=np.int64)
    if np.ptp(values) == 0:
        return np.zeros(values.shape[0], dtype=np.int64)
    bins = math.ceil(table.n_rows ** (1.0 / 3.0))
    codes = pd.qcut(values, q=bins, labels=False, duplicates='drop')
    return np.asarray(codes, dtype=np.int64)


def _entropy(codes: np.ndarray) -> float:
    return float(entropy(np.bincount(codes)))


def varrank_select(table: MixedDataTable, target: VarRef, m: Optional[int] = None,
                   scheme: VarrankScheme = VarrankScheme.MID) -> VarrankRanking:
    """
    Selección voraz hacia delante con relevancia menos redundancia normalizada.

    ``g(x_i) = I(x_i; C) - Σ_{s∈S} I(x_i; x_s) / (|S|·min(H(x_i), H(x_s)))``
    (MID); MIQ divide la relevancia por la redundancia. Las variables
    constantes se excluyen.

    Args:
        table: Tabla de datos
        target: Variable clase ``C``
        m: Número de variables a seleccionar (por defecto, todas)
        scheme: MID o MIQ

    Returns:
        VarrankRanking con la matriz de puntuaciones paso × candidato
    """
    y = table.index_of(target)
    others = [i for i in range(table.p) if i != y]
    if m is not None and not 1 <= m <= len(others):
        raise PreconditionError(f"m debe estar en [1, {len(others)}]")

    target_codes = discretize(table, y)
    codes = {i: discretize(table, i) for i in others}
    entropies = {i: _entropy(codes[i]) for i in others}
    excluded = [i for i in others if entropies[i] <= 0.0]
    for i in excluded:
        logger.warning(f"varrank: {table.names[i]} excluida (entropía nula)")
    pool = [i for i in others if i not in excluded]
    steps = len(pool) if m is None else min(m, len(pool))

    relevance = {i: float(mutual_info_score(target_codes, codes[i])) for i in pool}
    redundancy: Dict[tuple, float] = {}

    def scaled_mi(i: int, s: int) -> float:
        key = (min(i, s), max(i, s))
        if key not in redundancy:
            redundancy[key] = float(mutual_info_score(codes[i], codes[s]))
        return redundancy[key] / min(entropies[i], entropies[s])

    scores = np.full((steps, len(pool)), np.nan)
    selected: List[int] = []
    for step in range(steps):
        for column, i in enumerate(pool):
            if i in selected:
                continue
            if not selected:
                scores[step, column] = relevance[i]
                continue
            penalty = sum(scaled_mi(i, s) for s in selected) / len(selected)
            if scheme is VarrankScheme.MID:
                scores[step, column] = relevance[i] - penalty
            else:
                scores[step, column] = relevance[i] / max(penalty, REDUNDANCY_FLOOR)
        selected.append(pool[int(np.nanargmax(scores[step]))])

    logger.info(f"varrank ({scheme.value}): {', '.join(table.names[i] for i in selected)}")
    return VarrankRanking(
        target=table.names[y],
        candidates=tuple(table.names[i] for i in pool),
        selected=tuple(table.names[i] for i in selected),
        scores=scores,
        scheme=scheme,
        relevance={table.names[i]: relevance[i] for i in pool},
        excluded=tuple(table.names[i] for i in excluded),
    )


def varrank_relevance_check(ranking: VarrankRanking, variables: Sequence[str]) -> Dict[str, float]:
    """
    Puntuación varrank de cada variable en el paso en que fue elegida.

    Un valor positivo indica que la relevancia domina a la redundancia; las
    variables no elegidas devuelven NaN.
    """
    return {
        var: ranking.step_score(var) if var in ranking.selected else float('nan')
        for var in variables
    }


def compare_predictions(
    table: MixedDataTable,
    target: VarRef,
    report: SelectionReport,
    grid: Optional[EnetGridConfig] = None,
    split: Optional[SplitConfig] = None,
    threads: int = 1,
) -> ComparisonReport:
    """
    Compara el OLS sobre ``M_wf`` con un elastic net ajustado por CV.

    En cada repetición ``r`` se parte la muestra con ``default_rng([seed, r])``;
    el elastic net usa todas las variables (estandarizadas con las medias de
    entrenamiento) y el MSE se mide sobre la parte de test.

    Args:
        table: Tabla de datos
        target: Variable objetivo continua
        report: Informe cuya selección final se evalúa
        grid: Malla de penalizaciones
        split: Particiones repetidas
        threads: Hilos para las repeticiones

    Returns:
        ComparisonReport con una fila por repetición
    """
    grid = grid or EnetGridConfig()
    split = split or SplitConfig()
    grid.validate()
    split.validate()
    y_index = table.index_of(target)
    y = table.continuous_column(y_index)
    n = table.n_rows
    n_train = int(round(split.train_frac * n))
    if not 2 <= n_train <= n - 1:
        raise PreconditionError("La partición deja una parte vacía")

    X_bpa, _, _ = design_matrix(table, list(report.final))
    X_all = design_matrix(table, [i for i in range(table.p) if i != y_index])[0][:, 1:]

    def repeat(r: int) -> ComparisonRow:
        rng = np.random.default_rng([split.seed, r])
        order = rng.permutation(n)
        train, test = order[:n_train], order[n_train:]

        beta = np.linalg.lstsq(X_bpa[train], y[train], rcond=None)[0]
        error_bpa = y[test] - X_bpa[test] @ beta

        scaler = StandardScaler().fit(X_all[train])
        center = float(y[train].mean())
        scale = float(y[train].std()) or 1.0
        fit = tune_elastic_net(scaler.transform(X_all[train]), (y[train] - center) / scale,
                               grid, seed=int(rng.integers(2 ** 31)))
        prediction = center + scale * (scaler.transform(X_all[test]) @ fit.beta)
        error_enet = y[test] - prediction
        return ComparisonRow(
            repeat=r,
            mse_bpa=float(np.mean(error_bpa ** 2)),
            mse_enet=float(np.mean(error_enet ** 2)),
            lambda1=fit.lambda1,
            lambda2=fit.lambda2,
        )

    if threads > 1 and split.repeats > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(repeat, range(split.repeats)))
    else:
        rows = [repeat(r) for r in range(split.repeats)]

    comparison = ComparisonReport(target=table.names[y_index], predictors=report.final, rows=rows)
    logger.info(
        f"Comparación {comparison.target}: BPA gana {comparison.win_count}/{len(rows)} repeticiones"
    )
    return comparison
