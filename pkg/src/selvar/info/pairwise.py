"""
Información mutua por pares para las cuatro combinaciones de tipos.

Todas las MI están en nats y son la mitad de la desviación del test de razón de
verosimilitudes correspondiente (2·MI = LR); las varianzas usan denominador n.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from ..config import get_logger
from ..models import (
    CellCounts,
    ConstantColumnError,
    Criterion,
    EdgeKind,
    EdgeScore,
    Flags,
    GroupStats,
    LrTest,
    MiResult,
    MixedDataTable,
    PreconditionError,
    SelvarError,
    VarianceMode,
)
from .tabulation import cross_tabulate, group_stats

logger = get_logger(__name__)

# |ρ| a menos de esta distancia de 1 se trata como correlación perfecta
DEGENERATE_RHO_TOL = 1e-12


def discrete_pair_mi(counts: CellCounts, n: Optional[int] = None) -> MiResult:
    """
    MI de dos discretas a partir de su tabla de contingencia.

    ``mi = Σ n_uv · ln(n_uv · n / (n_u · n_v))`` sobre celdas no vacías y
    ``df = (|D_u| - 1)(|D_v| - 1)`` tras colapsar niveles sin observaciones.

    Args:
        counts: Tabla de contingencia
        n: Tamaño muestral (debe coincidir con el total de la tabla)

    Returns:
        MiResult con flags ``ZERO_MARGIN`` / ``CONSTANT_COLUMN`` si procede
    """
    total = counts.n
    if n is not None and n != total:
        raise PreconditionError(f"n={n} no coincide con el total de la tabla ({total})")
    if total <= 0:
        raise PreconditionError("La tabla de contingencia está vacía")

    flags = []
    rows = counts.row_margins > 0
    cols = counts.col_margins > 0
    if not rows.all() or not cols.all():
        flags.append(Flags.ZERO_MARGIN)
    matrix = counts.counts[np.ix_(rows, cols)].astype(np.float64)
    row_totals = matrix.sum(axis=1)
    col_totals = matrix.sum(axis=0)

    i, j = np.nonzero(matrix)
    cells = matrix[i, j]
    mi = float(np.sum(
        cells * (np.log(cells) + math.log(total) - np.log(row_totals[i]) - np.log(col_totals[j]))
    ))
    mi = max(mi, 0.0)

    df = (matrix.shape[0] - 1) * (matrix.shape[1] - 1)
    if df == 0:
        flags.append(Flags.CONSTANT_COLUMN)
        return MiResult(mi=0.0, df=1, flags=tuple(flags))
    return MiResult(mi=mi, df=df, flags=tuple(flags))


def gaussian_pair_mi(x: Sequence[float], y: Sequence[float]) -> MiResult:
    """
    MI gaussiana de dos continuas: ``-(N/2)·ln(1 - ρ²)``, un grado de libertad.

    Una correlación perfecta da MI infinita con el flag ``DEGENERATE_CORRELATION``.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise PreconditionError("Los vectores deben tener la misma longitud")
    n = x.shape[0]
    if n < 3:
        raise PreconditionError("Se necesitan al menos 3 observaciones")

    dx = x - x.mean()
    dy = y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantColumnError("Columna continua constante")
    rho = float(dx @ dy) / math.sqrt(sxx * syy)

    if 1.0 - abs(rho) <= DEGENERATE_RHO_TOL:
        return MiResult(mi=math.inf, df=1, flags=(Flags.DEGENERATE_CORRELATION,))
    mi = -0.5 * n * math.log1p(-rho * rho)
    return MiResult(mi=max(mi, 0.0), df=1)


def mixed_pair_mi(stats_: GroupStats, n: Optional[int] = None,
                  mode: VarianceMode = VarianceMode.HOMOGENEOUS) -> MiResult:
    """
    MI de una discreta y una continua a partir de sus estadísticos por grupo.

    Homogéneo: ``(N/2)·ln(s0/s)`` con ``df = |D| - 1``. Heterogéneo:
    ``(N/2)·ln(s0) - ½·Σ n_i·ln(var_i)`` con ``df = 2(|D| - 1)``. Solo cuentan los
    niveles observados. Si alguna varianza de grupo es nula, el modo heterogéneo
    recurre al homogéneo y se marca ``DEGENERATE_GROUP_VARIANCE``.
    """
    total = stats_.n
    if n is not None and n != total:
        raise PreconditionError(f"n={n} no coincide con los conteos por grupo ({total})")
    if stats_.s0 <= 0.0:
        raise ConstantColumnError("La variable continua es constante")

    flags = list(stats_.flags)
    observed = stats_.observed
    groups = int(observed.sum())
    if groups < 2:
        flags.append(Flags.CONSTANT_COLUMN)
        return MiResult(mi=0.0, df=1, flags=tuple(flags))

    n_i = stats_.n_i[observed].astype(np.float64)
    var_i = stats_.var_i[observed]

    if mode is VarianceMode.HETEROGENEOUS:
        if np.all(var_i > 0.0):
            mi = 0.5 * total * math.log(stats_.s0) - 0.5 * float(np.sum(n_i * np.log(var_i)))
            return MiResult(mi=max(mi, 0.0), df=2 * (groups - 1), flags=tuple(flags))
        flags.append(Flags.DEGENERATE_GROUP_VARIANCE)

    pooled = float(np.sum(n_i * var_i)) / total
    df = groups - 1
    if pooled <= 0.0:
        flags.append(Flags.DEGENERATE_CORRELATION)
        return MiResult(mi=math.inf, df=df, flags=tuple(flags))
    mi = 0.5 * total * math.log(stats_.s0 / pooled)
    return MiResult(mi=max(mi, 0.0), df=df, flags=tuple(flags))


def lr_test(mi: float, df: int) -> LrTest:
    """Test de razón de verosimilitudes: estadístico ``2·mi`` frente a χ²(df)."""
    if df < 1:
        raise PreconditionError("Los grados de libertad deben ser >= 1")
    statistic = 2.0 * mi
    return LrTest(statistic=statistic, p_value=float(stats.chi2.sf(statistic, df)))


def pair_score(table: MixedDataTable, u: int, v: int,
               mode: VarianceMode = VarianceMode.HOMOGENEOUS) -> EdgeScore:
    """Puntuación de un par; los errores del par se convierten en aristas centinela."""
    u, v = min(u, v), max(u, v)
    su, sv = table.specs[u], table.specs[v]
    n = table.n_rows
    try:
        if su.is_discrete and sv.is_discrete:
            result, kind = discrete_pair_mi(cross_tabulate(table, u, v), n), EdgeKind.DD
        elif not su.is_discrete and not sv.is_discrete:
            result, kind = gaussian_pair_mi(table.columns[u], table.columns[v]), EdgeKind.CC
        else:
            d, c = (u, v) if su.is_discrete else (v, u)
            result = mixed_pair_mi(group_stats(table, d, c), n, mode)
            heterogeneous = (
                mode is VarianceMode.HETEROGENEOUS
                and Flags.DEGENERATE_GROUP_VARIANCE not in result.flags
            )
            kind = EdgeKind.MIX_HET if heterogeneous else EdgeKind.MIX_HOM
    except SelvarError as e:
        logger.warning(f"Par ({su.name}, {sv.name}) marcado como centinela: {e}")
        kind = _pair_kind(su.is_discrete, sv.is_discrete, mode)
        result = MiResult(mi=0.0, df=1, flags=(Flags.CONSTANT_COLUMN,))

    if math.isinf(result.mi):
        result = MiResult(result.mi, result.df, result.flags + (Flags.INFINITE_EDGE,))
    return EdgeScore.from_mi(u, v, result, n, kind)


def _pair_kind(u_discrete: bool, v_discrete: bool, mode: VarianceMode) -> EdgeKind:
    if u_discrete and v_discrete:
        return EdgeKind.DD
    if not u_discrete and not v_discrete:
        return EdgeKind.CC
    return EdgeKind.MIX_HET if mode is VarianceMode.HETEROGENEOUS else EdgeKind.MIX_HOM


def all_pairwise_scores(
    table: MixedDataTable,
    mode: VarianceMode = VarianceMode.HOMOGENEOUS,
    criterion: Criterion = Criterion.BIC,
    threads: int = 1,
) -> List[EdgeScore]:
    """
    Puntúa los ``p(p-1)/2`` pares, ordenados por ``(u, v)``.

    El barrido nunca se interrumpe: los pares problemáticos salen como aristas
    centinela con flags. El orden del resultado no depende de ``threads``.
    """
    pairs: List[Tuple[int, int]] = [(u, v) for u in range(table.p) for v in range(u + 1, table.p)]
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            scores = list(executor.map(lambda pair: pair_score(table, *pair, mode), pairs))
    else:
        scores = [pair_score(table, u, v, mode) for u, v in pairs]

    positive = sum(1 for score in scores if score.weight(criterion) > 0)
    logger.info(
        f"Calculadas {len(scores)} puntuaciones por pares; {positive} con peso "
        f"{criterion.value.upper()} positivo"
    )
    return scores


def edge_scores_frame(scores: Sequence[EdgeScore], names: Sequence[str]) -> pd.DataFrame:
    """Volcado tabular de las puntuaciones (una fila por par)."""
    rows = []
    for score in scores:
        rows.append({
            'u': score.u,
            'v': score.v,
            'kind': score.kind.value,
            'mi': score.mi,
            'df': score.df,
            'weight_aic': score.weight_aic,
            'weight_bic': score.weight_bic,
            'p_value': lr_test(score.mi, score.df).p_value,
            'name_u': names[score.u],
            'name_v': names[score.v],
            'flags': ';'.join(score.flags),
        })
    columns = ['u', 'v', 'kind', 'mi', 'df', 'weight_aic', 'weight_bic', 'p_value',
               'name_u', 'name_v', 'flags']
    return pd.DataFrame(rows, columns=columns)
