"""
Tablas de contingencia y estadísticos por grupo.
"""

import numpy as np

from ..models import CellCounts, Flags, GroupStats, MixedDataTable
from ..models.table import VarRef


def cross_tabulate(table: MixedDataTable, u: VarRef, v: VarRef) -> CellCounts:
    """
    Cruza dos variables discretas.

    Las dimensiones salen de los niveles declarados, de modo que un nivel sin
    observaciones conserva su fila (o columna) de ceros.
    """
    cu = table.discrete_column(u)
    cv = table.discrete_column(v)
    lu, lv = table.spec(u).n_levels, table.spec(v).n_levels
    counts = np.bincount(cu * lv + cv, minlength=lu * lv).reshape(lu, lv)
    return CellCounts.from_counts(counts)


def group_stats(table: MixedDataTable, u: VarRef, v: VarRef) -> GroupStats:
    """
    Conteo, media y varianza máximo-verosímil de ``v`` (continua) por nivel de ``u`` (discreta).

    Los niveles sin observaciones se marcan con ``EMPTY_GROUP`` y los de una sola
    observación (varianza nula) con ``DEGENERATE_GROUP``.
    """
    codes = table.discrete_column(u)
    values = table.continuous_column(v)
    levels = table.spec(u).n_levels
    return _group_stats(codes, values, levels)


def _group_stats(codes: np.ndarray, values: np.ndarray, levels: int) -> GroupStats:
    n_i = np.bincount(codes, minlength=levels).astype(np.int64)
    sums = np.bincount(codes, weights=values, minlength=levels)
    observed = n_i > 0
    mean_i = np.zeros(levels)
    mean_i[observed] = sums[observed] / n_i[observed]

    deviations = values - mean_i[codes]
    squares = np.bincount(codes, weights=deviations ** 2, minlength=levels)
    var_i = np.zeros(levels)
    var_i[observed] = squares[observed] / n_i[observed]

    grand_mean = float(values.mean())
    s0 = float(np.mean((values - grand_mean) ** 2))

    flags = []
    if np.any(n_i == 0):
        flags.append(Flags.EMPTY_GROUP)
    if np.any(n_i == 1):
        flags.append(Flags.DEGENERATE_GROUP)
    return GroupStats(
        n_i=n_i, mean_i=mean_i, var_i=var_i, s0=s0, grand_mean=grand_mean, flags=tuple(flags)
    )
