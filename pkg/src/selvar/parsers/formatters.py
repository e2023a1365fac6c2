"""
Utilidades para formatear tablas cargadas.
"""

import numpy as np

from ..models import MixedDataTable


def format_table(table: MixedDataTable) -> str:
    """
    Resumen legible de una tabla: tipo, niveles o rango de cada variable.

    Args:
        table: Tabla cargada

    Returns:
        String formateado
    """
    output = []
    output.append("=" * 60)
    output.append(f"TABLA DE DATOS - {table.n_rows} filas, {table.p} variables")
    output.append("=" * 60)
    if table.dropped_rows:
        output.append(f"Filas descartadas por valores ausentes: {table.dropped_rows}")
        output.append("-" * 60)

    for spec, column in zip(table.specs, table.columns):
        if spec.is_discrete:
            counts = np.bincount(column, minlength=spec.n_levels)
            levels = ", ".join(f"{level}({count})" for level, count in zip(spec.levels, counts))
            output.append(f"{spec.name:20s} discreta   {spec.n_levels:3d} niveles: {levels}")
        else:
            output.append(
                f"{spec.name:20s} continua   [{column.min():.4g}, {column.max():.4g}] "
                f"media {column.mean():.4g}"
            )

    output.append("=" * 60)
    return "\n".join(output)
