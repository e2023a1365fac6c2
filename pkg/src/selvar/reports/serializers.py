"""
Serialización estable de resultados a JSON y CSV.
"""

import dataclasses
import enum
import json
import math
from typing import Any, Dict

import numpy as np
import pandas as pd

from ..graph import forest_to_dict
from ..models import ComparisonReport, Forest, OlsFit, SelectionReport, VarrankRanking

CSV_FLOAT_FORMAT = '%.17g'


def _float(value: float) -> Any:
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


def to_jsonable(obj: Any) -> Any:
    """
    Convierte dataclasses, enums, arrays y escalares numpy a tipos JSON.

    Los reales no finitos se escriben como ``"inf"``, ``"-inf"`` o ``"nan"``.
    """
    if isinstance(obj, Forest):
        return to_jsonable(forest_to_dict(obj))
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, np.ndarray):
        return [to_jsonable(item) for item in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
            if not f.name.startswith('_')
        }
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(item) for item in obj]
    return obj


def dumps_stable(obj: Any) -> str:
    """JSON con claves ordenadas e indentación fija (bytes reproducibles)."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def fit_to_dict(fit: OlsFit) -> Dict[str, Any]:
    """Resumen JSON de un ajuste OLS por columna de diseño."""
    return {
        'target': fit.target,
        'coefficients': {
            name: {
                'estimate': fit.coefficients[i],
                'std_error': fit.std_errors[i],
                't_value': fit.t_values[i],
                'p_value': fit.p_values[i],
            }
            for i, name in enumerate(fit.column_names)
        },
        'r2': fit.r2,
        'adj_r2': fit.adj_r2,
        'residual_variance': fit.residual_variance,
        'in_sample_mse': fit.in_sample_mse,
        'n': fit.n,
        'p_used': fit.p_used,
    }


def report_to_dict(report: SelectionReport) -> Dict[str, Any]:
    """Esquema JSON estable del informe de selección."""
    return {
        'target': report.target,
        'method': report.method.value,
        'model_0': forest_to_dict(report.forest),
        'path_step_scores': [
            {
                'k': step.k,
                'members': list(step.members),
                'score': step.score,
                'cumulative_mi': step.cumulative_mi,
                'details': step.details,
            }
            for step in report.steps
        ],
        'best_k': report.best_k,
        'M_w': list(report.selected),
        'M_wf': list(report.final),
        'variable_tests': report.variable_tests,
        'final_fit': fit_to_dict(report.final_fit) if report.final_fit is not None else None,
        'diagnostics': report.diagnostics,
        'flags': report.flags,
        'dropped_rows': report.dropped_rows,
        'provenance': report.provenance,
    }


def comparison_to_dict(report: ComparisonReport) -> Dict[str, Any]:
    """Resumen de la comparación: victorias y medianas de MSE."""
    return {
        'target': report.target,
        'predictors': list(report.predictors),
        'repeats': len(report.rows),
        'win_count': report.win_count,
        'win_rate': report.win_rate,
        'median_mse_bpa': report.median_mse_bpa,
        'median_mse_enet': report.median_mse_enet,
    }


def comparison_frame(report: ComparisonReport) -> pd.DataFrame:
    """Una fila por repetición: ``repeat, mse_bpa, mse_enet, lambda1, lambda2``."""
    columns = ['repeat', 'mse_bpa', 'mse_enet', 'lambda1', 'lambda2']
    return pd.DataFrame([dataclasses.astuple(row) for row in report.rows], columns=columns)


def score_matrix_frame(ranking: VarrankRanking) -> pd.DataFrame:
    """Matriz paso × candidato de varrank, con la variable elegida en cada paso."""
    frame = pd.DataFrame(ranking.scores, columns=list(ranking.candidates))
    frame.insert(0, 'selected', list(ranking.selected))
    frame.insert(0, 'step', np.arange(1, len(ranking.selected) + 1))
    return frame


def frame_to_csv(frame: pd.DataFrame) -> str:
    """CSV con reales a 17 cifras significativas y fin de línea ``\\n``."""
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')
