"""
Módulo de informes: formateadores de texto y serializadores JSON/CSV.
"""

from .formatters import TextReportFormatter
from .serializers import (
    CSV_FLOAT_FORMAT,
    comparison_frame,
    comparison_to_dict,
    dumps_stable,
    fit_to_dict,
    frame_to_csv,
    report_to_dict,
    score_matrix_frame,
    to_jsonable,
)

__all__ = [
    'TextReportFormatter',
    'CSV_FLOAT_FORMAT',
    'comparison_frame',
    'comparison_to_dict',
    'dumps_stable',
    'fit_to_dict',
    'frame_to_csv',
    'report_to_dict',
    'score_matrix_frame',
    'to_jsonable',
]
