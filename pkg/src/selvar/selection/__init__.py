"""
Selección de variables por path-steps y métodos de referencia.
"""

from .baselines import (
    compare_predictions,
    discretize,
    varrank_relevance_check,
    varrank_select,
)
from .pipeline import run_bpa, score_profile

__all__ = [
    'compare_predictions',
    'discretize',
    'varrank_relevance_check',
    'varrank_select',
    'run_bpa',
    'score_profile',
]
