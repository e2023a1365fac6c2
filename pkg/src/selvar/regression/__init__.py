"""
Modelos lineales: OLS con tests t y validación cruzada, elastic net.
"""

from .elastic_net import (
    elastic_net_fit,
    enet_objective,
    lambda_path,
    soft_threshold,
    tune_elastic_net,
)
from .ols import (
    INTERCEPT,
    design_matrix,
    fit_regressors,
    kfold_cv_mse,
    ols_fit,
    prune_by_ttest,
)

__all__ = [
    'elastic_net_fit',
    'enet_objective',
    'lambda_path',
    'soft_threshold',
    'tune_elastic_net',
    'INTERCEPT',
    'design_matrix',
    'fit_regressors',
    'kfold_cv_mse',
    'ols_fit',
    'prune_by_ttest',
]
