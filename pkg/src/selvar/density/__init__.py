"""
Densidad condicional núcleo y puntuaciones de información derivadas.
"""

from .curves import density_curves, fitted_value_curves, per_variable_curves
from .engine import (
    Bandwidths,
    ConditionalDensityModel,
    KlEstimate,
    MixtureMarginal,
    density_flags,
    ec_score,
    fit_conditional_density,
    kl_estimate,
    mixture_marginal,
    mutual_information,
    symmetric_kl,
)

__all__ = [
    'density_curves',
    'fitted_value_curves',
    'per_variable_curves',
    'Bandwidths',
    'ConditionalDensityModel',
    'KlEstimate',
    'MixtureMarginal',
    'density_flags',
    'ec_score',
    'fit_conditional_density',
    'kl_estimate',
    'mixture_marginal',
    'mutual_information',
    'symmetric_kl',
]
