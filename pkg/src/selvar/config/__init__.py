"""
Módulo de configuración del sistema.
"""

from .logging import setup_logging, get_logger
from .settings import (
    AppConfig,
    BpaConfig,
    DensityConfig,
    EnetGridConfig,
    ForestConfig,
    KraskovConfig,
    LinearConfig,
    SplitConfig,
)

__all__ = [
    'setup_logging',
    'get_logger',
    'AppConfig',
    'BpaConfig',
    'DensityConfig',
    'EnetGridConfig',
    'ForestConfig',
    'KraskovConfig',
    'LinearConfig',
    'SplitConfig',
]
