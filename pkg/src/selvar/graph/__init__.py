"""
Bosques de dependencias: construcción, path-steps y exportación.
"""

from .export import export_dot, forest_to_dict
from .forest_builder import (
    build_forest,
    components,
    cumulative_information,
    distance,
    has_forbidden_path,
    path_steps,
)

__all__ = [
    'export_dot',
    'forest_to_dict',
    'build_forest',
    'components',
    'cumulative_information',
    'distance',
    'has_forbidden_path',
    'path_steps',
]
