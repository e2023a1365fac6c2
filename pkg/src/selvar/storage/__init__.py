"""
Módulo de almacenamiento de resultados.
"""

from .base import ResultStorageBase
from .files import FileResultStorage, calculate_file_hash, utc_timestamp

__all__ = [
    'ResultStorageBase',
    'FileResultStorage',
    'calculate_file_hash',
    'utc_timestamp',
]
