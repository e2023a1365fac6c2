"""
Parsers de tablas de datos.
"""

from .base import TableParserBase
from .csv_table import CsvTableParser, load_csv, load_schema, save_schema, table_schema, write_csv
from .formatters import format_table

__all__ = [
    'TableParserBase',
    'CsvTableParser',
    'load_csv',
    'load_schema',
    'save_schema',
    'table_schema',
    'write_csv',
    'format_table',
]
