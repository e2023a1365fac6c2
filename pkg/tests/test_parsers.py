"""
Tests del parser de tablas CSV y esquemas.
"""

import json

import numpy as np
import pandas as pd
import pytest

from selvar.models import (
    DataError,
    DuplicateHeaderError,
    EmptyTableError,
    MixedTypesInColumnError,
    SchemaError,
    SelvarError,
    VariableKind,
)
from selvar.parsers import format_table, load_csv, load_schema, save_schema, table_schema, write_csv


@pytest.mark.unit
class TestCsvInference:
    """Tipado automático de columnas sin esquema."""

    def test_row_with_empty_cell_is_dropped(self, tmp_path):
        """Una fila con una celda vacía se descarta y se cuenta."""
        path = tmp_path / 'tres.csv'
        path.write_text("a,b,c\n1,x,2.5\n2,,3.5\n3,y,4.5\n", encoding='utf-8')

        table = load_csv(path)

        assert table.n_rows == 2
        assert table.dropped_rows == 1
        assert list(table.column('a')) == [0, 1]

    def test_byte_order_mark(self, tmp_path):
        """La cabecera de un CSV exportado con BOM conserva el nombre de la primera columna."""
        path = tmp_path / 'bom.csv'
        path.write_bytes('x,y\n1.5,a\n2.5,b\n3.5,a\n'.encode('utf-8-sig'))

        table = load_csv(path)

        assert table.names[0] == 'x'
        assert table.n_rows == 3

    def test_missing_tokens(self, tmp_path):
        path = tmp_path / 'na.csv'
        path.write_text("a,b\n1,NA\n2,?\n3,z\n4,w\n", encoding='utf-8')

        table = load_csv(path)

        assert table.n_rows == 2
        assert table.dropped_rows == 2

    def test_division_column_is_discrete(self, tmp_path):
        """Una columna de etiquetas E/W es discreta con niveles en orden de aparición."""
        divisions = ['W', 'E', 'E', 'W', 'E'] * 10
        path = tmp_path / 'hitters.csv'
        pd.DataFrame({'Division': divisions, 'Hits': np.arange(50.0)}).to_csv(path, index=False)

        table = load_csv(path)
        spec = table.spec('Division')

        assert spec.kind is VariableKind.DISCRETE
        assert spec.levels == ('W', 'E')
        assert table.column('Division')[:3].tolist() == [0, 1, 1]

    def test_many_distinct_reals_are_continuous(self, write_frame):
        rng = np.random.default_rng(0)
        path = write_frame(pd.DataFrame({'x': rng.normal(size=500)}))

        table = load_csv(path)

        assert table.spec('x').kind is VariableKind.CONTINUOUS

    def test_few_distinct_numbers_are_discrete(self, write_frame):
        """Con pocos valores distintos una columna numérica se trata como discreta."""
        path = write_frame(pd.DataFrame({'g': [6, 7, 8, 7, 6] * 20, 'x': np.arange(100.0)}))

        table = load_csv(path)

        assert table.spec('g').is_discrete
        assert table.spec('g').levels == ('6', '7', '8')
        assert not table.spec('x').is_discrete

    def test_mixed_types_without_schema(self, tmp_path):
        path = tmp_path / 'mixto.csv'
        path.write_text("a\n1\n2\nhola\n", encoding='utf-8')

        with pytest.raises(MixedTypesInColumnError):
            load_csv(path)

    def test_duplicate_header(self, tmp_path):
        path = tmp_path / 'dup.csv'
        path.write_text("a,b,a\n1,2,3\n4,5,6\n", encoding='utf-8')

        with pytest.raises(DuplicateHeaderError):
            load_csv(path)

    def test_empty_table(self, tmp_path):
        path = tmp_path / 'vacio.csv'
        path.write_text("a,b\n1,\n,2\n", encoding='utf-8')

        with pytest.raises(EmptyTableError):
            load_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_csv(tmp_path / 'no_existe.csv')

    def test_unsupported_na_policy(self, write_frame):
        path = write_frame(pd.DataFrame({'x': [1.0, 2.0]}))

        with pytest.raises(DataError):
            load_csv(path, na_policy='impute')


@pytest.mark.unit
class TestSchema:
    """Tipos explícitos y ida y vuelta por CSV."""

    @classmethod
    def setup_class(cls):
        rng = np.random.default_rng(42)
        cls.frame = pd.DataFrame({
            'x': rng.normal(size=40) * 1e3,
            'grupo': rng.choice(['a', 'b', 'c'], size=40),
            'y': rng.uniform(size=40) / 7.0,
        })
        cls.schema = [
            {'name': 'x', 'kind': 'continuous'},
            {'name': 'grupo', 'kind': 'discrete', 'levels': ['a', 'b', 'c']},
            {'name': 'y', 'kind': 'continuous'},
        ]

    def test_schema_fixes_kinds(self, write_frame):
        path = write_frame(self.frame)

        table = load_csv(path, self.schema)

        assert table.kinds == [VariableKind.CONTINUOUS, VariableKind.DISCRETE, VariableKind.CONTINUOUS]
        assert table.spec('grupo').levels == ('a', 'b', 'c')

    def test_schema_header_mismatch(self, write_frame):
        path = write_frame(self.frame)

        with pytest.raises(SchemaError):
            load_csv(path, self.schema[:2])

    def test_undeclared_level(self, write_frame):
        path = write_frame(self.frame)
        schema = [dict(entry) for entry in self.schema]
        schema[1]['levels'] = ['a', 'b']

        with pytest.raises(SchemaError):
            load_csv(path, schema)

    def test_non_numeric_continuous(self, tmp_path):
        path = tmp_path / 'texto.csv'
        path.write_text("x\n1\nuno\n", encoding='utf-8')

        with pytest.raises(SchemaError):
            load_csv(path, [{'name': 'x', 'kind': 'continuous'}])

    def test_round_trip_is_bit_exact(self, write_frame, tmp_path):
        """Escribir y recargar con el esquema reproduce códigos y reales exactos."""
        original = load_csv(write_frame(self.frame), self.schema)
        copy_path = tmp_path / 'copia.csv'

        write_csv(original, copy_path)
        reloaded = load_csv(copy_path, table_schema(original))

        assert reloaded.specs == original.specs
        for a, b in zip(original.columns, reloaded.columns):
            assert np.array_equal(a, b)

    def test_schema_file_round_trip(self, write_frame, tmp_path):
        table = load_csv(write_frame(self.frame), self.schema)
        schema_path = tmp_path / 'schema.json'

        save_schema(table, schema_path)

        assert load_schema(schema_path) == self.schema

    def test_invalid_schema_file(self, tmp_path):
        path = tmp_path / 'malo.json'
        path.write_text(json.dumps({'name': 'x'}), encoding='utf-8')

        with pytest.raises(SchemaError):
            load_schema(path)

    def test_unknown_kind(self, tmp_path):
        path = tmp_path / 'tipo.json'
        path.write_text(json.dumps([{'name': 'x', 'kind': 'ordinal'}]), encoding='utf-8')

        with pytest.raises(SelvarError):
            load_schema(path)


def test_format_table_lists_every_variable(write_frame):
    path = write_frame(pd.DataFrame({'x': np.linspace(0, 1, 30), 'g': ['u', 'v'] * 15}))

    text = format_table(load_csv(path))

    assert '30 filas, 2 variables' in text
    assert 'continua' in text
    assert 'u(15), v(15)' in text
