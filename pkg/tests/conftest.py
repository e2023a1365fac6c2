"""
Fixtures comunes: tablas simuladas, ficheros CSV temporales y el dataset prostate.
"""

from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd
import pytest

from selvar.models import MixedDataTable, VariableKind, VariableSpec
from selvar.parsers import load_csv

DATA_DIR = Path(__file__).parent / 'data'

PROSTATE_SCHEMA = [
    {'name': 'lcavol', 'kind': 'continuous'},
    {'name': 'lweight', 'kind': 'continuous'},
    {'name': 'age', 'kind': 'continuous'},
    {'name': 'lbph', 'kind': 'continuous'},
    {'name': 'svi', 'kind': 'discrete', 'levels': ['0', '1']},
    {'name': 'lcp', 'kind': 'continuous'},
    {'name': 'gleason', 'kind': 'continuous'},
    {'name': 'pgg45', 'kind': 'continuous'},
    {'name': 'lpsa', 'kind': 'continuous'},
]


def build_table(columns: Dict[str, Sequence], levels: Optional[Dict[str, Sequence[str]]] = None) -> MixedDataTable:
    """
    Construye una tabla en memoria.

    Las columnas nombradas en ``levels`` son discretas (códigos enteros);
    el resto, continuas.
    """
    levels = levels or {}
    specs, data = [], []
    for index, (name, values) in enumerate(columns.items()):
        if name in levels:
            specs.append(VariableSpec(name, VariableKind.DISCRETE, index, tuple(levels[name])))
        else:
            specs.append(VariableSpec(name, VariableKind.CONTINUOUS, index))
        data.append(np.asarray(values))
    return MixedDataTable(specs=tuple(specs), columns=tuple(data))


def orthogonalize(y: np.ndarray, *others: np.ndarray) -> np.ndarray:
    """Residuo de ``y`` frente a las columnas dadas (correlación muestral nula)."""
    X = np.column_stack([np.ones_like(y)] + list(others))
    beta = np.linalg.lstsq(X, y, rcond=None)[0]
    return y - X @ beta


def chain_columns(seed: int, n: int = 200) -> Dict[str, np.ndarray]:
    """Cadena Y <- A <- B: B no aporta nada sobre Y dado A."""
    rng = np.random.default_rng(seed)
    b = rng.normal(size=n)
    a = b + rng.normal(size=n)
    y = a + rng.normal(size=n)
    return {'Y': y, 'A': a, 'B': b}


def planted_columns(seed: int, n: int = 200) -> Dict[str, np.ndarray]:
    """
    Y depende de A1 y A2; B es un proxy ruidoso de A1.

    El bosque esperado es B - A1 - Y - A2, con w_1 = {A1, A2}.
    """
    rng = np.random.default_rng(seed)
    a1 = rng.normal(size=n)
    a2 = rng.normal(size=n)
    y = a1 + a2 + 0.7 * rng.normal(size=n)
    b = a1 + 0.5 * rng.normal(size=n)
    return {'Y': y, 'A1': a1, 'A2': a2, 'B': b}


def isolated_columns(seed: int, n: int = 200) -> Dict[str, np.ndarray]:
    """X1 y X2 correladas; Y con correlación muestral exactamente nula con ambas."""
    rng = np.random.default_rng(seed)
    x1 = rng.normal(size=n)
    x2 = x1 + 0.5 * rng.normal(size=n)
    y = orthogonalize(rng.normal(size=n), x1, x2)
    return {'X1': x1, 'X2': x2, 'Y': y}


@pytest.fixture
def make_table():
    """Factoría de tablas en memoria."""
    return build_table


@pytest.fixture
def chain_table():
    return build_table(chain_columns(seed=1))


@pytest.fixture
def isolated_table():
    return build_table(isolated_columns(seed=3))


@pytest.fixture
def write_frame(tmp_path):
    """Escribe un DataFrame como CSV en el directorio temporal y devuelve la ruta."""
    def _write(frame: pd.DataFrame, name: str = 'data.csv') -> Path:
        path = tmp_path / name
        frame.to_csv(path, index=False, float_format='%.17g')
        return path
    return _write


@pytest.fixture(scope='session')
def prostate_table():
    """Dataset prostate (97 filas, sin la columna train)."""
    return load_csv(DATA_DIR / 'prostate.csv', PROSTATE_SCHEMA)
