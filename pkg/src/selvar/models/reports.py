"""
Modelos de informes: selección por path-steps, comparación y manifiesto.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .enums import Method
from .errors import Diagnostic, Flags
from .fits import OlsFit
from .graph import Forest


@dataclass(frozen=True)
class StepScore:
    """Puntuación de un path-step; ``score`` es None si no se puntúa (singleton en EC)."""
    k: int
    members: Tuple[str, ...]
    score: Optional[float]
    cumulative_mi: float
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_vars(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class VariableTest:
    """Test de relevancia de una variable del mejor path-step."""
    variable: str
    test: str                  # 'kraskov' o 't'
    statistic: float
    p_value: float
    kept: bool


@dataclass
class SelectionReport:
    """Resultado completo de una ejecución de selección."""
    target: str
    method: Method
    forest: Forest
    steps: List[StepScore] = field(default_factory=list)
    best_k: Optional[int] = None
    selected: Tuple[str, ...] = ()
    final: Tuple[str, ...] = ()
    variable_tests: List[VariableTest] = field(default_factory=list)
    final_fit: Optional[OlsFit] = None
    diagnostics: List[Diagnostic] = field(default_factory=list)
    dropped_rows: int = 0
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def flags(self) -> List[str]:
        return sorted({d.code for d in self.diagnostics})

    @property
    def is_isolated(self) -> bool:
        return Flags.ISOLATED_TARGET in self.flags

    def add_diagnostic(self, stage: str, code: str, message: str, recoverable: bool = True) -> None:
        self.diagnostics.append(Diagnostic(stage, code, message, recoverable))

    def check_chain(self) -> None:
        """Comprueba ``M_wf ⊆ M_w ⊂ variables de M_0``."""
        variables = set(self.forest.names) - {self.target}
        if not set(self.final) <= set(self.selected):
            raise AssertionError("El conjunto final no está contenido en el path-step elegido")
        if not set(self.selected) <= variables:
            raise AssertionError("El path-step elegido contiene variables ajenas al modelo")


@dataclass(frozen=True)
class ComparisonRow:
    """MSE de test de una repetición de la comparación."""
    repeat: int
    mse_bpa: float
    mse_enet: float
    lambda1: float
    lambda2: float


@dataclass
class ComparisonReport:
    """Comparación repetida entrenamiento/test entre el modelo seleccionado y elastic net."""
    target: str
    predictors: Tuple[str, ...]
    rows: List[ComparisonRow] = field(default_factory=list)

    @property
    def win_count(self) -> int:
        return sum(1 for row in self.rows if row.mse_bpa < row.mse_enet)

    @property
    def win_rate(self) -> float:
        return self.win_count / len(self.rows) if self.rows else 0.0

    @property
    def median_mse_bpa(self) -> float:
        return float(np.median([row.mse_bpa for row in self.rows])) if self.rows else float("nan")

    @property
    def median_mse_enet(self) -> float:
        return float(np.median([row.mse_enet for row in self.rows])) if self.rows else float("nan")


@dataclass
class RunManifest:
    """Procedencia de una ejecución de la línea de comandos."""
    command: str
    config: Dict[str, Any]
    input_digest: str
    seed: int
    tool_version: str
    started_at: str
    finished_at: str = ''
    outputs: Dict[str, str] = field(default_factory=dict)
