"""
Puntuaciones de información mutua por pares y coeficientes de entropía.
"""

import math
from dataclasses import dataclass
from typing import Tuple

from .enums import Criterion, EdgeKind


@dataclass(frozen=True)
class MiResult:
    """Información mutua (en nats) de un par y sus grados de libertad."""
    mi: float
    df: int
    flags: Tuple[str, ...] = ()


@dataclass(frozen=True)
class EdgeScore:
    """Peso de arista de un par ``u < v``: MI penalizada por AIC y BIC."""
    u: int
    v: int
    mi: float
    df: int
    weight_aic: float
    weight_bic: float
    kind: EdgeKind
    flags: Tuple[str, ...] = ()

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if self.u >= self.v:
            raise ValueError("Las aristas se guardan con u < v")
        if self.df < 1:
            raise ValueError("Los grados de libertad deben ser positivos")
        if not self.mi >= 0:
            raise ValueError("La información mutua no puede ser negativa")

    @classmethod
    def from_mi(cls, u: int, v: int, result: MiResult, n: int, kind: EdgeKind) -> 'EdgeScore':
        """Aplica las penalizaciones ``2·df`` y ``ln(n)·df`` a un resultado de MI."""
        u, v = min(u, v), max(u, v)
        return cls(
            u=u,
            v=v,
            mi=result.mi,
            df=result.df,
            weight_aic=result.mi - 2.0 * result.df,
            weight_bic=result.mi - math.log(n) * result.df,
            kind=kind,
            flags=result.flags,
        )

    def weight(self, criterion: Criterion) -> float:
        return self.weight_aic if criterion is Criterion.AIC else self.weight_bic

    @property
    def pair(self) -> Tuple[int, int]:
        return self.u, self.v


@dataclass(frozen=True)
class LrTest:
    """Test de razón de verosimilitudes asociado a una MI (estadístico = 2·MI)."""
    statistic: float
    p_value: float


@dataclass(frozen=True)
class EcScore:
    """
    Coeficiente de entropía de un path-step.

    ``ec`` es la KL simétrica dividida por el número de variables del path-step
    y ``ecd = ec / (ec + 1)``.
    """
    k: int
    ec: float
    ecd: float
    n_vars: int
    symmetric_kl: float
    mutual_information: float

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if self.ec < 0:
            raise ValueError("El coeficiente de entropía no puede ser negativo")
        if not 0.0 <= self.ecd < 1.0:
            raise ValueError("ECD debe estar en [0, 1)")
