"""
Configuración del sistema.

Cada dataclass agrupa los parámetros de una etapa del pipeline y puede
construirse desde variables de entorno (``SELVAR_*``) con ``from_env()``.
"""

import os
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from ..models.enums import Criterion, Method, VarianceMode
from ..models.errors import ConfigError

# Cargar variables de entorno desde .env
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    # dotenv no disponible, usar solo variables del sistema
    pass


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"{name} debe ser un entero, recibido {value!r}") from e


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or value == '':
        return default
    try:
        return float(value)
    except ValueError as e:
        raise ConfigError(f"{name} debe ser un número, recibido {value!r}") from e


@dataclass(frozen=True)
class ForestConfig:
    """Configuración del bosque mínimo AIC/BIC."""
    criterion: Criterion = Criterion.BIC
    variance_mode: VarianceMode = VarianceMode.HOMOGENEOUS
    admissibility: str = 'bfs'    # 'bfs' o 'component'

    def validate(self) -> None:
        if self.admissibility not in ('bfs', 'component'):
            raise ConfigError(f"Modo de admisibilidad desconocido: {self.admissibility}")

    @classmethod
    def from_env(cls) -> 'ForestConfig':
        """Crea configuración desde variables de entorno."""
        return cls(
            criterion=Criterion.parse(os.getenv('SELVAR_CRITERION', 'bic')),
            variance_mode=VarianceMode.parse(os.getenv('SELVAR_VARIANCE', 'hom')),
            admissibility=os.getenv('SELVAR_ADMISSIBILITY', 'bfs'),
        )


@dataclass(frozen=True)
class DensityConfig:
    """
    Validación cruzada de anchos de banda del estimador de densidad condicional.

    ``folds=None`` equivale a leave-one-out. La malla continua multiplica la
    referencia de Silverman por ``grid_points`` valores log-espaciados entre
    ``grid_low`` y ``grid_high``; el extremo superior representa ancho infinito.
    Un ancho menor solo sustituye a otro mayor si mejora la log-verosimilitud
    total de validación en más de ``cv_tolerance`` nats.
    """
    folds: Optional[int] = None
    grid_points: int = 13
    grid_low: float = 0.25
    grid_high: float = 8.0
    discrete_grid_points: int = 11
    max_passes: int = 5
    max_rows: int = 1000
    seed: int = 0
    cv_tolerance: float = 1.0

    def validate(self) -> None:
        if self.folds is not None and self.folds < 2:
            raise ConfigError("El número de folds de densidad debe ser >= 2")
        if self.grid_points < 2 or self.discrete_grid_points < 2:
            raise ConfigError("Las mallas de anchos de banda necesitan al menos 2 puntos")
        if not 0 < self.grid_low < self.grid_high:
            raise ConfigError("Se requiere 0 < grid_low < grid_high")
        if self.max_passes < 1:
            raise ConfigError("max_passes debe ser >= 1")
        if self.max_rows < 25:
            raise ConfigError("max_rows debe ser >= 25")
        if self.cv_tolerance < 0:
            raise ConfigError("cv_tolerance debe ser >= 0")

    @classmethod
    def from_env(cls) -> 'DensityConfig':
        """Crea configuración desde variables de entorno."""
        folds = _env_int('SELVAR_DENSITY_FOLDS', 0)
        return cls(
            folds=folds or None,
            grid_points=_env_int('SELVAR_GRID_POINTS', 13),
            max_passes=_env_int('SELVAR_MAX_PASSES', 5),
            max_rows=_env_int('SELVAR_DENSITY_MAX_ROWS', 1000),
            seed=_env_int('SELVAR_SEED', 0),
        )


@dataclass(frozen=True)
class KraskovConfig:
    """Parámetros del test de independencia por permutaciones con el estimador kNN."""
    k_neighbors: int = 3
    permutations: int = 99
    seed: int = 0
    alpha: float = 0.05

    def validate(self) -> None:
        if self.k_neighbors < 1:
            raise ConfigError("k_neighbors debe ser positivo")
        if self.permutations < 19:
            raise ConfigError("Se necesitan al menos 19 permutaciones")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError("alpha debe estar en (0, 1)")

    @classmethod
    def from_env(cls) -> 'KraskovConfig':
        """Crea configuración desde variables de entorno."""
        return cls(
            k_neighbors=_env_int('SELVAR_KNN', 3),
            permutations=_env_int('SELVAR_PERMUTATIONS', 99),
            seed=_env_int('SELVAR_SEED', 0),
            alpha=_env_float('SELVAR_ALPHA', 0.05),
        )


@dataclass(frozen=True)
class LinearConfig:
    """Configuración de la variante lineal (R² ajustado + t-test)."""
    folds: int = 10
    stepwise: bool = False

    def validate(self) -> None:
        if self.folds < 2:
            raise ConfigError("El número de folds debe ser >= 2")

    @classmethod
    def from_env(cls) -> 'LinearConfig':
        """Crea configuración desde variables de entorno."""
        return cls(
            folds=_env_int('SELVAR_FOLDS', 10),
            stepwise=os.getenv('SELVAR_STEPWISE', 'false').lower() == 'true',
        )


@dataclass(frozen=True)
class EnetGridConfig:
    """Malla de penalizaciones del elastic net usada en las comparaciones."""
    n_lambdas: int = 50
    lambda_ratio: float = 1e-3
    mixes: Tuple[float, ...] = (0.25, 0.5, 0.75)
    folds: int = 10
    tol: float = 1e-8
    max_iter: int = 100_000

    def validate(self) -> None:
        if self.n_lambdas < 1 or not 0 < self.lambda_ratio < 1:
            raise ConfigError("Malla de lambdas inválida")
        if any(not 0.0 <= mix < 1.0 for mix in self.mixes):
            raise ConfigError("Las mezclas alpha deben estar en [0, 1)")
        if self.folds < 2:
            raise ConfigError("El número de folds debe ser >= 2")


@dataclass(frozen=True)
class SplitConfig:
    """Particiones entrenamiento/test repetidas de la comparación."""
    train_frac: float = 0.7
    repeats: int = 100
    seed: int = 0

    def validate(self) -> None:
        if not 0.0 < self.train_frac < 1.0:
            raise ConfigError("train_frac debe estar en (0, 1)")
        if self.repeats < 1:
            raise ConfigError("repeats debe ser >= 1")


@dataclass(frozen=True)
class BpaConfig:
    """Configuración completa de una ejecución de selección por path-steps."""
    method: Method = Method.EC
    forest: ForestConfig = field(default_factory=ForestConfig)
    density: DensityConfig = field(default_factory=DensityConfig)
    kraskov: KraskovConfig = field(default_factory=KraskovConfig)
    linear: LinearConfig = field(default_factory=LinearConfig)
    alpha: float = 0.05
    seed: int = 0
    tie_tolerance: float = 0.0
    threads: int = 1

    def validate(self) -> None:
        """Valida la configuración y todas sus sub-configuraciones."""
        self.forest.validate()
        self.density.validate()
        self.kraskov.validate()
        self.linear.validate()
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError("alpha debe estar en (0, 1)")
        if self.tie_tolerance < 0:
            raise ConfigError("tie_tolerance no puede ser negativa")
        if self.threads < 1:
            raise ConfigError("threads debe ser >= 1")

    def with_seed(self, seed: int) -> 'BpaConfig':
        """Propaga una única semilla a todas las etapas aleatorias."""
        return replace(
            self,
            seed=seed,
            density=replace(self.density, seed=seed),
            kraskov=replace(self.kraskov, seed=seed),
        )

    @classmethod
    def from_env(cls) -> 'BpaConfig':
        """Crea configuración desde variables de entorno."""
        config = cls(
            method=Method.parse(os.getenv('SELVAR_METHOD', 'ec')),
            forest=ForestConfig.from_env(),
            density=DensityConfig.from_env(),
            kraskov=KraskovConfig.from_env(),
            linear=LinearConfig.from_env(),
            alpha=_env_float('SELVAR_ALPHA', 0.05),
            tie_tolerance=_env_float('SELVAR_TIE_TOLERANCE', 0.0),
            threads=_env_int('SELVAR_THREADS', 1),
        )
        return config.with_seed(_env_int('SELVAR_SEED', 0))


@dataclass
class AppConfig:
    """Configuración principal de la aplicación."""
    bpa: BpaConfig
    log_dir: str = 'logs'
    threads: int = 1

    @classmethod
    def from_env(cls) -> 'AppConfig':
        """Crea configuración completa desde variables de entorno."""
        return cls(
            bpa=BpaConfig.from_env(),
            log_dir=os.getenv('LOG_DIR', 'logs'),
            threads=_env_int('SELVAR_THREADS', os.cpu_count() or 1),
        )
