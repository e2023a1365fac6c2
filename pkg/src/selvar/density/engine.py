"""
Estimador núcleo de la densidad condicional f(y | x) con anchos por validación cruzada.

La densidad condicional es una mezcla de núcleos del objetivo ponderada por
los núcleos producto de los condicionantes:

    f(y | x) = Σ_j K_y(y - y_j) · w_j(x),   w_j(x) = K_x(x, x_j) / Σ_l K_x(x, x_l)

Los anchos se eligen por descenso por coordenadas maximizando la
log-verosimilitud leave-one-out (o k-fold). Un condicionante cuyo ancho
acaba en el extremo superior de la malla queda suavizado (núcleo constante)
y deja de influir en la estimación.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp
from sklearn.model_selection import KFold

from ..config import DensityConfig, get_logger
from ..models import (
    EcScore,
    Flags,
    MixedDataTable,
    PreconditionError,
    SingletonPathStepError,
    TooFewRowsError,
)
from ..models.table import VarRef
from .kernels import (
    DENSITY_FLOOR,
    LOG_FLOOR,
    continuous_multipliers,
    discrete_grid,
    log_kernel_matrix,
    silverman_reference,
    start_index,
)

logger = get_logger(__name__)

MIN_ROWS = 25
_CHUNK = 256


@dataclass(frozen=True)
class Bandwidths:
    """Anchos elegidos: ``math.inf`` (continua) o ``(L-1)/L`` (discreta) indican suavizado."""
    target: float
    conditioners: Tuple[float, ...]
    smoothed_out: Tuple[bool, ...]


@dataclass(frozen=True)
class _Variable:
    name: str
    values: np.ndarray
    discrete: bool
    levels: int

    def log_kernel(self, a: np.ndarray, bandwidth: float, b: Optional[np.ndarray] = None) -> np.ndarray:
        return log_kernel_matrix(a, self.values if b is None else b, bandwidth,
                                 self.discrete, self.levels)

    def is_flat(self, bandwidth: float) -> bool:
        if self.discrete:
            return self.levels <= 1 or bandwidth >= (self.levels - 1) / self.levels
        return math.isinf(bandwidth)


@dataclass(frozen=True)
class KlEstimate:
    """Términos de la divergencia simétrica y número de densidades acotadas."""
    direct: float
    reverse: float
    floored: int

    @property
    def symmetric(self) -> float:
        return max(self.direct, 0.0) + max(self.reverse, 0.0)


class ConditionalDensityModel:
    """
    Densidad condicional ajustada del objetivo dado un conjunto de condicionantes.

    Guarda la muestra completa y los anchos elegidos; la evaluación se hace
    por bloques de filas para acotar memoria.
    """

    def __init__(self, target: _Variable, conditioners: Sequence[_Variable],
                 bandwidths: Bandwidths, flags: Tuple[str, ...] = (), seed: int = 0,
                 max_rows: int = 1000):
        self.target = target
        self.conditioners = tuple(conditioners)
        self.bandwidths = bandwidths
        self.flags = flags
        self.seed = seed
        self.max_rows = max_rows
        self._kl: Optional[KlEstimate] = None

    @property
    def n(self) -> int:
        return int(self.target.values.shape[0])

    @property
    def conditioner_names(self) -> List[str]:
        return [var.name for var in self.conditioners]

    @property
    def active(self) -> List[int]:
        """Condicionantes no suavizados."""
        return [i for i, out in enumerate(self.bandwidths.smoothed_out) if not out]

    @property
    def smoothed_out_names(self) -> List[str]:
        return [var.name for var, out in zip(self.conditioners, self.bandwidths.smoothed_out) if out]

    def _columns(self, x) -> List[np.ndarray]:
        if isinstance(x, np.ndarray) and x.ndim == 2:
            columns = [x[:, i] for i in range(x.shape[1])]
        else:
            columns = [np.atleast_1d(np.asarray(col)) for col in x]
        if len(columns) != len(self.conditioners):
            raise PreconditionError(
                f"Se esperaban {len(self.conditioners)} condicionantes, llegaron {len(columns)}"
            )
        return columns

    def log_weights(self, x_columns: Sequence[np.ndarray]) -> np.ndarray:
        """``log K_x(x_i, x_j)`` sin normalizar (filas: puntos de evaluación)."""
        m = x_columns[0].shape[0] if x_columns else 0
        total = np.zeros((m, self.n))
        for i in self.active:
            var = self.conditioners[i]
            total += var.log_kernel(x_columns[i], self.bandwidths.conditioners[i])
        return total

    def weights(self, x_columns: Sequence[np.ndarray]) -> np.ndarray:
        """Pesos normalizados ``w_j(x)`` de cada punto de evaluación."""
        log_w = self.log_weights(x_columns)
        return np.exp(log_w - logsumexp(log_w, axis=1, keepdims=True))

    def log_target_kernel(self, y: np.ndarray) -> np.ndarray:
        return self.target.log_kernel(np.asarray(y), self.bandwidths.target)

    def density(self, y, x) -> np.ndarray:
        """
        Evalúa ``f(y_i | x_i)`` punto a punto.

        Args:
            y: Valores del objetivo (códigos si es discreto)
            x: Matriz ``m × q`` o secuencia de ``q`` columnas con los condicionantes

        Returns:
            Array con las densidades
        """
        y = np.atleast_1d(np.asarray(y))
        columns = self._columns(x)
        if columns and columns[0].shape[0] == 1 and y.shape[0] > 1:
            columns = [np.repeat(col, y.shape[0]) for col in columns]
        out = np.empty(y.shape[0])
        for start in range(0, y.shape[0], _CHUNK):
            stop = start + _CHUNK
            log_w = self.log_weights([col[start:stop] for col in columns])
            log_k = self.log_target_kernel(y[start:stop])
            out[start:stop] = np.exp(logsumexp(log_k + log_w, axis=1) - logsumexp(log_w, axis=1))
        return out

    def mixture_weights(self, rows: Optional[Sequence[int]] = None) -> np.ndarray:
        """Media de los pesos normalizados sobre los puntos de condicionamiento ``rows``."""
        rows = np.arange(self.n) if rows is None else np.asarray(rows, dtype=np.int64)
        omega = np.zeros(self.n)
        for start in range(0, rows.shape[0], _CHUNK):
            block = rows[start:start + _CHUNK]
            omega += self.weights([var.values[block] for var in self.conditioners]).sum(axis=0)
        return omega / rows.shape[0]


class MixtureMarginal:
    """Marginal del objetivo como mezcla de condicionales: ``f(y) = Σ_j K_y(y - y_j) ω_j``."""

    def __init__(self, model: ConditionalDensityModel, omega: np.ndarray):
        self.model = model
        self.omega = omega

    def __call__(self, y) -> np.ndarray:
        y = np.atleast_1d(np.asarray(y))
        out = np.empty(y.shape[0])
        for start in range(0, y.shape[0], _CHUNK):
            kernel = np.exp(self.model.log_target_kernel(y[start:start + _CHUNK]))
            out[start:start + _CHUNK] = kernel @ self.omega
        return out


def _variable(table: MixedDataTable, var: VarRef) -> _Variable:
    spec = table.spec(var)
    values = table.column(spec.index)
    if not spec.is_discrete:
        silverman_reference(values)
    return _Variable(
        name=spec.name,
        values=np.asarray(values),
        discrete=spec.is_discrete,
        levels=spec.n_levels,
    )


class _BandwidthSearch:
    """Descenso por coordenadas sobre mallas de anchos con máscara de validación."""

    def __init__(self, target: _Variable, conditioners: Sequence[_Variable], cfg: DensityConfig):
        self.cfg = cfg
        self.target = target
        self.conditioners = list(conditioners)
        n = target.values.shape[0]
        if cfg.folds is None:
            allowed = ~np.eye(n, dtype=bool)
        else:
            fold = np.empty(n, dtype=np.int64)
            splitter = KFold(n_splits=cfg.folds, shuffle=True, random_state=cfg.seed)
            for f, (_, test) in enumerate(splitter.split(np.arange(n))):
                fold[test] = f
            allowed = fold[:, None] != fold[None, :]
        self.log_mask = np.where(allowed, 0.0, -np.inf)
        self.grids = [self._grid(target, finite=True)] + [
            self._grid(var, finite=False) for var in self.conditioners
        ]

    def _grid(self, var: _Variable, finite: bool) -> np.ndarray:
        if var.discrete:
            return discrete_grid(var.levels, self.cfg)
        grid = continuous_multipliers(self.cfg) * silverman_reference(var.values)
        if not finite:
            grid[-1] = math.inf
        return grid

    def _start(self, var: _Variable, grid: np.ndarray) -> int:
        if var.discrete:
            return (grid.shape[0] - 1) // 2
        return start_index(continuous_multipliers(self.cfg))

    def _matrix(self, var: _Variable, grid: np.ndarray, index: int) -> np.ndarray:
        return var.log_kernel(var.values, float(grid[index]))

    def objective(self, log_ky: np.ndarray, log_w: np.ndarray) -> float:
        """Log-verosimilitud total de validación."""
        masked = log_w + self.log_mask
        with np.errstate(invalid='ignore', divide='ignore'):
            ll = logsumexp(log_ky + masked, axis=1) - logsumexp(masked, axis=1)
        ll = np.where(np.isfinite(ll), ll, LOG_FLOOR)
        return float(np.sum(np.maximum(ll, LOG_FLOOR)))

    def _choose(self, values: np.ndarray) -> int:
        # Casi-empates (dentro de la tolerancia): gana el ancho mayor
        return int(np.flatnonzero(values >= values.max() - self.cfg.cv_tolerance)[-1])

    def run(self) -> Tuple[List[int], int]:
        variables = [self.target] + self.conditioners
        index = [self._start(var, grid) for var, grid in zip(variables, self.grids)]
        log_ky = self._matrix(self.target, self.grids[0], index[0])
        log_w = sum(
            (self._matrix(var, grid, i) for var, grid, i in
             zip(self.conditioners, self.grids[1:], index[1:])),
            np.zeros_like(log_ky),
        )

        passes = 0
        for passes in range(1, self.cfg.max_passes + 1):
            changed = False
            values = np.array([
                self.objective(self._matrix(self.target, self.grids[0], g), log_w)
                for g in range(self.grids[0].shape[0])
            ])
            best = self._choose(values)
            if best != index[0]:
                changed = True
                index[0] = best
                log_ky = self._matrix(self.target, self.grids[0], best)

            for pos, var in enumerate(self.conditioners, start=1):
                grid = self.grids[pos]
                base = log_w - self._matrix(var, grid, index[pos])
                values = np.array([
                    self.objective(log_ky, base + self._matrix(var, grid, g))
                    for g in range(grid.shape[0])
                ])
                best = self._choose(values)
                if best != index[pos]:
                    changed = True
                    index[pos] = best
                log_w = base + self._matrix(var, grid, index[pos])
            if not changed:
                break
        return index, passes


def fit_conditional_density(
    table: MixedDataTable,
    target: VarRef,
    conditioners: Sequence[VarRef],
    cv: Optional[DensityConfig] = None,
) -> ConditionalDensityModel:
    """
    Ajusta ``f(target | conditioners)`` eligiendo anchos por validación cruzada.

    Con más de ``cv.max_rows`` filas la búsqueda de anchos se hace sobre una
    submuestra con semilla; los anchos continuos se trasladan a la muestra
    completa como múltiplos de la referencia de Silverman.

    Args:
        table: Tabla de datos
        target: Variable objetivo
        conditioners: Variables condicionantes (al menos una)
        cv: Configuración de la validación cruzada

    Returns:
        ConditionalDensityModel ajustado
    """
    cfg = cv or DensityConfig()
    cfg.validate()
    target_index = table.index_of(target)
    cond_index = [table.index_of(var) for var in conditioners]
    if not cond_index:
        raise PreconditionError("Se necesita al menos un condicionante")
    if target_index in cond_index or len(set(cond_index)) != len(cond_index):
        raise PreconditionError("Los condicionantes deben ser distintos entre sí y del objetivo")
    if table.n_rows < MIN_ROWS:
        raise TooFewRowsError(f"Se necesitan al menos {MIN_ROWS} filas, hay {table.n_rows}")

    flags: List[str] = []
    full_target = _variable(table, target_index)
    full_conds = [_variable(table, i) for i in cond_index]

    if table.n_rows > cfg.max_rows:
        rng = np.random.default_rng(cfg.seed)
        rows = np.sort(rng.choice(table.n_rows, size=cfg.max_rows, replace=False))
        sample = table.subset_rows(rows)
        search_target = _variable(sample, target_index)
        search_conds = [_variable(sample, i) for i in cond_index]
        flags.append(Flags.CV_SUBSAMPLED)
        logger.debug(f"Validación de anchos sobre {cfg.max_rows} de {table.n_rows} filas")
    else:
        search_target, search_conds = full_target, full_conds

    search = _BandwidthSearch(search_target, search_conds, cfg)
    index, passes = search.run()

    def final_bandwidth(full: _Variable, grid: np.ndarray, i: int, finite: bool) -> float:
        if full.discrete:
            return float(grid[i])
        multiplier = continuous_multipliers(cfg)[i]
        if not finite and i == grid.shape[0] - 1:
            return math.inf
        return float(multiplier * silverman_reference(full.values))

    bw_target = final_bandwidth(full_target, search.grids[0], index[0], True)
    bw_conds = tuple(
        final_bandwidth(var, grid, i, False)
        for var, grid, i in zip(full_conds, search.grids[1:], index[1:])
    )
    smoothed = tuple(var.is_flat(bw) for var, bw in zip(full_conds, bw_conds))
    if all(smoothed):
        flags.append(Flags.ALL_SMOOTHED_OUT)

    logger.debug(
        f"Densidad de {full_target.name} | {[v.name for v in full_conds]}: "
        f"{passes} pasadas, suavizadas {sum(smoothed)}/{len(smoothed)}"
    )
    return ConditionalDensityModel(
        target=full_target,
        conditioners=full_conds,
        bandwidths=Bandwidths(target=bw_target, conditioners=bw_conds, smoothed_out=smoothed),
        flags=tuple(flags),
        seed=cfg.seed,
        max_rows=cfg.max_rows,
    )


def mixture_marginal(model: ConditionalDensityModel,
                     rows: Optional[Sequence[int]] = None) -> MixtureMarginal:
    """
    Marginal del objetivo promediando las condicionales en los puntos ``rows``.

    Con un único punto de condicionamiento coincide con ``f(y | x_row)``.
    """
    return MixtureMarginal(model, model.mixture_weights(rows))


def _loo_terms(model: ConditionalDensityModel, omega: np.ndarray) -> Tuple[np.ndarray, np.ndarray, int]:
    """Log-densidades leave-one-out condicional y marginal en cada fila."""
    n = model.n
    y = model.target.values
    x = [var.values for var in model.conditioners]
    log_cond = np.empty(n)
    log_marg = np.empty(n)
    for start in range(0, n, _CHUNK):
        block = np.arange(start, min(start + _CHUNK, n))
        local = np.arange(block.shape[0])
        log_w = model.log_weights([col[block] for col in x])
        log_w[local, block] = -np.inf
        log_k = model.log_target_kernel(y[block])
        log_cond[block] = logsumexp(log_k + log_w, axis=1) - logsumexp(log_w, axis=1)
        kernel = np.exp(log_k)
        kernel[local, block] = 0.0
        with np.errstate(divide='ignore'):
            log_marg[block] = np.log(kernel @ omega) - np.log(omega.sum() - omega[block])

    floored = int(np.sum(~(log_cond > LOG_FLOOR)) + np.sum(~(log_marg > LOG_FLOOR)))
    log_cond = np.maximum(np.nan_to_num(log_cond, nan=LOG_FLOOR, neginf=LOG_FLOOR), LOG_FLOOR)
    log_marg = np.maximum(np.nan_to_num(log_marg, nan=LOG_FLOOR, neginf=LOG_FLOOR), LOG_FLOOR)
    return log_cond, log_marg, floored


def kl_estimate(model: ConditionalDensityModel) -> KlEstimate:
    """
    Estima los dos sentidos de la divergencia entre conjunta y producto de marginales.

    ``direct`` promedia ``ln f(y_n | x_n) - ln f(y_n)`` (leave-one-out) y
    ``reverse`` promedia ``ln f(y_m) - ln f(y_m | x_n)`` sobre pares ``m != n``,
    con ``y_m`` excluido de su propia estimación. Si hay más de ``max_rows``
    filas, el término inverso usa una submuestra con semilla de puntos de
    condicionamiento.
    """
    if model._kl is not None:
        return model._kl
    if not model.active:
        model._kl = KlEstimate(direct=0.0, reverse=0.0, floored=0)
        return model._kl

    n = model.n
    y = model.target.values
    omega = model.mixture_weights()
    log_cond, log_marg, floored = _loo_terms(model, omega)
    direct = float(np.mean(log_cond - log_marg))

    if n > model.max_rows:
        rng = np.random.default_rng([model.seed, n])
        anchors = np.sort(rng.choice(n, size=model.max_rows, replace=False))
    else:
        anchors = np.arange(n)
    weights = model.weights([var.values[anchors] for var in model.conditioners])

    total = 0.0
    pairs = 0
    for start in range(0, n, _CHUNK):
        block = np.arange(start, min(start + _CHUNK, n))
        kernel = np.exp(model.log_target_kernel(y[block]))
        kernel[np.arange(block.shape[0]), block] = 0.0
        numerator = kernel @ weights.T
        denominator = np.maximum(1.0 - weights[:, block].T, DENSITY_FLOOR)
        cond = numerator / denominator
        floored += int(np.sum(cond < DENSITY_FLOOR))
        log_rev = np.log(np.maximum(cond, DENSITY_FLOOR))
        valid = block[:, None] != anchors[None, :]
        total += float(np.sum((log_marg[block][:, None] - log_rev)[valid]))
        pairs += int(valid.sum())
    reverse = total / pairs if pairs else 0.0

    model._kl = KlEstimate(direct=direct, reverse=reverse, floored=floored)
    if floored:
        logger.debug(f"{floored} densidades acotadas en {DENSITY_FLOOR:g}")
    return model._kl


def mutual_information(model: ConditionalDensityModel) -> float:
    """Información mutua estimada ``I(Y; X)`` (acotada en 0)."""
    return max(kl_estimate(model).direct, 0.0)


def symmetric_kl(model: ConditionalDensityModel) -> float:
    """Divergencia simétrica entre la conjunta y el producto de marginales (>= 0)."""
    return kl_estimate(model).symmetric


def ec_score(model: ConditionalDensityModel, k: int) -> EcScore:
    """
    Puntuación EC del path-step ``k``: divergencia simétrica por variable.

    ``ecd = ec / (ec + 1)`` está en ``[0, 1)``. Un path-step con un solo
    condicionante no es puntuable.
    """
    n_vars = len(model.conditioners)
    if n_vars < 2:
        raise SingletonPathStepError(f"El path-step {k} tiene una sola variable")
    estimate = kl_estimate(model)
    ec = estimate.symmetric / n_vars
    return EcScore(
        k=k,
        ec=ec,
        ecd=ec / (ec + 1.0),
        n_vars=n_vars,
        symmetric_kl=estimate.symmetric,
        mutual_information=max(estimate.direct, 0.0),
    )


def density_flags(model: ConditionalDensityModel) -> Tuple[str, ...]:
    """Banderas del ajuste más ``DENSITY_FLOORED`` si alguna estimación se acotó."""
    flags = list(model.flags)
    if kl_estimate(model).floored:
        flags.append(Flags.DENSITY_FLOORED)
    return tuple(flags)

