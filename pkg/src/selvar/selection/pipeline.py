"""
Orquestador de la selección por path-steps (pasos 0-4).

0. Bosque mínimo AIC/BIC sobre todas las variables.
1. Path-steps ``w_k`` alrededor del objetivo.
2. Puntuación de cada path-step (EC por densidad núcleo o R² ajustado).
3. Mejor path-step; los empates se resuelven por el más pequeño.
4. Poda de ``M_w`` por test kNN de independencia (EC) o por test t (R²).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Any, Dict, List, Optional, Tuple

import networkx
import numpy
import pandas as pd
import scipy
import sklearn
import statsmodels

from .. import __version__
from ..config import BpaConfig, get_logger
from ..density import density_flags, ec_score, fit_conditional_density
from ..graph import build_forest, cumulative_information, path_steps
from ..info import all_pairwise_scores, screen_variables
from ..models import (
    Flags,
    Method,
    MixedDataTable,
    NotContinuousError,
    PathStep,
    SelectionError,
    SelectionReport,
    SelvarError,
    StepScore,
    VariableTest,
)
from ..models.table import VarRef
from ..regression import fit_regressors, kfold_cv_mse, prune_by_ttest
from ..reports.serializers import to_jsonable

logger = get_logger(__name__)

EXACT_TIE = 1e-9


def _provenance(cfg: BpaConfig) -> Dict[str, Any]:
    return {
        'config': to_jsonable(cfg),
        'seed': cfg.seed,
        'versions': {
            'selvar': __version__,
            'numpy': numpy.__version__,
            'scipy': scipy.__version__,
            'scikit-learn': sklearn.__version__,
            'statsmodels': statsmodels.__version__,
            'networkx': networkx.__version__,
            'pandas': pd.__version__,
        },
    }


def _score_ec(table: MixedDataTable, target: int, step: PathStep, cumulative: float,
              cfg: BpaConfig) -> Tuple[StepScore, Tuple[str, ...]]:
    names = tuple(table.names[i] for i in step.members)
    if len(step.members) < 2:
        return StepScore(k=step.k, members=names, score=None, cumulative_mi=cumulative), ()
    model = fit_conditional_density(table, target, step.members, cfg.density)
    score = ec_score(model, step.k)
    details = {
        'ec': score.ec,
        'ecd': score.ecd,
        'symmetric_kl': score.symmetric_kl,
        'mutual_information': score.mutual_information,
        'smoothed_out': model.smoothed_out_names,
        'target_bandwidth': model.bandwidths.target,
    }
    step_score = StepScore(k=step.k, members=names, score=score.ec,
                           cumulative_mi=cumulative, details=details)
    return step_score, density_flags(model)


def _score_r2(table: MixedDataTable, target: int, step: PathStep, cumulative: float,
              cfg: BpaConfig) -> Tuple[StepScore, Tuple[str, ...]]:
    names = tuple(table.names[i] for i in step.members)
    fit = fit_regressors(table, target, step.members)
    cv = kfold_cv_mse(table, target, step.members, cfg.linear.folds, cfg.seed)
    details = {
        'adj_r2': fit.adj_r2,
        'r2': fit.r2,
        'cv_mse': cv.mean_mse,
        'in_sample_mse': fit.in_sample_mse,
    }
    return StepScore(k=step.k, members=names, score=fit.adj_r2,
                     cumulative_mi=cumulative, details=details), ()


def _choose_best(steps: List[StepScore], tolerance: float) -> Optional[StepScore]:
    scored = [step for step in steps if step.score is not None]
    if not scored:
        return None
    top = max(step.score for step in scored)
    return next(step for step in scored if step.score >= top - tolerance)


def run_bpa(table: MixedDataTable, target: VarRef, cfg: Optional[BpaConfig] = None) -> SelectionReport:
    """
    Ejecuta la selección completa para ``target``.

    Un objetivo sin vecinos en el bosque devuelve un informe vacío con la
    bandera ``ISOLATED_TARGET``. Los errores de una etapa se relanzan como
    SelectionError con la etapa y el path-step.

    Args:
        table: Tabla de datos
        target: Variable objetivo
        cfg: Configuración (por defecto, método EC con BIC)

    Returns:
        SelectionReport con el bosque, el perfil de puntuaciones y los conjuntos elegidos
    """
    cfg = cfg or BpaConfig()
    cfg.validate()
    y = table.index_of(target)
    target_name = table.names[y]
    if cfg.method is Method.R2 and table.specs[y].is_discrete:
        raise NotContinuousError(f"El método R2 necesita un objetivo continuo ({target_name})")

    logger.info(f"🌲 Selección para {target_name}: método {cfg.method.value}, "
                f"criterio {cfg.forest.criterion.value}")

    # Paso 0
    try:
        scores = all_pairwise_scores(table, cfg.forest.variance_mode, cfg.forest.criterion, cfg.threads)
        forest = build_forest(scores, cfg.forest.criterion, table.kinds, table.names,
                              cfg.forest.admissibility)
    except SelvarError as e:
        raise SelectionError(str(e), 'forest') from e

    report = SelectionReport(
        target=target_name,
        method=cfg.method,
        forest=forest,
        dropped_rows=table.dropped_rows,
        provenance=_provenance(cfg),
    )
    if table.dropped_rows:
        report.add_diagnostic('data', Flags.ROWS_DROPPED,
                              f"{table.dropped_rows} filas descartadas por valores ausentes")
    for score in scores:
        for flag in score.flags:
            report.add_diagnostic(
                'forest', flag, f"Par ({table.names[score.u]}, {table.names[score.v]})"
            )

    # Paso 1
    steps = path_steps(forest, y)
    if not steps:
        logger.warning(f"El objetivo {target_name} no tiene vecinos en el bosque")
        report.add_diagnostic('path_steps', Flags.ISOLATED_TARGET,
                              f"{target_name} está aislado en M_0", recoverable=False)
        return report
    cumulative = cumulative_information(steps, scores)

    # Paso 2
    scorer = _score_ec if cfg.method is Method.EC else _score_r2

    def score(item: Tuple[PathStep, float]) -> Tuple[StepScore, Tuple[str, ...]]:
        step, mi = item
        try:
            return scorer(table, y, step, mi, cfg)
        except SelvarError as e:
            raise SelectionError(str(e), 'score', step.k) from e

    items = list(zip(steps, cumulative))
    if cfg.threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as executor:
            scored = list(executor.map(score, items))
    else:
        scored = [score(item) for item in items]

    for step_score, flags in scored:
        report.steps.append(step_score)
        for flag in flags:
            report.add_diagnostic('score', flag, f"Path-step w_{step_score.k}")
        shown = '-' if step_score.score is None else f"{step_score.score:.4f}"
        logger.info(f"   w_{step_score.k}: {step_score.n_vars} variables, puntuación {shown}")

    # Paso 3
    best = _choose_best(report.steps, EXACT_TIE + cfg.tie_tolerance)
    if best is None:
        best = report.steps[0]
        report.add_diagnostic('select', Flags.ONLY_SINGLETON_STEP,
                              "Todos los path-steps tienen una sola variable; se toma w_1")
    report.best_k = best.k
    report.selected = best.members
    logger.info(f"📊 Mejor path-step: w_{best.k} ({', '.join(best.members)})")

    # Paso 4
    try:
        if cfg.method is Method.EC:
            _prune_ec(table, y, report, cfg)
        else:
            _prune_r2(table, y, report, cfg)
    except SelvarError as e:
        raise SelectionError(str(e), 'prune', best.k) from e

    if not report.final:
        report.add_diagnostic('prune', Flags.ALL_PRUNED, "Ninguna variable supera el test")
    report.check_chain()
    logger.info(f"✅ Conjunto final: {{{', '.join(report.final)}}}")
    return report


def _prune_ec(table: MixedDataTable, y: int, report: SelectionReport, cfg: BpaConfig) -> None:
    kraskov = replace(cfg.kraskov, alpha=cfg.alpha)
    results = screen_variables(table, y, list(report.selected), kraskov, cfg.threads)
    report.variable_tests = [
        VariableTest(variable=r.variable, test='kraskov', statistic=r.mi_hat,
                     p_value=r.p_value, kept=r.reject)
        for r in results
    ]
    report.final = tuple(r.variable for r in results if r.reject)


def _prune_r2(table: MixedDataTable, y: int, report: SelectionReport, cfg: BpaConfig) -> None:
    fit = fit_regressors(table, y, list(report.selected))
    kept, refit = prune_by_ttest(table, y, fit, cfg.alpha, cfg.linear.stepwise)
    p_values = fit.variable_pvalues()
    t_values = fit.variable_tvalues()
    report.variable_tests = [
        VariableTest(variable=var, test='t', statistic=t_values[var],
                     p_value=p_values[var], kept=var in kept)
        for var in fit.regressors
    ]
    report.final = kept
    report.final_fit = refit


def score_profile(report: SelectionReport) -> pd.DataFrame:
    """
    Tabla ordenada ``k, n_vars, score, cumulative_mi`` del informe.

    Los path-steps no puntuados (singletons del método EC) muestran ``-``.
    """
    rows = [
        {
            'k': step.k,
            'n_vars': step.n_vars,
            'score': '-' if step.score is None else step.score,
            'cumulative_mi': step.cumulative_mi,
        }
        for step in report.steps
    ]
    return pd.DataFrame(rows, columns=['k', 'n_vars', 'score', 'cumulative_mi'])
