"""
Formateadores de texto para resúmenes OLS, perfiles de path-steps y comparaciones.
"""

import math

from ..models import ComparisonReport, Method, OlsFit, SelectionReport, VarrankRanking


def _signif(p_value: float) -> str:
    if p_value < 0.001:
        return '***'
    if p_value < 0.01:
        return '**'
    if p_value < 0.05:
        return '*'
    if p_value < 0.1:
        return '.'
    return ''


def _number(value: float, width: int = 10) -> str:
    if math.isinf(value) or math.isnan(value):
        return f"{str(value):>{width}}"
    return f"{value:>{width}.4f}"


class TextReportFormatter:
    """Formateador de resultados a texto plano."""

    @staticmethod
    def format_ols_summary(fit: OlsFit) -> str:
        """Tabla de coeficientes con códigos de significación y R² ajustado."""
        width = max(len(name) for name in fit.column_names) + 2
        output = []
        output.append("=" * 60)
        output.append(f"OLS: {fit.target or 'y'} (n={fit.n}, regresores={fit.p_used})")
        output.append("=" * 60)
        output.append(
            f"{'':<{width}}{'Estimate':>10} {'Std. Error':>10} {'t value':>10} {'Pr(>|t|)':>10}"
        )
        for i, name in enumerate(fit.column_names):
            p_value = float(fit.p_values[i])
            output.append(
                f"{name:<{width}}{_number(fit.coefficients[i])} {_number(fit.std_errors[i])} "
                f"{_number(fit.t_values[i])} {p_value:>10.4g} {_signif(p_value)}"
            )
        output.append("-" * 60)
        output.append("Signif. codes: 0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1")
        output.append(f"R²: {fit.r2:.4f}   R² ajustado: {fit.adj_r2:.4f}")
        output.append(f"Varianza residual: {fit.residual_variance:.4f} ({fit.df_resid} gl)")
        return "\n".join(output)

    @staticmethod
    def format_score_profile(report: SelectionReport) -> str:
        """Perfil de puntuaciones por path-step; los singletons EC aparecen como ``-``."""
        label = 'EC' if report.method is Method.EC else 'R² ajustado'
        output = []
        output.append(f"📊 Path-steps de {report.target} ({label})")
        output.append(f"{'paso':<6}{'|w|':>5}{'puntuación':>14}{'MI acumulada':>16}")
        for step in report.steps:
            score = '-' if step.score is None else f"{step.score:.4f}"
            marker = '  ◀' if step.k == report.best_k else ''
            output.append(
                f"w_{step.k:<4}{step.n_vars:>5}{score:>14}{step.cumulative_mi:>16.2f}{marker}"
            )
        if not report.steps:
            output.append("(sin path-steps)")
        output.append(f"M_w  = {{{', '.join(report.selected)}}}")
        output.append(f"M_wf = {{{', '.join(report.final)}}}")
        return "\n".join(output)

    @staticmethod
    def format_comparison(report: ComparisonReport) -> str:
        """Resumen de victorias y medianas de MSE de test."""
        output = []
        output.append(f"📊 Comparación para {report.target}: {len(report.rows)} repeticiones")
        output.append(f"   Predictores BPA: {', '.join(report.predictors) or '(solo intercepto)'}")
        output.append(f"   MSE mediano BPA: {report.median_mse_bpa:.4f}")
        output.append(f"   MSE mediano elastic net: {report.median_mse_enet:.4f}")
        output.append(
            f"   Victorias BPA: {report.win_count}/{len(report.rows)} ({report.win_rate:.0%})"
        )
        return "\n".join(output)

    @staticmethod
    def format_ranking(ranking: VarrankRanking) -> str:
        """Orden de selección de varrank con la puntuación de cada paso."""
        output = [f"📊 varrank ({ranking.scheme.value.upper()}) para {ranking.target}"]
        for step, var in enumerate(ranking.selected, start=1):
            output.append(f"   {step:>2}. {var:<20} {ranking.step_score(var):>10.4f}")
        if ranking.excluded:
            output.append(f"   Excluidas (entropía nula): {', '.join(ranking.excluded)}")
        return "\n".join(output)
