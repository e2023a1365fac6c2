"""
Línea de comandos de selvar.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from . import __version__
from .config import (
    AppConfig,
    BpaConfig,
    EnetGridConfig,
    ForestConfig,
    SplitConfig,
    get_logger,
    setup_logging,
)
from .density import (
    density_curves,
    fit_conditional_density,
    fitted_value_curves,
    mutual_information,
    symmetric_kl,
)
from .graph import build_forest, components, export_dot, forest_to_dict
from .info import all_pairwise_scores, edge_scores_frame
from .models import (
    Criterion,
    Method,
    MixedDataTable,
    RunManifest,
    SelvarError,
    VarianceMode,
    VarrankScheme,
)
from .parsers import format_table, load_csv, load_schema
from .reports import (
    TextReportFormatter,
    comparison_frame,
    comparison_to_dict,
    report_to_dict,
    score_matrix_frame,
    to_jsonable,
)
from .selection import (
    compare_predictions,
    run_bpa,
    score_profile,
    varrank_relevance_check,
    varrank_select,
)
from .storage import FileResultStorage, calculate_file_hash, utc_timestamp

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ISOLATED = 2
EXIT_USAGE = 64


class SelvarArgumentParser(argparse.ArgumentParser):
    """ArgumentParser que termina con código 64 ante errores de uso."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sibling(path: str, suffix: str) -> str:
    """``out/R.json`` + ``.profile.csv`` → ``out/R.profile.csv``."""
    base = Path(path)
    return str(base.with_name(base.stem + suffix))


def _apply_env_defaults(args, app: AppConfig) -> None:
    """Completa las opciones no indicadas con la configuración de entorno."""
    bpa = app.bpa
    defaults = {
        'log_dir': app.log_dir,
        'threads': app.threads,
        'seed': bpa.seed,
        'criterion': bpa.forest.criterion.value,
        'variance': bpa.forest.variance_mode.value,
        'admissibility': bpa.forest.admissibility,
        'method': bpa.method.value,
        'alpha': bpa.alpha,
        'folds': bpa.linear.folds,
        'density_folds': bpa.density.folds,
        'permutations': bpa.kraskov.permutations,
        'stepwise': bpa.linear.stepwise,
        'tie_tolerance': bpa.tie_tolerance,
    }
    for name, value in defaults.items():
        if hasattr(args, name) and getattr(args, name) is None:
            setattr(args, name, value)
    args.env_config = bpa


def load_table(args) -> MixedDataTable:
    """Carga ``--data`` con el esquema opcional ``--schema``."""
    schema = load_schema(args.schema) if args.schema else None
    table = load_csv(args.data, schema)
    if table.dropped_rows:
        print(f"⚠️  {table.dropped_rows} filas descartadas por valores ausentes")
    return table


def _forest_config(args) -> ForestConfig:
    return ForestConfig(
        criterion=Criterion.parse(args.criterion),
        variance_mode=VarianceMode.parse(args.variance),
        admissibility=args.admissibility,
    )


def _manifest(command: str, args, config) -> RunManifest:
    return RunManifest(
        command=command,
        config=to_jsonable(config),
        input_digest=calculate_file_hash(args.data),
        seed=args.seed,
        tool_version=__version__,
        started_at=utc_timestamp(),
    )


def cmd_forest(args) -> int:
    """Comando para construir el bosque AIC/BIC."""
    table = load_table(args)
    config = _forest_config(args)
    manifest = _manifest('forest', args, config)
    storage = FileResultStorage()

    print(f"🌲 Construyendo bosque {config.criterion.value.upper()} sobre {table.p} variables...")
    scores = all_pairwise_scores(table, config.variance_mode, config.criterion, args.threads)
    forest = build_forest(scores, config.criterion, table.kinds, table.names, config.admissibility)

    storage.save_text(args.out_dot, export_dot(forest))
    storage.save_json(args.out_json, forest_to_dict(forest))
    edges_path = args.out_edges or _sibling(args.out_json, '.edges.csv')
    storage.save_frame(edges_path, edge_scores_frame(scores, table.names))
    storage.write_manifest(manifest, _sibling(args.out_json, '.manifest.json'))

    print(f"✅ Bosque con {len(forest.edges)} aristas y {len(components(forest))} componentes")
    print(f"   📄 {args.out_dot}")
    print(f"   📄 {args.out_json}")
    return EXIT_OK


def _bpa_config(args) -> BpaConfig:
    base: BpaConfig = args.env_config
    config = replace(
        base,
        method=Method.parse(args.method),
        forest=_forest_config(args),
        density=replace(base.density, folds=args.density_folds or None),
        kraskov=replace(base.kraskov, permutations=args.permutations),
        linear=replace(base.linear, folds=args.folds, stepwise=args.stepwise),
        alpha=args.alpha,
        tie_tolerance=args.tie_tolerance,
        threads=args.threads,
    )
    return config.with_seed(args.seed)


def cmd_select(args) -> int:
    """Comando para seleccionar predictores de un objetivo."""
    logger = get_logger(__name__)
    table = load_table(args)
    config = _bpa_config(args)
    manifest = _manifest('select', args, config)
    storage = FileResultStorage()

    print(f"🚀 Seleccionando predictores de {args.target} (método {config.method.value})...")
    report = run_bpa(table, args.target, config)
    storage.save_json(args.out, report_to_dict(report))
    storage.save_frame(_sibling(args.out, '.profile.csv'), score_profile(report))

    if report.is_isolated:
        storage.write_manifest(manifest, _sibling(args.out, '.manifest.json'))
        logger.warning(f"Objetivo aislado: {args.target}")
        print(f"❌ {args.target} no tiene vecinos en el bosque: no hay path-steps que puntuar")
        return EXIT_ISOLATED

    print(TextReportFormatter.format_score_profile(report))
    curves_path = _sibling(args.out, '.density.csv')
    if config.method is Method.EC:
        conditioners = list(report.final or report.selected)
        model = fit_conditional_density(table, args.target, conditioners, config.density)
        storage.save_frame(curves_path, density_curves(model))
    elif report.final_fit is not None:
        print(TextReportFormatter.format_ols_summary(report.final_fit))
        y = table.continuous_column(args.target)
        storage.save_frame(curves_path, fitted_value_curves(report.final_fit, y))

    storage.write_manifest(manifest, _sibling(args.out, '.manifest.json'))
    print(f"✅ Informe guardado en {args.out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    """Comando para comparar la selección con elastic net o varrank."""
    table = load_table(args)
    config = _bpa_config(args)
    split = SplitConfig(repeats=args.repeats, seed=args.seed)
    manifest = _manifest('compare', args, {'bpa': config, 'split': split, 'baseline': args.baseline})
    storage = FileResultStorage()

    print(f"🚀 Ejecutando selección de referencia para {args.target}...")
    report = run_bpa(table, args.target, config)
    if report.is_isolated:
        print(f"⚠️  {args.target} está aislado: el modelo BPA queda con solo el intercepto")

    if args.baseline == 'enet':
        print(f"📊 Comparando con elastic net en {split.repeats} particiones...")
        comparison = compare_predictions(table, args.target, report, EnetGridConfig(), split,
                                         args.threads)
        storage.save_frame(args.out, comparison_frame(comparison))
        storage.save_json(_sibling(args.out, '.summary.json'), comparison_to_dict(comparison))
        print(TextReportFormatter.format_comparison(comparison))
    else:
        scheme = VarrankScheme.parse(args.scheme)
        ranking = varrank_select(table, args.target, args.m, scheme)
        relevance = varrank_relevance_check(ranking, list(report.final))
        storage.save_frame(args.out, score_matrix_frame(ranking))
        storage.save_json(_sibling(args.out, '.summary.json'), {
            'target': ranking.target,
            'scheme': scheme.value,
            'ranking': list(ranking.selected),
            'relevance': ranking.relevance,
            'bpa_selected': list(report.final),
            'bpa_scores': relevance,
            'excluded': list(ranking.excluded),
        })
        print(TextReportFormatter.format_ranking(ranking))
        for var, score in relevance.items():
            sign = '✅' if score > 0 else '❌'
            print(f"   {sign} {var}: {score:.4f}")

    storage.write_manifest(manifest, _sibling(args.out, '.manifest.json'))
    print(f"✅ Comparación guardada en {args.out}")
    return EXIT_OK


def cmd_density(args) -> int:
    """Comando para emitir curvas de densidad de un objetivo dado un conjunto de variables."""
    table = load_table(args)
    config = replace(args.env_config.density, folds=args.density_folds or None, seed=args.seed)
    variables = [name.strip() for name in args.vars.split(',') if name.strip()]
    manifest = _manifest('density', args, {'density': config, 'target': args.target,
                                           'vars': variables, 'points': args.points})
    storage = FileResultStorage()

    print(f"📊 Estimando f({args.target} | {', '.join(variables)})...")
    model = fit_conditional_density(table, args.target, variables, config)
    storage.save_frame(args.out, density_curves(model, args.points))
    storage.write_manifest(manifest, _sibling(args.out, '.manifest.json'))

    print(f"   Información mutua: {mutual_information(model):.4f}")
    print(f"   KL simétrica: {symmetric_kl(model):.4f}")
    if model.smoothed_out_names:
        print(f"   Suavizadas (irrelevantes): {', '.join(model.smoothed_out_names)}")
    print(f"✅ Curvas guardadas en {args.out}")
    return EXIT_OK


def cmd_describe(args) -> int:
    """Comando para mostrar el resumen de la tabla."""
    table = load_table(args)
    print(format_table(table))
    return EXIT_OK


def build_parser() -> SelvarArgumentParser:
    """Construye el parser con todos los subcomandos."""
    common = SelvarArgumentParser(add_help=False)
    common.add_argument('--data', required=True, help='CSV de entrada')
    common.add_argument('--schema', help='Esquema JSON de tipos y niveles')
    common.add_argument('--seed', type=int, default=None,
                        help='Semilla única de la ejecución (por defecto SELVAR_SEED)')
    common.add_argument('--threads', type=int, default=None,
                        help='Hilos de trabajo (por defecto SELVAR_THREADS)')
    common.add_argument('--log-dir', default=None, help='Directorio de logs (por defecto LOG_DIR)')
    common.add_argument('-v', '--verbose', action='store_true', help='Log detallado en consola')

    forest_opts = SelvarArgumentParser(add_help=False)
    forest_opts.add_argument('--criterion', default=None, choices=['aic', 'bic'])
    forest_opts.add_argument('--variance', default=None,
                             choices=['hom', 'het', 'homogeneous', 'heterogeneous'])
    forest_opts.add_argument('--admissibility', default=None, choices=['bfs', 'component'])

    selection_opts = SelvarArgumentParser(add_help=False)
    selection_opts.add_argument('--target', required=True, help='Variable objetivo')
    selection_opts.add_argument('--method', default=None, choices=['ec', 'r2'])
    selection_opts.add_argument('--alpha', type=float, default=None)
    selection_opts.add_argument('--folds', type=int, default=None, help='Folds de la CV lineal')
    selection_opts.add_argument('--density-folds', type=int, default=None,
                                help='Folds de la CV de anchos (0 = leave-one-out)')
    selection_opts.add_argument('--permutations', type=int, default=None)
    selection_opts.add_argument('--stepwise', action='store_true', default=None,
                                help='Poda por t-test paso a paso')
    selection_opts.add_argument('--tie-tolerance', type=float, default=None)

    parser = SelvarArgumentParser(
        prog='selvar',
        description="Selección de variables por path-steps sobre bosques AIC/BIC",
    )
    parser.add_argument('--version', action='version', version=f"selvar {__version__}")
    subparsers = parser.add_subparsers(dest='command', help='Comandos disponibles')

    forest_parser = subparsers.add_parser('forest', parents=[common, forest_opts],
                                          help='Construir el bosque AIC/BIC')
    forest_parser.add_argument('--out-dot', required=True)
    forest_parser.add_argument('--out-json', required=True)
    forest_parser.add_argument('--out-edges', help='CSV de puntuaciones por pares')
    forest_parser.set_defaults(func=cmd_forest)

    select_parser = subparsers.add_parser('select', parents=[common, forest_opts, selection_opts],
                                          help='Seleccionar predictores de un objetivo')
    select_parser.add_argument('--out', required=True, help='Informe JSON')
    select_parser.set_defaults(func=cmd_select)

    compare_parser = subparsers.add_parser('compare', parents=[common, forest_opts, selection_opts],
                                           help='Comparar con elastic net o varrank')
    compare_parser.add_argument('--baseline', default='enet', choices=['enet', 'varrank'])
    compare_parser.add_argument('--repeats', type=int, default=100)
    compare_parser.add_argument('--scheme', default='mid', choices=['mid', 'miq'])
    compare_parser.add_argument('--m', type=int, default=None, help='Variables a ordenar (varrank)')
    compare_parser.add_argument('--out', required=True, help='CSV de la comparación')
    compare_parser.set_defaults(func=cmd_compare, method='r2')

    density_parser = subparsers.add_parser('density', parents=[common],
                                           help='Curvas de densidad marginal y condicional')
    density_parser.add_argument('--target', required=True)
    density_parser.add_argument('--vars', required=True, help='Condicionantes separados por comas')
    density_parser.add_argument('--points', type=int, default=512)
    density_parser.add_argument('--density-folds', type=int, default=None,
                                help='Folds de la CV de anchos (0 = leave-one-out)')
    density_parser.add_argument('--out', required=True)
    density_parser.set_defaults(func=cmd_density)

    describe_parser = subparsers.add_parser('describe', parents=[common],
                                            help='Mostrar el resumen de la tabla')
    describe_parser.set_defaults(func=cmd_describe)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    try:
        app = AppConfig.from_env()
    except SelvarError as e:
        print(f"❌ Configuración inválida: {e}")
        return EXIT_ERROR
    _apply_env_defaults(args, app)

    setup_logging(args.log_dir, logging.DEBUG if args.verbose else logging.INFO)
    logger = get_logger(__name__)

    try:
        return args.func(args)
    except SelvarError as e:
        logger.error(f"Error en '{args.command}': {e}")
        print(f"❌ {e}")
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"Error de E/S en '{args.command}': {e}")
        print(f"❌ Error de E/S: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
