#!/usr/bin/env python3
"""
Banco de verificación de leyes para el álgebra de programas que no terminan

Los documentos (modelos, álgebras, particiones) se leen de archivos o de
stdin y se escriben en stdout, así que los subcomandos se encadenan:

Uso:
    python src/workbench.py paper-example quasiv | python src/workbench.py check --suite twisted-agreeable --exhaustive
    python src/workbench.py paper-example quasiv | python src/workbench.py quotient --partition builtin
    python src/workbench.py model --full 2 | python src/workbench.py check --suite weak-comparison
    python src/workbench.py eval "D(s;a)" --model modelo.json --bind s=s --bind a=beta

Códigos de salida: 0 todo pasa, 1 alguna ley o verificación falla,
2 error de entrada o de capacidad.
"""

import argparse
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from config import CALG_CONFIG, CHECK_CONFIG, EXPORT_CONFIG, FILTER_CONFIG, MODEL_CONFIG
from nonhalting import CSVExporter, JSONExporter, ReportExporter, WorkbenchError
from nonhalting.algebra import FiniteAlgebra, from_concrete, quotient, check_congruence, validate
from nonhalting.calg import BStarGenerator, export_bstar, three_valued_check
from nonhalting.contexts import TableContext
from nonhalting.errors import InputError
from nonhalting.filters import (build_representation, check_maxagree_lemma, check_principal_filters,
                                check_star_lemma, verify_representation, while_unroll)
from nonhalting.fixtures import builtin_partition, diagnose, paper_example, random_corpus, EXAMPLES
from nonhalting.laws import CheckMode, LawChecker, check_equivalences, get_suite, largest_agreement_check
from nonhalting.loaders import Document, load, load_algebra, load_partition
from nonhalting.pfun import ConcreteModel, full_model
from nonhalting.terms import TermParser, evaluate
from utils import format_progress, setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Verificación de leyes sobre modelos de programas que no terminan'
    )
    parser.add_argument(
        '--debug',
        action='store_true',
        help='Activar modo debug con logging detallado'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def add_source(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument('--algebra', type=Path, help='Archivo de álgebra tabulada')
        group.add_argument('--model', type=Path, help='Archivo de modelo concreto')
        p.add_argument('--close-under', nargs='+', default=None,
                       help='Operaciones de clausura para modelos (default: las del archivo)')

    def add_mode(p: argparse.ArgumentParser) -> None:
        p.add_argument('--suite', default=CHECK_CONFIG["default_suite"],
                       help=f'Batería de leyes (default: {CHECK_CONFIG["default_suite"]})')
        p.add_argument('--exhaustive', action='store_true', help='Recorrer todas las asignaciones')
        p.add_argument('--samples', type=int, default=None, help='Asignaciones muestreadas')
        p.add_argument('--seed', type=int, default=CHECK_CONFIG["default_seed"],
                       help=f'Semilla del muestreo (default: {CHECK_CONFIG["default_seed"]})')

    def add_output(p: argparse.ArgumentParser) -> None:
        p.add_argument('--out', type=Path, default=None, help='Archivo de salida (default: stdout)')
        p.add_argument('--json', action='store_true', help='Reporte en JSON')

    p = sub.add_parser('check', help='Verificar una batería de leyes')
    add_source(p)
    add_mode(p)
    add_output(p)
    p.add_argument('--csv', type=Path, default=None, help='Exportar además una fila por ley a CSV')

    p = sub.add_parser('represent', help='Construir y verificar la representación por filtros')
    add_source(p)
    add_output(p)
    p.add_argument('--lemmas', action='store_true', help='Verificar también los lemas sobre filtros')

    p = sub.add_parser('quotient', help='Cociente por una partición y nueva verificación')
    add_source(p)
    add_mode(p)
    add_output(p)
    p.add_argument('--partition', required=True, help='Archivo de partición o "builtin"')
    p.add_argument('--save-quotient', type=Path, default=None, help='Guardar el álgebra cociente')

    p = sub.add_parser('model', help='Emitir el álgebra de todas las funciones parciales')
    p.add_argument('--full', type=int, required=True, metavar='N', help='Número de puntos')
    p.add_argument('--close-under', nargs='+', default=None, help='Operaciones tabuladas (default: todas)')
    p.add_argument('--as-model', action='store_true', help='Emitir el modelo concreto sin tabular')
    p.add_argument('--out', type=Path, default=None, help='Archivo de salida (default: stdout)')

    p = sub.add_parser('eval', help='Evaluar un término')
    p.add_argument('term', help='Término, p. ej. "ite(s,a,t,u)"')
    add_source(p)
    p.add_argument('--bind', action='append', default=[], metavar='VAR=ELEM',
                   help='Valor de una variable (nombre o índice de elemento)')
    add_output(p)

    p = sub.add_parser('cstar', help='Generar B* y verificar la semántica trivaluada')
    add_source(p)
    add_output(p)
    p.add_argument('--bound', type=int, default=CALG_CONFIG["bstar_bound"], help='Cota de predicados')
    p.add_argument('--max-pairs', type=int, default=CALG_CONFIG["max_pairs"],
                   help='Pares de predicados verificados')
    p.add_argument('--csv', type=Path, default=None, help='Exportar las trazas a CSV')

    p = sub.add_parser('while-unroll', help='Desplegar un while-do en if-then-else anidados')
    add_source(p)
    add_output(p)
    p.add_argument('--t', required=True, dest='guard', help='Elemento t')
    p.add_argument('--alpha', required=True, help='Test α')
    p.add_argument('--s', required=True, dest='body', help='Cuerpo s')

    p = sub.add_parser('paper-example', help='Emitir un modelo incorporado')
    p.add_argument('name', choices=sorted(EXAMPLES))
    p.add_argument('--diagnostics', action='store_true', help='Comparar la lista con su clausura')
    p.add_argument('--out', type=Path, default=None, help='Archivo de salida (default: stdout)')

    p = sub.add_parser('equivalences', help='Comparar leyes equivalentes sobre un corpus')
    add_source(p)
    add_output(p)
    p.add_argument('--random', type=int, default=0, metavar='N', help='Agregar N álgebras aleatorias')
    p.add_argument('--seed', type=int, default=CHECK_CONFIG["default_seed"], help='Semilla del corpus')
    return parser


def source_path(args: argparse.Namespace) -> str:
    return str(args.algebra or args.model or "-")


def build_mode(args: argparse.Namespace) -> CheckMode:
    if args.exhaustive:
        return CheckMode.exhaustive()
    if args.samples:
        return CheckMode.sampled(args.samples, args.seed)
    return CheckMode.auto(CHECK_CONFIG["default_samples"], args.seed)


def load_source(args: argparse.Namespace) -> Tuple[Document, FiniteAlgebra]:
    """Documento leído y su álgebra (cerrando el modelo si hace falta)"""
    document = load(source_path(args))
    if isinstance(document, ConcreteModel):
        return document, from_concrete(document, args.close_under, MODEL_CONFIG["closure_bound"])
    if isinstance(document, FiniteAlgebra):
        return document, document
    raise InputError(f"{source_path(args)} es una partición, se esperaba un álgebra o un modelo")


def witness_hints(document: Document) -> Dict[str, Dict[str, str]]:
    if isinstance(document, ConcreteModel) and document.witnesses:
        return document.witnesses
    return {}


def emit_report(args: argparse.Namespace, report, text: str) -> None:
    if args.json:
        JSONExporter(**EXPORT_CONFIG).export(report, args.out)
    else:
        ReportExporter().write(text, args.out)


def report_status(report) -> int:
    if report.failures():
        return 1
    return 2 if report.has_errors else 0


def cmd_check(args: argparse.Namespace) -> int:
    document, algebra = load_source(args)
    ctx = TableContext(algebra, source_path(args))
    report = LawChecker(ctx, witness_hints(document)).check(get_suite(args.suite), build_mode(args))
    emit_report(args, report, ReportExporter().render_check(report))
    if args.csv:
        CSVExporter().export_check_report(report, args.csv)
    return report_status(report)


def cmd_represent(args: argparse.Namespace) -> int:
    algebra = load_algebra(source_path(args), args.close_under, MODEL_CONFIG["closure_bound"])
    structure = validate(algebra)
    if not structure.is_valid:
        raise InputError(f"El álgebra no es un monoide con tests: {structure.violations[0].invariant}")
    rep = build_representation(algebra)
    verification = verify_representation(algebra, rep, CHECK_CONFIG["failure_limit"])
    result = {"representation": rep.to_dict(), "verification": verification.to_dict()}
    lemmas = []
    if args.lemmas:
        lemmas.append(check_principal_filters(algebra, FILTER_CONFIG["principal_check_max_domain"]))
        if algebra.star is not None:
            lemmas += [check_star_lemma(algebra), check_maxagree_lemma(algebra),
                       largest_agreement_check(TableContext(algebra))]
        result["lemmas"] = [lemma.to_dict() for lemma in lemmas]
    summary = {
        "puntos": rep.space.size,
        "componentes": len(rep.components),
        "fiel": verification.is_faithful,
        "chequeos": ", ".join(verification.checked),
        "fallas": ", ".join(verification.failed_checks()) or "ninguna",
    }
    for lemma in lemmas:
        summary[lemma.name] = "OK" if lemma.holds else f"{len(lemma.violations)} violaciones"
    if args.json:
        JSONExporter(**EXPORT_CONFIG).export(result, args.out)
    else:
        ReportExporter().write(ReportExporter().render_summary("REPRESENTACIÓN", summary), args.out)
    return 0 if verification.is_faithful and all(lemma.holds for lemma in lemmas) else 1


def cmd_quotient(args: argparse.Namespace) -> int:
    document, algebra = load_source(args)

    if args.partition == "builtin":
        if not isinstance(document, ConcreteModel):
            raise InputError("--partition builtin sólo aplica a modelos con partición incorporada")
        partition = builtin_partition(document, algebra)
    else:
        partition = load_partition(args.partition)

    congruence = check_congruence(algebra, partition)
    if not congruence.is_congruence:
        logger.error(f"La partición no es congruencia: {congruence.operation} en {congruence.witness}")
        emit_report(args, congruence, ReportExporter().render_summary("CONGRUENCIA", congruence.to_dict()))
        return 1
    logger.info(f"Partición verificada como congruencia ({len(partition.blocks)} bloques)")

    result = quotient(algebra, partition)
    if args.save_quotient:
        JSONExporter(**EXPORT_CONFIG).export(result, args.save_quotient)
    report = LawChecker(TableContext(result, "quotient"), witness_hints(document)).check(get_suite(args.suite), build_mode(args))
    emit_report(args, report, ReportExporter().render_check(report))
    return report_status(report)


def cmd_model(args: argparse.Namespace) -> int:
    model = full_model(args.full, MODEL_CONFIG["max_full_model_points"])
    if args.as_model:
        JSONExporter(**EXPORT_CONFIG).export(model, args.out)
        return 0
    algebra = from_concrete(model, args.close_under, MODEL_CONFIG["closure_bound"])
    JSONExporter(**EXPORT_CONFIG).export(algebra, args.out)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    algebra = load_algebra(source_path(args), args.close_under, MODEL_CONFIG["closure_bound"])
    ctx = TableContext(algebra, source_path(args))
    assignment = {}
    for binding in args.bind:
        name, sep, value = binding.partition("=")
        if not sep or not name:
            raise InputError(f"Asignación mal formada: {binding!r} (se espera VAR=ELEM)")
        assignment[name.strip()] = algebra.element_named(value.strip())
    sorts = {name: "test" if algebra.is_test(x) else "elem" for name, x in assignment.items()}
    term = TermParser(sorts).parse(args.term)
    value = evaluate(term, assignment, ctx)
    result = {"term": str(term), "value": value, "label": algebra.label(value)}
    if args.json:
        JSONExporter(**EXPORT_CONFIG).export(result, args.out)
    else:
        ReportExporter().write(f"{term} = {algebra.label(value)}\n", args.out)
    return 0


def cmd_cstar(args: argparse.Namespace) -> int:
    algebra = load_algebra(source_path(args), args.close_under, MODEL_CONFIG["closure_bound"])
    generator = BStarGenerator(algebra)
    predicates = generator.generate(args.bound)
    injective = generator.embedding_is_injective()
    summary = {"predicados": len(predicates), "B inyectivo": injective}
    report = None
    if algebra.realization is not None:
        report = three_valued_check(algebra, predicates, args.max_pairs)
        summary["trivaluada"] = "OK" if report.holds else f"{len(report.violations)} violaciones"
    else:
        logger.warning("Álgebra sin realización concreta: se omite la semántica trivaluada")
    rows = export_bstar(algebra, predicates)
    if args.csv:
        CSVExporter().export_rows(rows, args.csv)
    if args.json:
        JSONExporter(**EXPORT_CONFIG).export(
            {"predicates": rows, "embedding_injective": injective,
             "three_valued": report.to_dict() if report else None}, args.out)
    else:
        ReportExporter().write(ReportExporter().render_summary("B*", summary), args.out)
    return 0 if injective and (report is None or report.holds) else 1


def cmd_while_unroll(args: argparse.Namespace) -> int:
    algebra = load_algebra(source_path(args), args.close_under, MODEL_CONFIG["closure_bound"])
    ctx = TableContext(algebra, source_path(args))
    t, alpha, s = (algebra.element_named(v) for v in (args.guard, args.alpha, args.body))
    result = while_unroll(ctx, t, alpha, s)
    data = {
        "bound": result.bound,
        "trace": [algebra.label(v) for v in result.trace],
        "value": algebra.label(result.value),
        "while": algebra.label(result.while_value) if result.while_value is not None else None,
        "matches_while": result.matches_while,
        "powers_hold": result.powers_hold,
    }
    if args.json:
        JSONExporter(**EXPORT_CONFIG).export(data, args.out)
    else:
        ReportExporter().write(ReportExporter().render_summary("WHILE-DO DESPLEGADO", data), args.out)
    return 0 if result.matches_while is not False and result.powers_hold else 1


def cmd_paper_example(args: argparse.Namespace) -> int:
    model = paper_example(args.name)
    if args.diagnostics:
        diagnostics = diagnose(model)
        logger.info(f"{args.name}: {diagnostics.listed} listados, {diagnostics.distinct} distintos, "
                    f"{diagnostics.closure} en la clausura")
    JSONExporter(**EXPORT_CONFIG).export(model, args.out)
    return 0


def cmd_equivalences(args: argparse.Namespace) -> int:
    corpus = []
    if args.algebra or args.model:
        algebra = load_algebra(source_path(args), args.close_under, MODEL_CONFIG["closure_bound"])
        corpus.append((source_path(args), TableContext(algebra, source_path(args))))
    generated = random_corpus(args.random, args.seed, close_under=MODEL_CONFIG["corpus_close_under"])
    for i, (name, algebra) in enumerate(generated, 1):
        logger.info(format_progress(i, len(generated), f"{name} ({algebra.size} elementos)"))
        corpus.append((name, TableContext(algebra, name)))
    if not corpus:
        raise InputError("El corpus está vacío: use --algebra, --model o --random")
    report = check_equivalences(corpus)
    emit_report(args, report, ReportExporter().render_equivalences(report))
    return 1 if report.disagreements else 0


COMMANDS = {
    'check': cmd_check,
    'represent': cmd_represent,
    'quotient': cmd_quotient,
    'model': cmd_model,
    'eval': cmd_eval,
    'cstar': cmd_cstar,
    'while-unroll': cmd_while_unroll,
    'paper-example': cmd_paper_example,
    'equivalences': cmd_equivalences,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal"""
    args = build_parser().parse_args(argv)
    setup_logging(args.debug)

    try:
        return COMMANDS[args.command](args)
    except WorkbenchError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2
    except Exception as e:
        logger.error(f"Error inesperado en {args.command}: {e}", exc_info=args.debug)
        return 2


if __name__ == "__main__":
    exit(main())
