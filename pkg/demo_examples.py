#!/usr/bin/env python3
"""
Demo del banco de verificación con los modelos incorporados

Recorre los dos modelos de ejemplo, verifica sus leyes antes y después del
cociente y muestra la representación por filtros y el conjunto B* de un
modelo completo.
"""

import sys
from pathlib import Path

# Agregar src al path para importar nuestros módulos
sys.path.insert(0, str(Path(__file__).parent / "src"))

from nonhalting import (TableContext, build_representation, check, from_concrete, full_model, generate_bstar,
                        paper_example, quotient, verify_representation)
from nonhalting.fixtures import builtin_partition, diagnose
from utils import create_summary_report, format_progress

DEMOS = [
    ("quasiv", "restriction-with-tests"),
    ("disagreeable", "disagreeable"),
]


def demo_quotient(name, suite, stats):
    """Verifica un modelo incorporado y su cociente"""
    print(f"\n=== DEMO: {name} ===")
    model = paper_example(name)
    algebra = from_concrete(model)
    d = diagnose(model, algebra)
    print(f"📋 Listados: {d.listed}  distintos: {d.distinct}  clausura: {d.closure}")
    if d.added:
        print(f"  Agregados por la clausura: {', '.join(d.added)}")
    for a, b in d.duplicates:
        print(f"  Duplicado: {a} = {b}")

    before = check(TableContext(algebra, name), suite)
    print(f"✅ {suite} sobre {name}: {len(before.results) - len(before.failures())}/{len(before.results)}")

    reduced = quotient(algebra, builtin_partition(model, algebra))
    after = check(TableContext(reduced, f"{name}/~"), suite, hints=model.witnesses)
    print(f"📉 Cociente: {reduced.size} elementos")
    for failure in after.failures():
        print(f"  ❌ {failure.law}: {failure.failed}")
        print(f"     Testigo: {failure.witness_labels}")

    stats["passed"] += len(after.results) - len(after.failures())
    stats["failed"] += len(after.failures())


def demo_representation(stats):
    """Representación por filtros de un modelo completo"""
    print("\n=== DEMO: Representación y B* ===")
    A = from_concrete(full_model(2), ("compose", "D", "star", "neq", "eite", "wc", "while"))
    report = verify_representation(A, build_representation(A))
    print(f"🔍 Representación de {A.size} elementos fiel: {report.is_faithful}")
    predicates = generate_bstar(A)
    print(f"🧮 B* tiene {len(predicates)} predicados")
    stats["passed" if report.is_faithful else "failed"] += 1


if __name__ == "__main__":
    print("🎯 BANCO DE VERIFICACIÓN - DEMO")
    print("=" * 40)

    stats = {"passed": 0, "failed": 0}
    try:
        for i, (name, suite) in enumerate(DEMOS, 1):
            print(format_progress(i, len(DEMOS), name))
            demo_quotient(name, suite, stats)
        demo_representation(stats)

        print(create_summary_report("demo", stats["passed"], stats["failed"],
                                    {"modelos": ", ".join(name for name, _ in DEMOS)}))
        print("💡 Para verificar otros modelos, ejecuta:")
        print("   python src/workbench.py --help")

    except KeyboardInterrupt:
        print("\n🛑 Demo interrumpido por el usuario")
    except Exception as e:
        print(f"\n❌ Error en el demo: {e}")
