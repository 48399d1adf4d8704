"""
Exportadores para diferentes formatos de salida
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import pandas as pd

from .laws import CheckReport, EquivalenceReport


def _plain(obj: Any) -> Any:
    """Objeto del dominio → estructura serializable (vía to_dict si existe)"""
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, (list, tuple)):
        return [_plain(o) for o in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return obj


class JSONExporter:
    """Exportador a formato JSON"""

    def __init__(self, indent: int = 2, ensure_ascii: bool = False):
        self.indent = indent
        self.ensure_ascii = ensure_ascii
        self.logger = logging.getLogger(__name__)

    def dumps(self, obj: Any) -> str:
        return json.dumps(_plain(obj), indent=self.indent, ensure_ascii=self.ensure_ascii) + "\n"

    def export(self, obj: Any, output_path: Optional[Path] = None) -> None:
        """
        Escribe un objeto del dominio como JSON

        Args:
            obj: Álgebra, modelo, reporte o lista de ellos
            output_path: Archivo de salida; None escribe en stdout
        """
        text = self.dumps(obj)
        if output_path is None:
            sys.stdout.write(text)
            return
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, 'w', encoding='utf-8') as f:
                f.write(text)
            self.logger.info(f"JSON exportado a: {output_path}")
        except Exception as e:
            self.logger.error(f"Error exportando JSON a {output_path}: {e}")
            raise


class CSVExporter:
    """Exportador a formato CSV"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def check_frame(self, report: CheckReport) -> pd.DataFrame:
        """Una fila por ley verificada"""
        rows = []
        for r in report.results:
            rows.append({
                "suite": report.suite,
                "context": report.context,
                "law": r.law,
                "status": r.status,
                "mode": r.mode.kind,
                "seed": r.mode.seed,
                "examined": r.examined,
                "failed": r.failed or "",
                "witness": ";".join(f"{k}={v}" for k, v in (r.witness_labels or {}).items()),
                "note": r.note,
            })
        return pd.DataFrame(rows, columns=["suite", "context", "law", "status", "mode", "seed",
                                           "examined", "failed", "witness", "note"])

    def export_check_report(self, report: CheckReport, output_path: Path) -> None:
        """
        Exporta el resultado de una batería de leyes a CSV

        Args:
            report: Reporte del verificador
            output_path: Ruta del archivo de salida
        """
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            self.check_frame(report).to_csv(output_path, index=False, encoding='utf-8')
            self.logger.info(f"Reporte de leyes exportado a CSV: {output_path}")
        except Exception as e:
            self.logger.error(f"Error exportando reporte a CSV: {e}")
            raise

    def export_rows(self, rows: Sequence[Dict[str, Any]], output_path: Path) -> None:
        """Exporta filas homogéneas (p. ej. las trazas de B*)"""
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            pd.DataFrame(list(rows)).to_csv(output_path, index=False, encoding='utf-8')
            self.logger.info(f"{len(rows)} filas exportadas a CSV: {output_path}")
        except Exception as e:
            self.logger.error(f"Error exportando filas a CSV: {e}")
            raise


class ReportExporter:
    """Reportes legibles para la consola"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def render_check(self, report: CheckReport) -> str:
        lines = [
            f"=== SUITE {report.suite} sobre {report.context} ===",
            f"Modo: {report.mode}",
        ]
        for r in report.results:
            line = f"  [{r.status.upper():7}] {r.law} ({r.examined} asignaciones)"
            if r.witness_labels:
                binding = ", ".join(f"{k}={v}" for k, v in r.witness_labels.items())
                line += f"  testigo: {binding}"
                if r.failed:
                    line += f"  falla: {r.failed}"
            if r.note:
                line += f"  ({r.note})"
            lines.append(line)
        failures = len(report.failures())
        lines.append(f"Resultado: {'OK' if report.all_passed else f'{failures} leyes fallan'}")
        return "\n".join(lines) + "\n"

    def render_equivalences(self, report: EquivalenceReport) -> str:
        lines = ["=== EQUIVALENCIAS ==="]
        for e in report.entries:
            lines.append(f"  {e.context}: {e.proposition} → {e.status}"
                         + (f" ({e.note})" if e.note else ""))
        lines.append(f"Desacuerdos: {len(report.disagreements)}")
        return "\n".join(lines) + "\n"

    def render_summary(self, title: str, data: Dict[str, Any]) -> str:
        lines = [f"=== {title} ==="]
        for key, value in data.items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines) + "\n"

    def write(self, text: str, output_path: Optional[Path] = None) -> None:
        if output_path is None:
            sys.stdout.write(text)
            return
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, 'w', encoding='utf-8') as f:
                f.write(text)
            self.logger.info(f"Reporte exportado a: {output_path}")
        except Exception as e:
            self.logger.error(f"Error exportando reporte: {e}")
            raise
