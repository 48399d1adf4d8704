"""
Funciones auxiliares del banco de verificación
"""

import logging
import sys
from datetime import datetime
from typing import Any, Dict

from config import LOGGING_CONFIG


def setup_logging(debug: bool = False):
    """
    Configura el sistema de logging

    Los mensajes van a stderr y al archivo de log; stdout queda libre para
    los reportes y los documentos JSON.

    Args:
        debug (bool): Activa el nivel DEBUG
    """
    level = logging.DEBUG if debug else getattr(logging, LOGGING_CONFIG["level"])
    logging.basicConfig(
        level=level,
        format=LOGGING_CONFIG["format"],
        handlers=[
            logging.FileHandler(LOGGING_CONFIG["file"], encoding='utf-8'),
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )
    return logging.getLogger(__name__)


def format_progress(current, total, label=""):
    """
    Formatea el progreso de una verificación

    Args:
        current (int): Número actual
        total (int): Total de elementos
        label (str): Nombre de lo que se procesa

    Returns:
        str: Cadena formateada del progreso
    """
    percentage = (current / total) * 100 if total > 0 else 0
    return f"[{current}/{total}] ({percentage:.1f}%) {label}"


def create_summary_report(title: str, passed: int, failed: int, details: Dict[str, Any]) -> str:
    """
    Crea un reporte resumen de la ejecución

    Args:
        title (str): Nombre de la corrida
        passed (int): Verificaciones exitosas
        failed (int): Verificaciones fallidas
        details (dict): Pares clave/valor adicionales

    Returns:
        str: Reporte formateado
    """
    total = passed + failed
    success_rate = (passed / total * 100) if total > 0 else 0

    report = f"""
=== REPORTE: {title} ===
Fecha: {datetime.now().strftime("%Y-%m-%d %H:%M:%S")}
Verificaciones exitosas: {passed}
Verificaciones fallidas: {failed}
Tasa de éxito: {success_rate:.1f}%
"""
    for key, value in details.items():
        report += f"  - {key}: {value}\n"
    return report
