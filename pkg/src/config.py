"""
Configuraciones para el banco de verificación de programas que no terminan
"""

from pathlib import Path

# Rutas del proyecto
PROJECT_ROOT = Path(__file__).parent.parent
LOGS_DIR = PROJECT_ROOT / "logs"

# Verificación de leyes
CHECK_CONFIG = {
    "default_suite": "restriction-with-tests",
    "default_samples": 1_000_000,   # sobre esto, muestreo en vez de exhaustivo
    "default_seed": 0,
    "failure_limit": 20,       # fallas registradas por chequeo
}

# Modelos concretos y clausura
MODEL_CONFIG = {
    "max_full_model_points": 5,
    "closure_bound": 4096,     # elementos
    "corpus_close_under": ("compose", "D", "star", "neq", "eite", "wc"),   # corpus de equivalences
}

# Filtros y representación
FILTER_CONFIG = {
    "principal_check_max_domain": 12,
}

# Predicados generalizados
CALG_CONFIG = {
    "bstar_bound": 20_000,
    "max_pairs": 250_000,
}

# Exportación
EXPORT_CONFIG = {
    "indent": 2,
    "ensure_ascii": False,
}

# Configuración de logging
LOGGING_CONFIG = {
    "level": "INFO",
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "file": LOGS_DIR / "workbench.log"
}

# Crear directorio de logs
LOGS_DIR.mkdir(exist_ok=True)
