"""
Excepciones del banco de verificación
"""

from typing import Any, Optional, Tuple


class WorkbenchError(Exception):
    """Error base: toda falla de entrada o de capacidad hereda de aquí"""


class InputError(WorkbenchError, ValueError):
    """Tablas mal formadas, archivos inválidos o espacios de puntos incompatibles"""


class CapabilityError(WorkbenchError):
    """El contexto no ofrece una operación que el término o la ley necesita"""

    def __init__(self, operation: str, message: Optional[str] = None):
        self.operation = operation
        super().__init__(message or f"Operación no disponible en el contexto: {operation}")


class TermSyntaxError(InputError):
    """Error de sintaxis en un término, con la posición del fallo"""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (posición {position})")


class SortError(InputError):
    """Un término de tipo incorrecto ocupa una posición de test"""

    def __init__(self, message: str, subterm: Any = None):
        self.subterm = subterm
        super().__init__(message)


class CongruenceError(WorkbenchError):
    """La partición no es una congruencia o mezcla tests con no-tests"""

    def __init__(self, message: str, witness: Optional[Tuple[Any, ...]] = None):
        self.witness = witness
        super().__init__(message)


class FilterError(WorkbenchError):
    """Petición sin sentido sobre filtros (a ≤ b, 𝗁 ya pertenece al filtro, etc.)"""


class ClosureBoundError(WorkbenchError):
    """La clausura superó la cota fijada"""

    def __init__(self, message: str, frontier: int):
        self.frontier = frontier
        super().__init__(f"{message} (frontera: {frontier})")


class InvariantViolation(WorkbenchError):
    """Un invariante interno se rompió: la entrada está corrupta"""
