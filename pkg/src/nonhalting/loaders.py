"""
Lectura de documentos JSON: álgebras, modelos concretos y particiones
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

from .algebra import FiniteAlgebra, Partition, from_concrete
from .errors import InputError
from .pfun import ConcreteModel

logger = logging.getLogger(__name__)

Document = Union[FiniteAlgebra, ConcreteModel, Partition]


def read_json(source: Union[str, Path]) -> Dict[str, Any]:
    """Lee un archivo JSON, o stdin si la ruta es "-"."""
    try:
        if str(source) == "-":
            text = sys.stdin.read()
        else:
            with open(source, 'r', encoding='utf-8') as f:
                text = f.read()
    except OSError as e:
        raise InputError(f"No se pudo leer {source}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"JSON inválido en {source}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{source} no contiene un objeto JSON")
    return data


def document_kind(data: Dict[str, Any]) -> str:
    """model, algebra o partition según las claves presentes"""
    if "points" in data:
        return "model"
    if "size" in data and "mult" in data:
        return "algebra"
    if "blocks" in data:
        return "partition"
    raise InputError(f"Documento no reconocido; claves: {sorted(data)}")


def parse_document(data: Dict[str, Any]) -> Document:
    kind = document_kind(data)
    if kind == "model":
        return ConcreteModel.from_dict(data)
    if kind == "algebra":
        return FiniteAlgebra.from_dict(data)
    return Partition.from_dict(data)


def load(source: Union[str, Path]) -> Document:
    document = parse_document(read_json(source))
    logger.debug(f"{source}: {type(document).__name__}")
    return document


def load_algebra(source: Union[str, Path], close_under: Optional[Sequence[str]] = None,
                 bound: int = 4096) -> FiniteAlgebra:
    """
    Álgebra tabulada desde un archivo de álgebra o de modelo

    Un modelo concreto se cierra con from_model bajo sus operaciones
    declaradas (o `close_under`).
    """
    document = load(source)
    if isinstance(document, FiniteAlgebra):
        return document
    if isinstance(document, ConcreteModel):
        return from_concrete(document, close_under, bound)
    raise InputError(f"{source} es una partición, se esperaba un álgebra o un modelo")


def load_model(source: Union[str, Path]) -> ConcreteModel:
    document = load(source)
    if not isinstance(document, ConcreteModel):
        raise InputError(f"{source} no es un modelo concreto")
    return document


def load_partition(source: Union[str, Path]) -> Partition:
    document = load(source)
    if not isinstance(document, Partition):
        raise InputError(f"{source} no es una partición")
    return document
