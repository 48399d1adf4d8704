"""
Modelos incorporados: los dos sistemas de funciones parciales con cociente
no representable, el álgebra de tres elementos y un corpus aleatorio
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import FiniteAlgebra, Partition, from_concrete, from_model
from .errors import ClosureBoundError, InputError
from .pfun import ConcreteModel, PartialMap, PointSet, TestSet

logger = logging.getLogger(__name__)


def _restriction(size: int, points: Sequence[int]) -> PartialMap:
    return TestSet(PointSet(size), points)


def _shift(size: int, pairs: Dict[int, int]) -> PartialMap:
    return PartialMap.from_entries([pairs.get(x) for x in range(size)], size)


def quasiv_model() -> ConcreteModel:
    """
    Sistema de funciones parciales sobre {0..7} con tests ∅, β, β′, id

    Es un monoide agradable torcido con tests; el cociente que identifica
    ef con f y efs con fs (= sβ′) falla la ley de dominio con tests.
    """
    n = 8
    maps = {
        "s": _shift(n, {x: x + 4 for x in range(4)}),
        "Ds": _restriction(n, range(4)),
        "sbeta": _shift(n, {0: 4, 1: 5}),
        "sbeta'": _shift(n, {2: 6, 3: 7}),
        "e": _restriction(n, [0, 1, 2]),
        "g": _restriction(n, [0, 1]),
        "f": _restriction(n, [2, 3]),
        "ef": _restriction(n, [2]),
        "efs": _shift(n, {2: 6}),
    }
    tests = {
        "beta": TestSet(PointSet(n), range(6)),
        "beta'": TestSet(PointSet(n), [6, 7]),
    }
    return ConcreteModel(
        space=PointSet(n), maps=maps, tests=tests,
        operations=("compose", "D", "star"),
        partition=[["ef", "f"], ["efs", "sbeta'"]],
        fixture="quasiv",
        witnesses={"DT2": {"s": "s", "a": "beta", "t": "e", "u": "1"}},
    )


def disagreeable_model() -> ConcreteModel:
    """
    Sistema de funciones parciales sobre {0..9} con tests ∅ e id

    Es un monoide desacordable con tests; el cociente que identifica g con
    eg, gs con egs y gt con egt falla la implicación de desacuerdo.
    """
    n = 10
    s = {x: x + 5 for x in range(5)}
    t = {0: 5, 1: 7, 2: 6, 3: 9, 4: 8}

    def restrict(f: Dict[int, int], points: Sequence[int]) -> PartialMap:
        return _shift(n, {x: f[x] for x in points})

    maps = {
        "s": _shift(n, s),
        "t": _shift(n, t),
        "s_and_t": _shift(n, {0: 5}),
        "Ds": _restriction(n, range(5)),
        "f": _restriction(n, [0]),
        "g": _restriction(n, [1, 2, 3, 4]),
        "e": _restriction(n, [0, 1, 2]),
        "eg": _restriction(n, [1, 2]),
        "es": restrict(s, [0, 1, 2]),
        "et": restrict(t, [0, 1, 2]),
        "fs": restrict(s, [0]),
        "gs": restrict(s, [1, 2, 3, 4]),
        "gt": restrict(t, [1, 2, 3, 4]),
        "egs": restrict(s, [1, 2]),
        "egt": restrict(t, [1, 2]),
    }
    return ConcreteModel(
        space=PointSet(n), maps=maps, tests={},
        operations=("compose", "D", "star", "neq"),
        partition=[["g", "eg"], ["gs", "egs"], ["gt", "egt"]],
        fixture="disagreeable",
        witnesses={"inimp": {"s": "s", "t": "t", "e": "e"}},
    )


EXAMPLES: Dict[str, Callable[[], ConcreteModel]] = {
    "quasiv": quasiv_model,
    "disagreeable": disagreeable_model,
}


def paper_example(name: str) -> ConcreteModel:
    """Modelo incorporado por nombre"""
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise InputError(f"Ejemplo desconocido: {name!r} (disponibles: {sorted(EXAMPLES)})") from None


def fixtures() -> Dict[str, ConcreteModel]:
    return {name: build() for name, build in EXAMPLES.items()}


def builtin_partition(model: ConcreteModel, algebra: FiniteAlgebra) -> Partition:
    """Traduce los bloques de nombres del modelo a índices del álgebra"""
    if not model.partition:
        raise InputError(f"El modelo {model.fixture or ''} no trae partición incorporada")
    groups = [[algebra.element_named(name) for name in block] for block in model.partition]
    return Partition.from_pairs(algebra.size, groups)


def three_element_algebra() -> FiniteAlgebra:
    """{0, e, 1} con e idempotente, tests {0, 1} y D la identidad"""
    return FiniteAlgebra(
        size=3,
        one=2,
        zero=0,
        mult=[[0, 0, 0],
              [0, 1, 1],
              [0, 1, 2]],
        tests=(0, 2),
        complement=(2, 0),
        domain=[0, 1, 2],
        names=("0", "e", "1"),
    )


@dataclass
class FixtureDiagnostics:
    """Comparación entre los elementos listados de un modelo y su clausura"""
    fixture: str
    listed: int
    distinct: int
    closure: int
    duplicates: List[Tuple[str, str]] = field(default_factory=list)
    added: List[str] = field(default_factory=list)

    @property
    def is_closed(self) -> bool:
        return not self.added

    def to_dict(self) -> Dict[str, Any]:
        return {
            "fixture": self.fixture,
            "listed": self.listed,
            "distinct": self.distinct,
            "closure": self.closure,
            "duplicates": [list(pair) for pair in self.duplicates],
            "added": list(self.added),
        }


def diagnose(model: ConcreteModel, algebra: Optional[FiniteAlgebra] = None) -> FixtureDiagnostics:
    """
    Cuenta elementos listados, distintos y de la clausura

    Los listados incluyen 0 y 1 aunque el archivo no los nombre.
    """
    algebra = algebra or from_concrete(model)
    space = model.space
    listed: List[Tuple[str, PartialMap]] = [("0", PartialMap(space, [-1] * space.size)),
                                            ("1", PartialMap(space, range(space.size)))]
    listed += list(model.elements().items())
    first: Dict[PartialMap, str] = {}
    duplicates = []
    for name, f in listed:
        if f in first:
            duplicates.append((name, first[f]))
        else:
            first[f] = name
    added = [algebra.label(x) for x, f in enumerate(algebra.realization or ()) if f not in first]
    diagnostics = FixtureDiagnostics(
        fixture=model.fixture or "model",
        listed=len(listed),
        distinct=len(first),
        closure=algebra.size,
        duplicates=duplicates,
        added=added,
    )
    for name, kept in duplicates:
        logger.warning(f"{diagnostics.fixture}: {name} coincide con {kept}")
    if added:
        logger.warning(f"{diagnostics.fixture}: la clausura agrega {added}")
    return diagnostics


def random_corpus(count: int, seed: int, points: int = 4, generators: int = 2,
                  max_elements: int = 40,
                  close_under: Sequence[str] = ("compose", "D", "star", "neq"),
                  max_attempts: Optional[int] = None) -> List[Tuple[str, FiniteAlgebra]]:
    """
    Submonoides funcionales con tests generados al azar

    Cada intento sortea `generators` mapas parciales y un test sobre
    `points` puntos; se descartan los que exceden `max_elements`.

    Args:
        count: Número de álgebras deseado
        seed: Semilla del generador de numpy
        points: Tamaño del espacio de puntos
        generators: Mapas sorteados por intento
        max_elements: Cota de la clausura
        close_under: Operaciones tabuladas
        max_attempts: Intentos antes de rendirse (por defecto 50 por álgebra)

    Returns:
        Lista de (nombre, álgebra) en orden de generación
    """
    rng = np.random.default_rng(seed)
    space = PointSet(points)
    corpus: List[Tuple[str, FiniteAlgebra]] = []
    attempts = 0
    limit = max_attempts if max_attempts is not None else 50 * count
    while len(corpus) < count and attempts < limit:
        attempts += 1
        maps = {f"r{i}": PartialMap(space, rng.integers(-1, points, size=points))
                for i in range(generators)}
        members = np.flatnonzero(rng.random(points) < 0.5).tolist()
        tests = {"alpha": TestSet(space, members)}
        try:
            algebra = from_model(maps, tests, close_under, bound=max_elements)
        except ClosureBoundError as e:
            logger.debug(f"Intento {attempts} descartado: {e}")
            continue
        corpus.append((f"random-{seed}-{len(corpus)}", algebra))
    if len(corpus) < count:
        logger.warning(f"Corpus aleatorio incompleto: {len(corpus)}/{count} tras {attempts} intentos")
    else:
        logger.info(f"Corpus aleatorio: {count} álgebras en {attempts} intentos")
    return corpus
