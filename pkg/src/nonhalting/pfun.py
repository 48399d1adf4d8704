"""
Modelos concretos: funciones parciales sobre un conjunto finito de puntos

Cada operación se calcula con su definición semántica, punto a punto,
sobre arreglos de numpy. La composición se lee de izquierda a derecha:
(fg)(x) = g(f(x)).
"""

import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError, SortError

UNDEFINED = -1

# Nombres válidos en los archivos de modelos
NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True)
class PointSet:
    """Conjunto de puntos 0..size-1"""
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise InputError(f"Tamaño de conjunto de puntos negativo: {self.size}")

    def points(self) -> range:
        return range(self.size)


class PartialMap:
    """
    Función parcial sobre un PointSet, guardada como arreglo denso

    La entrada x de `image` es f(x), o UNDEFINED si f no está definida en x.
    La igualdad es extensional: mismo dominio y mismos valores.
    """

    __slots__ = ("space", "image", "_key")

    def __init__(self, space: PointSet, image: Iterable[int]):
        arr = np.array(list(image), dtype=np.int64).reshape(-1)
        if arr.shape[0] != space.size:
            raise InputError(f"La imagen tiene {arr.shape[0]} entradas, se esperaban {space.size}")
        if arr.size and (arr.min() < UNDEFINED or arr.max() >= space.size):
            raise InputError(f"Entrada fuera de rango en la imagen: {arr.tolist()}")
        arr.flags.writeable = False
        self.space = space
        self.image = arr
        self._key = (space.size, arr.tobytes())

    @classmethod
    def from_entries(cls, entries: Sequence[Optional[int]], size: Optional[int] = None) -> "PartialMap":
        """
        Construye un mapa desde la convención de archivo (índice o None)

        Args:
            entries: Lista de valores, None para "indefinido"
            size: Tamaño del espacio (por defecto len(entries))

        Returns:
            PartialMap: Mapa construido
        """
        space = PointSet(len(entries) if size is None else size)
        return cls(space, [UNDEFINED if v is None else int(v) for v in entries])

    def entries(self) -> List[Optional[int]]:
        """Convención de archivo: índice de punto o None"""
        return [None if v == UNDEFINED else v for v in self.image.tolist()]

    @property
    def size(self) -> int:
        return self.space.size

    @property
    def domain(self) -> frozenset:
        return frozenset(np.flatnonzero(self.image >= 0).tolist())

    def __call__(self, x: int) -> Optional[int]:
        value = int(self.image[x])
        return None if value == UNDEFINED else value

    def is_partial_identity(self) -> bool:
        defined = self.image >= 0
        return bool(np.all(self.image[defined] == np.flatnonzero(defined)))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PartialMap):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        shown = ",".join("_" if v is None else str(v) for v in self.entries())
        return f"PartialMap[{shown}]"


class TestSet(PartialMap):
    """Test: restricción de la identidad a un subconjunto de puntos"""

    __test__ = False

    __slots__ = ("members",)

    def __init__(self, space: PointSet, members: Iterable[int]):
        members = frozenset(int(m) for m in members)
        if any(m < 0 or m >= space.size for m in members):
            raise InputError(f"Miembros fuera del espacio de {space.size} puntos: {sorted(members)}")
        super().__init__(space, [x if x in members else UNDEFINED for x in space.points()])
        self.members = members

    @classmethod
    def from_map(cls, f: PartialMap) -> "TestSet":
        """Reinterpreta una restricción de la identidad como test"""
        if isinstance(f, TestSet):
            return f
        if not f.is_partial_identity():
            raise SortError(f"{f!r} no es una restricción de la identidad", f)
        return cls(f.space, f.domain)

    def __repr__(self) -> str:
        return f"TestSet{{{','.join(str(m) for m in sorted(self.members))}}}"


def _shared(*maps: PartialMap) -> PointSet:
    space = maps[0].space
    for f in maps[1:]:
        if f.space.size != space.size:
            raise InputError(f"Espacios de puntos distintos: {space.size} y {f.space.size}")
    return space


def _test_mask(alpha: PartialMap) -> np.ndarray:
    if not alpha.is_partial_identity():
        raise SortError(f"{alpha!r} ocupa una posición de test pero no es un test", alpha)
    return alpha.image >= 0


def identity(space: PointSet) -> TestSet:
    return TestSet(space, space.points())


def null(space: PointSet) -> TestSet:
    return TestSet(space, ())


def test(space: PointSet, members: Iterable[int]) -> TestSet:
    return TestSet(space, members)


def compose(f: PartialMap, g: PartialMap) -> PartialMap:
    """(fg)(x) = g(f(x)), indefinido si algún paso lo es"""
    space = _shared(f, g)
    fi = f.image
    safe = np.where(fi >= 0, fi, 0)
    return PartialMap(space, np.where(fi >= 0, g.image[safe], UNDEFINED))


def power(f: PartialMap, k: int) -> PartialMap:
    result: PartialMap = identity(f.space)
    for _ in range(k):
        result = compose(result, f)
    return result


def domain_of(f: PartialMap) -> TestSet:
    """D(f): la identidad restringida al dominio de f"""
    return TestSet(f.space, f.domain)


def test_complement(alpha: PartialMap) -> TestSet:
    mask = _test_mask(alpha)
    return TestSet(alpha.space, np.flatnonzero(~mask).tolist())


def intersect(f: PartialMap, g: PartialMap) -> PartialMap:
    space = _shared(f, g)
    agree = (f.image >= 0) & (f.image == g.image)
    return PartialMap(space, np.where(agree, f.image, UNDEFINED))


def agree_star(f: PartialMap, g: PartialMap) -> TestSet:
    """s∗t = D(s∩t)"""
    return domain_of(intersect(f, g))


def disagree(f: PartialMap, g: PartialMap) -> TestSet:
    """(s≠t): ambos definidos y con valores distintos"""
    space = _shared(f, g)
    mask = (f.image >= 0) & (g.image >= 0) & (f.image != g.image)
    return TestSet(space, np.flatnonzero(mask).tolist())


def union(f: PartialMap, g: PartialMap) -> PartialMap:
    """
    Unión de grafos compatibles

    Raises:
        InputError: si f y g están definidos en un punto con valores distintos
    """
    space = _shared(f, g)
    clash = (f.image >= 0) & (g.image >= 0) & (f.image != g.image)
    if clash.any():
        raise InputError(f"Unión de grafos incompatibles en los puntos {np.flatnonzero(clash).tolist()}")
    return PartialMap(space, np.where(f.image >= 0, f.image, g.image))


def ext_ite(f: PartialMap, alpha: PartialMap, g: PartialMap, h: PartialMap) -> PartialMap:
    """
    If-then-else extendido (f,α)[g,h]

    Vale g(x) si f(x) está en α, h(x) si f(x) está en α′, e indefinido
    donde f lo está.
    """
    space = _shared(f, alpha, g, h)
    mask = _test_mask(alpha)
    fi = f.image
    defined = fi >= 0
    inside = mask[np.where(defined, fi, 0)] & defined
    return PartialMap(space, np.where(defined, np.where(inside, g.image, h.image), UNDEFINED))


def weak_cmp(f: PartialMap, g: PartialMap, h: PartialMap, k: PartialMap) -> PartialMap:
    """
    Comparación débil (f=g)[h,k]

    h(x) donde f(x)=g(x), k(x) donde ambos están definidos y difieren,
    indefinido en el resto.
    """
    space = _shared(f, g, h, k)
    both = (f.image >= 0) & (g.image >= 0)
    equal = both & (f.image == g.image)
    different = both & (f.image != g.image)
    return PartialMap(space, np.where(equal, h.image, np.where(different, k.image, UNDEFINED)))


def ext_while(f: PartialMap, alpha: PartialMap, g: PartialMap) -> PartialMap:
    """
    While-do extendido ((f,α):g)

    Itera x₀=x, x_{k+1}=g(x_k). En cada paso: si f(x_k) no está definida el
    resultado es indefinido; si f(x_k) está en α′ se devuelve x_k; si no, se
    sigue. Un estado repetido significa que el ciclo no termina.
    """
    space = _shared(f, alpha, g)
    mask = _test_mask(alpha).tolist()
    f_img = f.image.tolist()
    g_img = g.image.tolist()
    out = [UNDEFINED] * space.size
    for x in space.points():
        seen = set()
        current = x
        while current not in seen:
            seen.add(current)
            fx = f_img[current]
            if fx == UNDEFINED:
                break
            if not mask[fx]:
                out[x] = current
                break
            current = g_img[current]
            if current == UNDEFINED:
                break
    return PartialMap(space, out)


def while_do(alpha: PartialMap, f: PartialMap) -> PartialMap:
    """(α:f) = ((1,α):f)"""
    return ext_while(identity(f.space), alpha, f)


def natural_leq(f: PartialMap, g: PartialMap) -> bool:
    """f ≤ g sii el grafo de f está contenido en el de g"""
    _shared(f, g)
    return bool(np.all((f.image < 0) | (f.image == g.image)))


def antidomain_P(f: PartialMap) -> TestSet:
    """P(s) := D(s)′"""
    return test_complement(domain_of(f))


def bowtie(f: PartialMap, g: PartialMap) -> TestSet:
    """(s⋈t) := (s∗t) ∪ D(s)′D(t)′"""
    space = _shared(f, g)
    agree = (f.image >= 0) & (f.image == g.image)
    neither = (f.image < 0) & (g.image < 0)
    return TestSet(space, np.flatnonzero(agree | neither).tolist())


def pref_union(f: PartialMap, g: PartialMap) -> PartialMap:
    """s⊔t := D(s)[s,t]: s donde está definida, t en el resto"""
    space = _shared(f, g)
    return PartialMap(space, np.where(f.image >= 0, f.image, g.image))


def _map_name(entries: Sequence[Optional[int]]) -> str:
    return "f_" + "".join("x" if v is None else str(v) for v in entries)


def _test_name(members: Sequence[int]) -> str:
    return "a_" + "".join(str(m) for m in members)


def full_model(n: int, max_points: int = 5) -> "ConcreteModel":
    """
    Enumera todas las funciones parciales y todos los tests sobre n puntos

    Args:
        n: Número de puntos
        max_points: Cota de seguridad para la enumeración

    Returns:
        ConcreteModel: (n+1)^n mapas y 2^n tests, sin repeticiones

    Raises:
        InputError: si n es negativo o supera la cota
    """
    if n < 0 or n > max_points:
        raise InputError(f"full_model admite 0 ≤ n ≤ {max_points}, se pidió {n}")
    space = PointSet(n)
    maps: Dict[str, PartialMap] = {}
    for image in itertools.product(range(UNDEFINED, n), repeat=n):
        f = PartialMap(space, image)
        maps[_map_name(f.entries())] = f
    tests: Dict[str, TestSet] = {}
    for r in range(n + 1):
        for members in itertools.combinations(range(n), r):
            tests[_test_name(members)] = TestSet(space, members)
    return ConcreteModel(space=space, maps=maps, tests=tests,
                         operations=("compose", "D", "star", "neq", "eite", "wc", "while"))


@dataclass
class ConcreteModel:
    """Modelo concreto tal como se guarda en archivo: mapas y tests con nombre"""
    space: PointSet
    maps: Dict[str, PartialMap] = field(default_factory=dict)
    tests: Dict[str, TestSet] = field(default_factory=dict)
    operations: Tuple[str, ...] = ("compose", "D")
    partition: Optional[List[List[str]]] = None
    fixture: Optional[str] = None
    # testigo sugerido por ley, por etiquetas, que el verificador prueba primero
    witnesses: Optional[Dict[str, Dict[str, str]]] = None

    def __post_init__(self):
        for name, f in list(self.maps.items()) + list(self.tests.items()):
            if not NAME_PATTERN.match(name):
                raise InputError(f"Nombre inválido en el modelo: {name!r}")
            if f.space.size != self.space.size:
                raise InputError(f"{name} vive en {f.space.size} puntos, el modelo tiene {self.space.size}")

    @property
    def points(self) -> int:
        return self.space.size

    def elements(self) -> Dict[str, PartialMap]:
        """Mapas y tests juntos (los tests también son elementos de S)"""
        combined: Dict[str, PartialMap] = dict(self.maps)
        combined.update(self.tests)
        return combined

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el modelo a diccionario en el formato de archivo"""
        result: Dict[str, Any] = {
            "points": self.space.size,
            "maps": {name: f.entries() for name, f in self.maps.items()},
            "tests": {name: sorted(t.members) for name, t in self.tests.items()},
        }
        if tuple(self.operations) != ("compose", "D"):
            result["operations"] = list(self.operations)
        if self.partition is not None:
            result["partition"] = [list(block) for block in self.partition]
        if self.fixture:
            result["fixture"] = self.fixture
        if self.witnesses:
            result["witnesses"] = {law: dict(w) for law, w in self.witnesses.items()}
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConcreteModel":
        try:
            space = PointSet(int(data["points"]))
            maps = {name: PartialMap.from_entries(entries, space.size)
                    for name, entries in data.get("maps", {}).items()}
            tests = {name: TestSet(space, members) for name, members in data.get("tests", {}).items()}
        except (KeyError, TypeError) as e:
            raise InputError(f"Modelo concreto mal formado: {e}") from e
        return cls(
            space=space,
            maps=maps,
            tests=tests,
            operations=tuple(data.get("operations", ("compose", "D"))),
            partition=data.get("partition"),
            fixture=data.get("fixture"),
            witnesses=data.get("witnesses"),
        )
