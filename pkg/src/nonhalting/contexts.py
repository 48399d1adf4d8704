"""
Contextos de evaluación: una interfaz común para álgebras por tablas y
para colecciones de funciones parciales
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence

from . import pfun
from .algebra import FiniteAlgebra, from_concrete, from_model
from .errors import CapabilityError, InputError, SortError
from .pfun import ConcreteModel, PartialMap

OPERATIONS = ("mult", "D", "complement", "star", "neq", "eite", "wc", "while",
              "antidomain", "bowtie", "pref_union")


class EvalContext(ABC):
    """
    Operaciones de la signatura sobre un soporte concreto o abstracto

    Las subclases declaran en `capabilities` qué operaciones ofrecen; las
    que faltan lanzan CapabilityError.
    """

    capabilities: FrozenSet[str] = frozenset()
    description: str = ""

    @abstractmethod
    def elements(self) -> Sequence[Any]:
        """Soporte S en orden fijo (las posiciones son los índices de testigo)"""

    @abstractmethod
    def tests(self) -> Sequence[Any]:
        """Tests B sobre los que cuantifican las variables de tipo test"""

    @abstractmethod
    def domain_elements(self) -> Sequence[Any]:
        """D(S) = {x : D(x) = x}"""

    @abstractmethod
    def one(self) -> Any:
        ...

    @abstractmethod
    def zero(self) -> Any:
        ...

    @abstractmethod
    def is_test(self, x: Any) -> bool:
        ...

    @abstractmethod
    def label(self, x: Any) -> str:
        ...

    @abstractmethod
    def index_of(self, x: Any) -> Optional[int]:
        ...

    def element_named(self, label: str) -> Any:
        for x in self.elements():
            if self.label(x) == label:
                return x
        raise InputError(f"No hay elemento con etiqueta {label!r} en {self.description}")

    def require(self, *operations: str) -> None:
        for op in operations:
            if op not in self.capabilities:
                raise CapabilityError(op)

    def operation(self, name: str) -> Callable[..., Any]:
        """Función asociada a un nombre de operación"""
        self.require(name)
        return {
            "mult": self.mult, "D": self.domain, "complement": self.complement,
            "star": self.star, "neq": self.neq, "eite": self.eite, "wc": self.wc,
            "while": self.whl, "antidomain": self.antidomain, "bowtie": self.bowtie,
            "pref_union": self.pref_union,
        }[name]

    def leq(self, x: Any, y: Any) -> bool:
        """Orden natural: x ≤ y sii x = D(x)y"""
        return x == self.mult(self.domain(x), y)

    def mult(self, x: Any, y: Any) -> Any:
        raise CapabilityError("mult")

    def domain(self, x: Any) -> Any:
        raise CapabilityError("D")

    def complement(self, x: Any) -> Any:
        raise CapabilityError("complement")

    def star(self, x: Any, y: Any) -> Any:
        raise CapabilityError("star")

    def neq(self, x: Any, y: Any) -> Any:
        raise CapabilityError("neq")

    def eite(self, s: Any, a: Any, t: Any, u: Any) -> Any:
        raise CapabilityError("eite")

    def wc(self, s: Any, t: Any, u: Any, v: Any) -> Any:
        raise CapabilityError("wc")

    def whl(self, t: Any, a: Any, s: Any) -> Any:
        raise CapabilityError("while")

    def antidomain(self, x: Any) -> Any:
        raise CapabilityError("antidomain")

    def bowtie(self, x: Any, y: Any) -> Any:
        raise CapabilityError("bowtie")

    def pref_union(self, x: Any, y: Any) -> Any:
        raise CapabilityError("pref_union")


class TableContext(EvalContext):
    """Contexto sobre un FiniteAlgebra: cada operación es una lectura de tabla"""

    def __init__(self, algebra: FiniteAlgebra, description: str = "algebra"):
        self.algebra = algebra
        self.description = description
        self.capabilities = algebra.capabilities
        self._mult = algebra.mult.tolist()
        self._domain = algebra.domain.tolist() if algebra.domain is not None else None
        self._star = algebra.star.tolist() if algebra.star is not None else None
        self._neq = algebra.neq.tolist() if algebra.neq is not None else None
        self._test_index = algebra.test_index
        self.logger = logging.getLogger(__name__)

    def elements(self) -> Sequence[int]:
        return range(self.algebra.size)

    def tests(self) -> Sequence[int]:
        return self.algebra.tests

    def domain_elements(self) -> Sequence[int]:
        self.require("D")
        return [x for x in range(self.algebra.size) if self._domain[x] == x]

    def one(self) -> int:
        return self.algebra.one

    def zero(self) -> int:
        return self.algebra.zero

    def is_test(self, x: int) -> bool:
        return x in self._test_index

    def label(self, x: int) -> str:
        return self.algebra.label(x)

    def index_of(self, x: int) -> Optional[int]:
        return x

    def _position(self, a: int) -> int:
        try:
            return self._test_index[a]
        except KeyError:
            raise SortError(f"{self.label(a)} ocupa una posición de test pero no está en B", a) from None

    def mult(self, x: int, y: int) -> int:
        return self._mult[x][y]

    def domain(self, x: int) -> int:
        if self._domain is None:
            raise CapabilityError("D")
        return self._domain[x]

    def complement(self, x: int) -> int:
        return self.algebra.complement[self._position(x)]

    def star(self, x: int, y: int) -> int:
        if self._star is None:
            raise CapabilityError("star")
        return self._star[x][y]

    def neq(self, x: int, y: int) -> int:
        if self._neq is None:
            raise CapabilityError("neq")
        return self._neq[x][y]

    def eite(self, s: int, a: int, t: int, u: int) -> int:
        if self.algebra.eite is None:
            raise CapabilityError("eite")
        return int(self.algebra.eite[s, self._position(a), t, u])

    def wc(self, s: int, t: int, u: int, v: int) -> int:
        if self.algebra.wc is None:
            raise CapabilityError("wc")
        return int(self.algebra.wc[s, t, u, v])

    def whl(self, t: int, a: int, s: int) -> int:
        if self.algebra.whl is None:
            raise CapabilityError("while")
        return int(self.algebra.whl[t, self._position(a), s])


class MapContext(EvalContext):
    """
    Contexto sobre una colección de funciones parciales

    Todas las operaciones se calculan por su definición semántica, así que
    el contexto ofrece la signatura completa. Los resultados pueden caer
    fuera de la colección si esta no es cerrada.
    """

    capabilities = frozenset(OPERATIONS)

    def __init__(self, maps: Mapping[str, PartialMap], tests: Iterable[str],
                 description: str = "model"):
        self.description = description
        self._elements: List[PartialMap] = []
        self._names: Dict[PartialMap, str] = {}
        self._index: Dict[PartialMap, int] = {}
        for name, f in maps.items():
            if f not in self._index:
                self._index[f] = len(self._elements)
                self._names[f] = name
                self._elements.append(f)
        if not self._elements:
            raise InputError("Un contexto concreto necesita al menos un mapa")
        self.space = self._elements[0].space
        for constant, name in ((pfun.null(self.space), "0"), (pfun.identity(self.space), "1")):
            if constant not in self._index:
                self._index[constant] = len(self._elements)
                self._names[constant] = name
                self._elements.append(constant)
        self._tests: List[PartialMap] = []
        for name in tests:
            t = maps[name]
            if not t.is_partial_identity():
                raise SortError(f"{name} no es una restricción de la identidad", t)
            if t not in self._tests:
                self._tests.append(t)
        for constant in (pfun.null(self.space), pfun.identity(self.space)):
            if constant not in self._tests:
                self._tests.append(constant)
        self._domain_elements = [f for f in self._elements if f.is_partial_identity()]
        self.logger = logging.getLogger(__name__)
        self.logger.debug(f"MapContext '{description}': {len(self._elements)} elementos, "
                          f"{len(self._tests)} tests, {self.space.size} puntos")

    @classmethod
    def from_algebra(cls, algebra: FiniteAlgebra, description: str = "model") -> "MapContext":
        """Contexto sobre la realización concreta de un álgebra construida con from_model"""
        if algebra.realization is None:
            raise InputError("El álgebra no tiene realización concreta")
        names = [algebra.label(x) for x in range(algebra.size)]
        maps = dict(zip(names, algebra.realization))
        return cls(maps, [names[t] for t in algebra.tests], description)

    @classmethod
    def from_model(cls, model: ConcreteModel, close_under: Optional[Sequence[str]] = None,
                   bound: int = 4096, description: Optional[str] = None) -> "MapContext":
        """Cierra el modelo bajo sus operaciones y envuelve el resultado"""
        algebra = from_concrete(model, close_under, bound)
        return cls.from_algebra(algebra, description or model.fixture or "model")

    @classmethod
    def from_generators(cls, maps: Mapping[str, PartialMap], tests: Mapping[str, PartialMap],
                        close_under: Sequence[str] = ("compose", "D"), bound: int = 4096,
                        description: str = "model") -> "MapContext":
        return cls.from_algebra(from_model(maps, tests, close_under, bound), description)

    def elements(self) -> Sequence[PartialMap]:
        return self._elements

    def tests(self) -> Sequence[PartialMap]:
        return self._tests

    def domain_elements(self) -> Sequence[PartialMap]:
        return self._domain_elements

    def one(self) -> PartialMap:
        return pfun.identity(self.space)

    def zero(self) -> PartialMap:
        return pfun.null(self.space)

    def is_test(self, x: PartialMap) -> bool:
        return x.is_partial_identity()

    def label(self, x: PartialMap) -> str:
        return self._names.get(x, repr(x))

    def index_of(self, x: PartialMap) -> Optional[int]:
        return self._index.get(x)

    def mult(self, x: PartialMap, y: PartialMap) -> PartialMap:
        return pfun.compose(x, y)

    def domain(self, x: PartialMap) -> PartialMap:
        return pfun.domain_of(x)

    def complement(self, x: PartialMap) -> PartialMap:
        return pfun.test_complement(x)

    def star(self, x: PartialMap, y: PartialMap) -> PartialMap:
        return pfun.agree_star(x, y)

    def neq(self, x: PartialMap, y: PartialMap) -> PartialMap:
        return pfun.disagree(x, y)

    def eite(self, s: PartialMap, a: PartialMap, t: PartialMap, u: PartialMap) -> PartialMap:
        return pfun.ext_ite(s, a, t, u)

    def wc(self, s: PartialMap, t: PartialMap, u: PartialMap, v: PartialMap) -> PartialMap:
        return pfun.weak_cmp(s, t, u, v)

    def whl(self, t: PartialMap, a: PartialMap, s: PartialMap) -> PartialMap:
        return pfun.ext_while(t, a, s)

    def antidomain(self, x: PartialMap) -> PartialMap:
        return pfun.antidomain_P(x)

    def bowtie(self, x: PartialMap, y: PartialMap) -> PartialMap:
        return pfun.bowtie(x, y)

    def pref_union(self, x: PartialMap, y: PartialMap) -> PartialMap:
        return pfun.pref_union(x, y)

    def leq(self, x: PartialMap, y: PartialMap) -> bool:
        return pfun.natural_leq(x, y)
