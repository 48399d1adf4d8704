"""
Predicados generalizados B* inducidos por el if-then-else extendido y la
comparación débil, con los conectivos secuenciales y su semántica trivaluada
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .algebra import FiniteAlgebra
from .errors import CapabilityError, ClosureBoundError, InputError
from .laws import LemmaReport
from .pfun import UNDEFINED


class Truth(Enum):
    """Valor de verdad de un predicado que puede no terminar"""
    TRUE = "T"
    FALSE = "F"
    UNDEFINED = "U"

    def sequential_and(self, other: "Truth") -> "Truth":
        """P∧Q: falso si P es falso, Q si P es verdadero, indefinido si no"""
        if self is Truth.FALSE:
            return Truth.FALSE
        if self is Truth.TRUE:
            return other
        return Truth.UNDEFINED

    def sequential_or(self, other: "Truth") -> "Truth":
        """P∨Q: verdadero si P lo es, Q si P es falso, indefinido si no"""
        if self is Truth.TRUE:
            return Truth.TRUE
        if self is Truth.FALSE:
            return other
        return Truth.UNDEFINED

    def negate(self) -> "Truth":
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return Truth.UNDEFINED


# codificación numérica de las trazas: 1 verdadero, 0 falso, −1 indefinido
_CODES = {1: Truth.TRUE, 0: Truth.FALSE, -1: Truth.UNDEFINED}


@dataclass(frozen=True, eq=False)
class GenPredicate:
    """
    Predicado P identificado con su tabla P[x, y]

    Dos predicados son iguales sii sus tablas coinciden; la expresión sólo
    se conserva para los reportes.
    """
    table: np.ndarray
    expression: str

    @property
    def key(self) -> bytes:
        return self.table.tobytes()

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, GenPredicate) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])


def connective(op: str, P: GenPredicate, Q: Optional[GenPredicate] = None) -> GenPredicate:
    """
    (P∧Q)[x,y] = P[Q[x,y],y], (P∨Q)[x,y] = P[x,Q[x,y]], (¬P)[x,y] = P[y,x]
    """
    m = P.table.shape[0]
    idx = np.arange(m)
    if op == "not":
        return GenPredicate(np.ascontiguousarray(P.table.T), f"not {P.expression}")
    if Q is None:
        raise InputError(f"El conectivo {op} necesita dos predicados")
    if op == "and":
        return GenPredicate(P.table[Q.table, idx[None, :]], f"({P.expression} and {Q.expression})")
    if op == "or":
        return GenPredicate(P.table[idx[:, None], Q.table], f"({P.expression} or {Q.expression})")
    raise InputError(f"Conectivo desconocido: {op}")


class BStarGenerator:
    """Genera B* cerrando los predicados básicos bajo ∧, ∨ y ¬"""

    def __init__(self, algebra: FiniteAlgebra):
        if algebra.eite is None:
            raise CapabilityError("eite", "B* necesita la tabla del if-then-else extendido")
        self.algebra = algebra
        self.logger = logging.getLogger(__name__)

    def basic_predicates(self) -> List[GenPredicate]:
        """(a,α)[x,y] para todo a y todo α; (a=b)[x,y] si hay tabla wc"""
        A = self.algebra
        found: Dict[bytes, GenPredicate] = {}
        for a in range(A.size):
            for i, alpha in enumerate(A.tests):
                P = GenPredicate(A.eite[a, i], f"({A.label(a)},{A.label(alpha)})")
                found.setdefault(P.key, P)
        if A.wc is not None:
            for a in range(A.size):
                for b in range(A.size):
                    P = GenPredicate(A.wc[a, b], f"({A.label(a)}={A.label(b)})")
                    found.setdefault(P.key, P)
        return list(found.values())

    def test_predicate(self, alpha: int) -> GenPredicate:
        """α[x,y] = (1,α)[x,y]"""
        A = self.algebra
        return GenPredicate(A.eite[A.one, A.test_index[alpha]], A.label(alpha))

    def generate(self, bound: int = 20000) -> List[GenPredicate]:
        """
        Clausura de los básicos bajo los tres conectivos

        Raises:
            ClosureBoundError: si se superan `bound` predicados
        """
        items = self.basic_predicates()
        keys = {P.key for P in items}
        done = 0
        rounds = 0
        while done < len(items):
            rounds += 1
            start = len(items)
            fresh: List[GenPredicate] = []

            def offer(P: GenPredicate) -> None:
                if P.key not in keys:
                    keys.add(P.key)
                    fresh.append(P)

            for i in range(done, start):
                offer(connective("not", items[i]))
            for i in range(start):
                for j in range(start):
                    if i < done and j < done:
                        continue
                    offer(connective("and", items[i], items[j]))
                    offer(connective("or", items[i], items[j]))
            if start + len(fresh) > bound:
                raise ClosureBoundError(f"B* supera la cota de {bound} predicados", len(fresh))
            items.extend(fresh)
            done = start
            self.logger.debug(f"B* ronda {rounds}: {len(items)} predicados")
        self.logger.info(f"B*: {len(items)} predicados tras {rounds} rondas")
        return items

    def embedding_is_injective(self) -> bool:
        """α ↦ α[x,y] es inyectiva sobre B"""
        tables = {self.test_predicate(a).key for a in self.algebra.tests}
        return len(tables) == len(self.algebra.tests)


def basic_predicates(algebra: FiniteAlgebra) -> List[GenPredicate]:
    return BStarGenerator(algebra).basic_predicates()


def generate_bstar(algebra: FiniteAlgebra, bound: int = 20000) -> List[GenPredicate]:
    return BStarGenerator(algebra).generate(bound)


def _require_realization(algebra: FiniteAlgebra) -> np.ndarray:
    if algebra.realization is None:
        raise InputError("La semántica trivaluada necesita un álgebra con realización concreta")
    return np.stack([f.image for f in algebra.realization])


def trace_codes(algebra: FiniteAlgebra, P: GenPredicate) -> np.ndarray:
    """
    Traza de P por estado: 1 donde P[1,0] está definido, 0 donde lo está
    P[0,1], −1 en el resto
    """
    R = _require_realization(algebra)
    true = R[P(algebra.one, algebra.zero)] >= 0
    false = R[P(algebra.zero, algebra.one)] >= 0
    return np.where(true, 1, np.where(false, 0, -1))


def trace(algebra: FiniteAlgebra, P: GenPredicate) -> List[Truth]:
    return [_CODES[int(c)] for c in trace_codes(algebra, P)]


def _connective_table(method) -> np.ndarray:
    """Tabla de códigos indexada por código + 1, tomada de los métodos de Truth"""
    order = (-1, 0, 1)
    code = {truth: c for c, truth in _CODES.items()}
    if method is Truth.negate:
        return np.array([code[_CODES[p].negate()] for p in order])
    return np.array([[code[method(_CODES[p], _CODES[q])] for q in order] for p in order])


_AND_TABLE = _connective_table(Truth.sequential_and)
_OR_TABLE = _connective_table(Truth.sequential_or)
_NOT_TABLE = _connective_table(Truth.negate)


def _and_codes(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return _AND_TABLE[p + 1, q + 1]


def _or_codes(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return _OR_TABLE[p + 1, q + 1]


def _not_codes(p: np.ndarray) -> np.ndarray:
    return _NOT_TABLE[p + 1]


def three_valued_check(algebra: FiniteAlgebra, predicates: Sequence[GenPredicate],
                       max_pairs: Optional[int] = None) -> LemmaReport:
    """
    Verifica la semántica trivaluada de los predicados y sus conectivos

    Comprueba que ningún estado sea a la vez verdadero y falso, que la traza
    determine la tabla y que ∧, ∨, ¬ sigan las reglas secuenciales.
    """
    R = _require_realization(algebra)
    report = LemmaReport("three-valued")
    one, zero = algebra.one, algebra.zero
    traces = []
    for P in predicates:
        report.examined += 1
        true = R[P(one, zero)] >= 0
        false = R[P(zero, one)] >= 0
        if (true & false).any():
            report.violations.append({"predicate": P.expression, "problem": "verdadero y falso a la vez"})
        codes = np.where(true, 1, np.where(false, 0, -1))
        expected = np.where(true[None, None, :], R[:, None, :],
                            np.where(false[None, None, :], R[None, :, :], UNDEFINED))
        if (R[P.table] != expected).any():
            report.violations.append({"predicate": P.expression, "problem": "la traza no determina la tabla"})
        traces.append(codes)
        if not np.array_equal(trace_codes(algebra, connective("not", P)), _not_codes(codes)):
            report.violations.append({"predicate": P.expression, "connective": "not"})

    pairs = 0
    for i, P in enumerate(predicates):
        for j, Q in enumerate(predicates):
            if max_pairs is not None and pairs >= max_pairs:
                return report
            pairs += 1
            report.examined += 1
            if not np.array_equal(trace_codes(algebra, connective("and", P, Q)), _and_codes(traces[i], traces[j])):
                report.violations.append({"P": P.expression, "Q": Q.expression, "connective": "and"})
            if not np.array_equal(trace_codes(algebra, connective("or", P, Q)), _or_codes(traces[i], traces[j])):
                report.violations.append({"P": P.expression, "Q": Q.expression, "connective": "or"})
    return report


def export_bstar(algebra: FiniteAlgebra, predicates: Sequence[GenPredicate]) -> List[Dict[str, Any]]:
    """Lista de {trace, expression}; la traza sólo existe con realización concreta"""
    rows = []
    for P in predicates:
        row: Dict[str, Any] = {"expression": P.expression}
        if algebra.realization is not None:
            row["trace"] = "".join(t.value for t in trace(algebra, P))
        rows.append(row)
    return rows
