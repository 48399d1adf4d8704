"""
Álgebras finitas de dos sortes (S, B) dadas por tablas de operaciones

Incluye la validación estructural de monoide con tests, particiones,
congruencias y cocientes, la conversión desde modelos concretos (clausura
vectorizada con numpy) y el cálculo de índice y período de cada elemento.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import ClosureBoundError, CongruenceError, InputError, SortError
from .pfun import ConcreteModel, PartialMap, PointSet, UNDEFINED

logger = logging.getLogger(__name__)

CLOSURE_OPERATIONS = ("compose", "D", "star", "neq", "eite", "wc", "while")

# Con (n+1)^n < 2^63 los códigos enteros de las imágenes no desbordan
MAX_ENCODED_POINTS = 15


def _as_table(values: Any, shape: Tuple[int, ...], name: str, size: int) -> np.ndarray:
    try:
        table = np.array(values, dtype=np.int64).reshape(shape)
    except ValueError as e:
        raise InputError(f"Tabla '{name}' con dimensiones incorrectas: se esperaba {shape}") from e
    if table.size and (table.min() < 0 or table.max() >= size):
        raise InputError(f"Tabla '{name}' con entradas fuera de 0..{size - 1}")
    table = table.astype(np.int32)
    table.flags.writeable = False
    return table


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """
    Álgebra finita (S, B) con tablas

    Los elementos son índices 0..size-1; `tests` enumera B y `complement`
    está alineado con `tests`. Las tablas opcionales usan el test por su
    posición en `tests`: eite[s, a, t, u], wc[s, t, u, v], whl[t, a, s].
    """
    size: int
    one: int
    zero: int
    mult: np.ndarray
    tests: Tuple[int, ...]
    complement: Tuple[int, ...]
    domain: Optional[np.ndarray] = None
    star: Optional[np.ndarray] = None
    neq: Optional[np.ndarray] = None
    eite: Optional[np.ndarray] = None
    wc: Optional[np.ndarray] = None
    whl: Optional[np.ndarray] = None
    names: Optional[Tuple[str, ...]] = None
    realization: Optional[Tuple[PartialMap, ...]] = None

    def __post_init__(self):
        m = self.size
        if m < 1:
            raise InputError("Un álgebra necesita al menos un elemento")
        T = len(self.tests)
        tables = {
            "mult": (m, m), "domain": (m,), "star": (m, m), "neq": (m, m),
            "eite": (m, T, m, m), "wc": (m, m, m, m), "whl": (m, T, m),
        }
        for name, shape in tables.items():
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _as_table(value, shape, name, m))
        if not (0 <= self.one < m and 0 <= self.zero < m):
            raise InputError(f"one={self.one} o zero={self.zero} fuera de rango")
        object.__setattr__(self, "tests", tuple(int(t) for t in self.tests))
        object.__setattr__(self, "complement", tuple(int(c) for c in self.complement))
        if len(set(self.tests)) != T or any(not 0 <= t < m for t in self.tests):
            raise InputError(f"Lista de tests inválida: {self.tests}")
        if len(self.complement) != T or any(not 0 <= c < m for c in self.complement):
            raise InputError("La tabla de complemento debe alinearse con la lista de tests")
        if self.names is not None and len(self.names) != m:
            raise InputError(f"Se esperaban {m} nombres, llegaron {len(self.names)}")
        if self.realization is not None and len(self.realization) != m:
            raise InputError("La realización concreta no cubre todos los elementos")

    @cached_property
    def test_index(self) -> Dict[int, int]:
        """Posición de cada test dentro de `tests`"""
        return {t: i for i, t in enumerate(self.tests)}

    @property
    def capabilities(self) -> FrozenSet[str]:
        caps = {"mult", "complement"}
        for table, capability in (("domain", "D"), ("star", "star"), ("neq", "neq"),
                                  ("eite", "eite"), ("wc", "wc"), ("whl", "while")):
            if getattr(self, table) is not None:
                caps.add(capability)
        return frozenset(caps)

    def is_test(self, x: int) -> bool:
        return x in self.test_index

    def complement_of(self, x: int) -> int:
        try:
            return self.complement[self.test_index[x]]
        except KeyError:
            raise SortError(f"{self.label(x)} no es un test: no tiene complemento", x) from None

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def element_named(self, name: str) -> int:
        """Índice de un elemento por nombre (o por su índice escrito en decimal)"""
        if self.names and name in self.names:
            return self.names.index(name)
        if name.isdigit() and int(name) < self.size:
            return int(name)
        raise InputError(f"No hay ningún elemento llamado {name!r}")

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el álgebra al formato de archivo (tablas aplanadas por filas)"""
        result: Dict[str, Any] = {
            "size": self.size,
            "one": self.one,
            "zero": self.zero,
            "mult": self.mult.reshape(-1).tolist(),
        }
        if self.domain is not None:
            result["domain"] = self.domain.tolist()
        result["tests"] = list(self.tests)
        result["complement"] = list(self.complement)
        for table, key in (("star", "star"), ("neq", "neq"), ("eite", "eite"), ("wc", "wc"), ("whl", "while")):
            value = getattr(self, table)
            if value is not None:
                result[key] = value.reshape(-1).tolist()
        if self.names:
            result["names"] = list(self.names)
        return result

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FiniteAlgebra":
        try:
            return cls(
                size=int(data["size"]),
                one=int(data["one"]),
                zero=int(data["zero"]),
                mult=data["mult"],
                tests=tuple(data["tests"]),
                complement=tuple(data["complement"]),
                domain=data.get("domain"),
                star=data.get("star"),
                neq=data.get("neq"),
                eite=data.get("eite"),
                wc=data.get("wc"),
                whl=data.get("while"),
                names=tuple(data["names"]) if data.get("names") else None,
            )
        except (KeyError, TypeError) as e:
            raise InputError(f"Álgebra mal formada: falta o sobra {e}") from e


@dataclass
class Violation:
    """Invariante estructural violado, con su testigo"""
    invariant: str
    witness: Tuple[int, ...]
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"invariant": self.invariant, "witness": list(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    """Resultado de validate(): vacío si el álgebra es un monoide con tests"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def add(self, invariant: str, witness: Sequence[int], detail: str = "") -> None:
        self.violations.append(Violation(invariant, tuple(int(w) for w in witness), detail))

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.is_valid, "violations": [v.to_dict() for v in self.violations]}


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def validate(A: FiniteAlgebra) -> ValidationReport:
    """
    Verifica que A sea un monoide con tests

    Args:
        A: Álgebra a validar

    Returns:
        ValidationReport: Cada invariante violado con una tupla testigo
    """
    report = ValidationReport()
    M = A.mult.astype(np.int64)
    m = A.size
    elems = np.arange(m)

    # (ab)c = a(bc)
    left = M[M]
    right = M[:, M]
    hit = _first(left != right)
    if hit:
        report.add("associativity", hit)

    hit = _first((M[A.one, :] != elems) | (M[:, A.one] != elems))
    if hit:
        report.add("identity", hit)
    hit = _first((M[A.zero, :] != A.zero) | (M[:, A.zero] != A.zero))
    if hit:
        report.add("zero", hit)

    tests = list(A.tests)
    test_set = set(tests)
    for constant, name in ((A.zero, "zero"), (A.one, "one")):
        if constant not in test_set:
            report.add("tests-contain-constants", (constant,), f"falta {name} en B")

    closed = True
    for a, b in itertools.product(tests, repeat=2):
        if M[a, b] not in test_set:
            report.add("tests-closed", (a, b))
            closed = False
            break
    for a, b in itertools.product(tests, repeat=2):
        if M[a, b] != M[b, a]:
            report.add("tests-commute", (a, b))
            break
    for a in tests:
        if M[a, a] != a:
            report.add("tests-idempotent", (a,))
            break

    comp = dict(zip(tests, A.complement))
    complement_ok = True
    for a in tests:
        c = comp[a]
        if c not in test_set:
            report.add("complement-is-test", (a, c))
            complement_ok = False
        elif comp[c] != a:
            report.add("complement-involution", (a,))
            complement_ok = False
        if M[a, c] != A.zero:
            report.add("complement-meet", (a,), "α·α′ ≠ 0")

    if closed and complement_ok:
        _check_boolean(A, M, tests, comp, report)

    if A.domain is not None:
        Dm = A.domain
        for a in tests:
            if Dm[a] != a:
                report.add("domain-of-test", (a,), "D(α) ≠ α")
                break
        dom = [x for x in range(m) if Dm[x] == x]
        for e, f in itertools.product(dom, repeat=2):
            if M[e, f] != M[f, e] or Dm[M[e, f]] != M[e, f]:
                report.add("domain-semilattice", (e, f))
                break

    logger.debug(f"Validación: {len(report.violations)} violaciones")
    return report


def _check_boolean(A: FiniteAlgebra, M: np.ndarray, tests: List[int], comp: Dict[int, int],
                   report: ValidationReport) -> None:
    """Axiomas de álgebra de Boole con meet = producto y join α∨β := (α′β′)′"""

    def meet(a: int, b: int) -> int:
        return int(M[a, b])

    def join(a: int, b: int) -> int:
        return comp[int(M[comp[a], comp[b]])]

    for a in tests:
        if join(a, comp[a]) != A.one:
            report.add("boolean-excluded-middle", (a,))
            return
    for a, b in itertools.product(tests, repeat=2):
        if join(a, b) != join(b, a):
            report.add("boolean-join-commutative", (a, b))
            return
        if meet(a, join(a, b)) != a or join(a, meet(a, b)) != a:
            report.add("boolean-absorption", (a, b))
            return
    for a, b, c in itertools.product(tests, repeat=3):
        if join(join(a, b), c) != join(a, join(b, c)):
            report.add("boolean-join-associative", (a, b, c))
            return
        if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)):
            report.add("boolean-distributive", (a, b, c))
            return


def domain_elements(A: FiniteAlgebra) -> Tuple[int, ...]:
    """D(S) = {x : D(x) = x}"""
    if A.domain is None:
        raise InputError("El álgebra no tiene tabla de dominio")
    return tuple(int(x) for x in np.flatnonzero(A.domain == np.arange(A.size)))


def natural_order(A: FiniteAlgebra) -> np.ndarray:
    """
    Orden natural s ≤ t ⇔ s = D(s)t, como matriz booleana leq[s, t]
    """
    if A.domain is None:
        raise InputError("El orden natural necesita la tabla de dominio")
    elems = np.arange(A.size)
    return A.mult[A.domain[:, None], elems[None, :]] == elems[:, None]


def is_periodic(A: FiniteAlgebra) -> Tuple[bool, Dict[int, Tuple[int, int]]]:
    """
    Índice y período mínimos de cada elemento: x^i = x^(i+p)

    Returns:
        tuple: (True, {x: (i, p)}); todo semigrupo finito es periódico
    """
    periods: Dict[int, Tuple[int, int]] = {}
    for x in range(A.size):
        seen: Dict[int, int] = {}
        power, exponent = x, 1
        while power not in seen:
            seen[power] = exponent
            power = int(A.mult[power, x])
            exponent += 1
        first = seen[power]
        periods[x] = (first, exponent - first)
    return True, periods


@dataclass(frozen=True)
class Partition:
    """Partición del soporte en bloques disjuntos"""
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        normalized = tuple(sorted(tuple(sorted(int(x) for x in b)) for b in self.blocks if b))
        object.__setattr__(self, "blocks", normalized)

    @classmethod
    def identity(cls, size: int) -> "Partition":
        return cls(tuple((x,) for x in range(size)))

    @classmethod
    def from_pairs(cls, size: int, pairs: Sequence[Sequence[int]]) -> "Partition":
        """Partición mínima que identifica los grupos dados"""
        parent = list(range(size))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for group in pairs:
            for a, b in zip(group, group[1:]):
                parent[find(a)] = find(b)
        grouped: Dict[int, List[int]] = {}
        for x in range(size):
            grouped.setdefault(find(x), []).append(x)
        return cls(tuple(tuple(b) for b in grouped.values()))

    def block_of(self, size: int) -> np.ndarray:
        """Arreglo x ↦ número de bloque; verifica que sea una partición de 0..size-1"""
        owner = np.full(size, -1, dtype=np.int64)
        for i, block in enumerate(self.blocks):
            for x in block:
                if not 0 <= x < size or owner[x] != -1:
                    raise InputError(f"El elemento {x} aparece fuera de rango o en dos bloques")
                owner[x] = i
        if (owner < 0).any():
            raise InputError(f"Elementos sin bloque: {np.flatnonzero(owner < 0).tolist()}")
        return owner

    def to_dict(self) -> Dict[str, Any]:
        return {"blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Partition":
        try:
            return cls(tuple(tuple(b) for b in data["blocks"]))
        except (KeyError, TypeError) as e:
            raise InputError(f"Partición mal formada: {e}") from e


@dataclass
class CongruenceReport:
    """Resultado de check_congruence()"""
    is_congruence: bool = True
    operation: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None
    mixed_blocks: List[Tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "congruence": self.is_congruence,
            "operation": self.operation,
            "witness": list(self.witness) if self.witness else None,
            "mixed_blocks": [list(b) for b in self.mixed_blocks],
        }


def _representatives(A: FiniteAlgebra, P: Partition) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    block = P.block_of(A.size)
    reps = np.array([b[0] for b in P.blocks], dtype=np.int64)
    rep = reps[block]
    # posición de test del representante; si no es test se conserva la propia
    trep = np.array([A.test_index.get(int(rep[t]), i) for i, t in enumerate(A.tests)], dtype=np.int64)
    return block, rep, trep


def check_congruence(A: FiniteAlgebra, P: Partition) -> CongruenceReport:
    """
    Verifica que cada operación presente respete los bloques de P

    Args:
        A: Álgebra válida
        P: Partición candidata

    Returns:
        CongruenceReport: primera operación y tupla que fallan, y bloques que mezclan tests con no-tests
    """
    report = CongruenceReport()
    block, rep, trep = _representatives(A, P)
    for b in P.blocks:
        kinds = {A.is_test(x) for x in b}
        if len(kinds) > 1:
            report.mixed_blocks.append(b)

    checks = [("mult", A.mult, (rep, rep))]
    if A.domain is not None:
        checks.append(("D", A.domain, (rep,)))
    for name in ("star", "neq"):
        if getattr(A, name) is not None:
            checks.append((name, getattr(A, name), (rep, rep)))
    if A.eite is not None:
        checks.append(("eite", A.eite, (rep, trep, rep, rep)))
    if A.wc is not None:
        checks.append(("wc", A.wc, (rep, rep, rep, rep)))
    if A.whl is not None:
        checks.append(("while", A.whl, (rep, trep, rep)))

    for name, table, axes in checks:
        induced = block[table]
        moved = induced[np.ix_(*axes)]
        hit = _first(induced != moved)
        if hit:
            report.is_congruence = False
            report.operation = name
            report.witness = hit
            return report

    for a in A.tests:
        if A.is_test(int(rep[a])) and block[A.complement_of(a)] != block[A.complement_of(int(rep[a]))]:
            report.is_congruence = False
            report.operation = "complement"
            report.witness = (a,)
            return report
    return report


def quotient(A: FiniteAlgebra, P: Partition) -> FiniteAlgebra:
    """
    Álgebra cociente A/P

    Raises:
        CongruenceError: si P no es congruencia o algún bloque mezcla tests con no-tests
    """
    report = check_congruence(A, P)
    if not report.is_congruence:
        raise CongruenceError(f"La partición no es congruencia para '{report.operation}'", report.witness)
    if report.mixed_blocks:
        raise CongruenceError("Un bloque mezcla tests con no-tests", report.mixed_blocks[0])

    block, _, _ = _representatives(A, P)
    reps = np.array([b[0] for b in P.blocks], dtype=np.int64)
    test_blocks = [i for i, b in enumerate(P.blocks) if A.is_test(b[0])]
    trep = np.array([A.test_index[int(reps[i])] for i in test_blocks], dtype=np.int64)

    def induced(table: Optional[np.ndarray], *axes: np.ndarray) -> Optional[np.ndarray]:
        if table is None:
            return None
        return block[table[np.ix_(*axes)]]

    names = None
    if A.names:
        names = tuple("~".join(A.names[x] for x in b) for b in P.blocks)
    quotient_algebra = FiniteAlgebra(
        size=len(P.blocks),
        one=int(block[A.one]),
        zero=int(block[A.zero]),
        mult=induced(A.mult, reps, reps),
        tests=tuple(test_blocks),
        complement=tuple(int(block[A.complement_of(int(reps[i]))]) for i in test_blocks),
        domain=None if A.domain is None else block[A.domain[reps]],
        star=induced(A.star, reps, reps),
        neq=induced(A.neq, reps, reps),
        eite=induced(A.eite, reps, trep, reps, reps),
        wc=induced(A.wc, reps, reps, reps, reps),
        whl=induced(A.whl, reps, trep, reps),
        names=names,
    )
    logger.info(f"Cociente: {A.size} → {quotient_algebra.size} elementos")
    return quotient_algebra


def image_batches(op: str, R: np.ndarray, masks: np.ndarray) -> Iterator[Tuple[Tuple[int, ...], np.ndarray]]:
    """
    Imágenes de una operación sobre todas las tuplas de filas de R

    R tiene una fila de imagen por elemento (−1 = indefinido) y masks una
    fila booleana por test. Las operaciones cuaternarias y el while se
    entregan por bloques (prefijo de argumentos, resultados).
    """
    m, n = R.shape
    pts = np.arange(n)
    if op == "compose":
        safe = np.where(R >= 0, R, 0)
        out = R[:, safe].transpose(1, 0, 2)
        yield (), np.where((R >= 0)[:, None, :], out, UNDEFINED)
    elif op == "D":
        yield (), np.where(R >= 0, pts, UNDEFINED)
    elif op in ("star", "neq"):
        a, b = R[:, None, :], R[None, :, :]
        if op == "star":
            hit = (a >= 0) & (a == b)
        else:
            hit = (a >= 0) & (b >= 0) & (a != b)
        yield (), np.where(hit, pts, UNDEFINED)
    elif op == "eite":
        for s in range(m):
            defined = R[s] >= 0
            inside = masks[:, np.where(defined, R[s], 0)] & defined
            branch = np.where(inside[:, None, None, :], R[None, :, None, :], R[None, None, :, :])
            yield (s,), np.where(defined, branch, UNDEFINED)
    elif op == "wc":
        both = (R[None, :, :] >= 0) & (R[:, None, :] >= 0)
        for s in range(m):
            equal = (both[s] & (R[s] == R))[:, None, None, :]
            different = (both[s] & (R[s] != R))[:, None, None, :]
            yield (s,), np.where(equal, R[None, :, None, :],
                                 np.where(different, R[None, None, :, :], UNDEFINED))
    elif op == "while":
        T = masks.shape[0]
        a_axis = np.arange(T)[:, None, None]
        s_axis = np.arange(m)[None, :, None]
        for t in range(m):
            current = np.broadcast_to(pts, (T, m, n)).copy()
            result = np.full((T, m, n), UNDEFINED, dtype=np.int64)
            active = np.ones((T, m, n), dtype=bool)
            for _ in range(n + 1):
                safe = np.where(current >= 0, current, 0)
                guard = np.where(current >= 0, R[t][safe], UNDEFINED)
                active &= guard >= 0
                exits = active & ~masks[a_axis, np.where(guard >= 0, guard, 0)]
                result[exits] = current[exits]
                active &= ~exits
                current = np.where(active, R[s_axis, safe], UNDEFINED)
            yield (t,), result
    else:
        raise InputError(f"Operación de clausura desconocida: {op}")


def _wrap(label: str) -> str:
    return f"({label})" if ";" in label else label


class ModelClosure:
    """
    Clausura de una familia de funciones parciales bajo operaciones dadas

    Cada imagen se codifica como entero en base n+1 para buscar en bloque
    con numpy; la última pasada sin elementos nuevos produce las tablas.
    """

    def __init__(self, space: PointSet, bound: int):
        if space.size > MAX_ENCODED_POINTS:
            raise InputError(f"La clausura admite hasta {MAX_ENCODED_POINTS} puntos, se pidieron {space.size}")
        self.space = space
        self.bound = bound
        self.weights = (space.size + 1) ** np.arange(space.size, dtype=np.int64)
        self.rows: List[np.ndarray] = []
        self.labels: List[str] = []
        self.codes: Dict[int, int] = {}
        self._sorted: Optional[Tuple[np.ndarray, np.ndarray]] = None
        self.logger = logging.getLogger(__name__)

    def encode(self, rows: np.ndarray) -> np.ndarray:
        return ((rows + 1) * self.weights).sum(axis=-1)

    def add(self, image: np.ndarray, label: str, pending: int = 1) -> int:
        """Índice de la imagen, agregándola si es nueva; `pending` cuenta las que aún esperan, ésta incluida"""
        code = int(self.encode(image))
        if code in self.codes:
            return self.codes[code]
        if len(self.rows) >= self.bound:
            raise ClosureBoundError(f"La clausura supera la cota de {self.bound} elementos", pending)
        self.codes[code] = len(self.rows)
        self.rows.append(np.array(image, dtype=np.int64))
        self.labels.append(label)
        self._sorted = None
        return self.codes[code]

    def lookup(self, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Índices de las filas (−1 si son nuevas) y sus códigos"""
        if self._sorted is None:
            keys = np.array(list(self.codes.keys()), dtype=np.int64)
            order = np.argsort(keys)
            self._sorted = (keys[order], np.array(list(self.codes.values()), dtype=np.int64)[order])
        keys, positions = self._sorted
        codes = self.encode(rows)
        pos = np.minimum(np.searchsorted(keys, codes), len(keys) - 1)
        found = keys[pos] == codes
        return np.where(found, positions[pos], -1), codes

    def _label(self, op: str, args: Tuple[int, ...], tests: Sequence[int]) -> str:
        L = self.labels
        if op == "compose":
            return f"{L[args[0]]};{_wrap(L[args[1]])}"
        if op == "D":
            return f"D({L[args[0]]})"
        if op in ("star", "neq"):
            return f"{op}({L[args[0]]},{L[args[1]]})"
        if op == "eite":
            return f"ite({L[args[0]]},{L[tests[args[1]]]},{L[args[2]]},{L[args[3]]})"
        if op == "wc":
            return f"wc({','.join(L[a] for a in args)})"
        return f"while({L[args[0]]},{L[tests[args[1]]]},{L[args[2]]})"

    def close(self, operations: Sequence[str], tests: Sequence[int]) -> Dict[str, np.ndarray]:
        """
        Cierra bajo las operaciones y devuelve sus tablas

        Raises:
            ClosureBoundError: si el número de elementos supera la cota
        """
        rounds = 0
        while True:
            rounds += 1
            R = np.stack(self.rows)
            masks = R[list(tests)] >= 0
            m, T = R.shape[0], len(tests)
            shapes = {"compose": (m, m), "D": (m,), "star": (m, m), "neq": (m, m),
                      "eite": (m, T, m, m), "wc": (m, m, m, m), "while": (m, T, m)}
            tables: Dict[str, np.ndarray] = {}
            fresh: Dict[int, Tuple[np.ndarray, str]] = {}
            for op in operations:
                table = np.full(shapes[op], -1, dtype=np.int32)
                for prefix, results in image_batches(op, R, masks):
                    flat = results.reshape(-1, self.space.size)
                    found, codes = self.lookup(flat)
                    table[prefix] = found.reshape(results.shape[:-1])
                    missing = np.flatnonzero(found < 0)
                    if missing.size:
                        _, first = np.unique(codes[missing], return_index=True)
                        for k in sorted(missing[first].tolist()):
                            code = int(codes[k])
                            if code not in fresh:
                                local = np.unravel_index(k, results.shape[:-1])
                                args = prefix + tuple(int(v) for v in local)
                                fresh[code] = (flat[k], self._label(op, args, tests))
                tables[op] = table
            self.logger.debug(f"Clausura ronda {rounds}: {m} elementos, {len(fresh)} nuevos")
            if not fresh:
                return tables
            if len(self.rows) + len(fresh) > self.bound:
                raise ClosureBoundError(f"La clausura supera la cota de {self.bound} elementos", len(fresh))
            for image, label in fresh.values():
                self.add(image, label)


def _boolean_closure(space: PointSet, generators: Sequence[FrozenSet[int]]) -> List[FrozenSet[int]]:
    """Subálgebra de Boole de 2^X generada por los conjuntos dados"""
    full = frozenset(space.points())
    found: List[FrozenSet[int]] = []
    seen = set()
    pending = list(generators) + [frozenset(), full]
    while pending:
        current = pending.pop(0)
        if current in seen:
            continue
        seen.add(current)
        found.append(current)
        pending.append(full - current)
        pending.extend(current & other for other in list(seen))
    return found


def from_model(maps: Mapping[str, PartialMap], tests: Mapping[str, PartialMap],
               close_under: Sequence[str] = ("compose", "D"), bound: int = 4096) -> FiniteAlgebra:
    """
    Tabula la submonoide con tests generada por mapas y tests concretos

    Args:
        maps: Generadores con nombre
        tests: Tests con nombre (restricciones de la identidad)
        close_under: Operaciones bajo las que se cierra y que se tabulan
        bound: Número máximo de elementos

    Returns:
        FiniteAlgebra: con `names` (expresiones de origen) y `realization`

    Raises:
        ClosureBoundError: si la clausura excede `bound`
    """
    everything = list(maps.values()) + list(tests.values())
    if not everything:
        raise InputError("from_model necesita al menos un generador")
    space = everything[0].space
    if any(f.space.size != space.size for f in everything):
        raise InputError("Los generadores viven en espacios de puntos distintos")
    operations = [op for op in CLOSURE_OPERATIONS if op in set(close_under) | {"compose"}]
    unknown = set(close_under) - set(CLOSURE_OPERATIONS)
    if unknown:
        raise InputError(f"Operaciones de clausura desconocidas: {sorted(unknown)}")

    closure = ModelClosure(space, bound)
    seeds = list(maps.items()) + list(tests.items())
    for i, (name, f) in enumerate(seeds):
        before = len(closure.rows)
        # quedan también las constantes 0 y 1
        index = closure.add(f.image, name, len(seeds) - i + 2)
        if len(closure.rows) == before:
            logger.debug(f"{name} coincide con {closure.labels[index]}; se conserva el primer nombre")
    closure.add(np.full(space.size, UNDEFINED), "0", 2)
    closure.add(np.arange(space.size), "1")

    test_sets = []
    for name, t in tests.items():
        if not t.is_partial_identity():
            raise SortError(f"El test {name} no es una restricción de la identidad", t)
        test_sets.append(t.domain)
    boolean = _boolean_closure(space, test_sets)
    test_indices = []
    for i, members in enumerate(boolean):
        image = np.array([x if x in members else UNDEFINED for x in space.points()], dtype=np.int64)
        label = "{" + ",".join(str(x) for x in sorted(members)) + "}"
        test_indices.append(closure.add(image, label, len(boolean) - i))

    tables = closure.close(operations, test_indices)
    realization = tuple(PartialMap(space, row) for row in closure.rows)
    by_members = {realization[t].domain: t for t in test_indices}
    full = frozenset(space.points())
    complement = tuple(by_members[full - realization[t].domain] for t in test_indices)

    algebra = FiniteAlgebra(
        size=len(realization),
        one=closure.codes[int(closure.encode(np.arange(space.size)))],
        zero=closure.codes[int(closure.encode(np.full(space.size, UNDEFINED)))],
        mult=tables["compose"],
        tests=tuple(test_indices),
        complement=complement,
        domain=tables.get("D"),
        star=tables.get("star"),
        neq=tables.get("neq"),
        eite=tables.get("eite"),
        wc=tables.get("wc"),
        whl=tables.get("while"),
        names=tuple(closure.labels),
        realization=realization,
    )
    logger.info(f"from_model: {len(maps) + len(tests)} generadores → {algebra.size} elementos, "
                f"{len(test_indices)} tests, operaciones {operations}")
    return algebra


def from_concrete(model: ConcreteModel, close_under: Optional[Sequence[str]] = None,
                  bound: int = 4096) -> FiniteAlgebra:
    """Atajo: from_model sobre un ConcreteModel con sus operaciones declaradas"""
    return from_model(model.maps, model.tests, close_under or model.operations, bound)
