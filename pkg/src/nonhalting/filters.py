"""
Filtros de D(S), pares determinativos y la representación funcional
θ = ⋃θ_F de un álgebra finita, con su verificador

En un semirretículo finito todo filtro es principal, así que un filtro se
guarda por su generador g: ↑g = {f ∈ D(S) : g·f = g}.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import FiniteAlgebra, domain_elements, image_batches, natural_order
from .contexts import EvalContext
from .errors import FilterError, InputError, InvariantViolation
from .laws import LemmaReport
from .pfun import PartialMap, PointSet, UNDEFINED

logger = logging.getLogger(__name__)


def _require_domain(A: FiniteAlgebra) -> None:
    if A.domain is None:
        raise InputError("Los filtros necesitan la tabla de dominio")


@dataclass(frozen=True)
class Filter:
    """Filtro principal ↑generator de D(S)"""
    algebra: FiniteAlgebra = field(compare=False, repr=False)
    generator: int

    def contains(self, f: int) -> bool:
        return int(self.algebra.domain[f]) == f and int(self.algebra.mult[self.generator, f]) == self.generator

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(f for f in domain_elements(self.algebra) if self.contains(f))

    @property
    def is_proper(self) -> bool:
        return self.generator != self.algebra.zero

    def to_dict(self) -> Dict[str, Any]:
        return {"generator": self.generator, "members": list(self.members)}


def all_filters(A: FiniteAlgebra) -> List[Filter]:
    """Un filtro propio por cada elemento de dominio no nulo"""
    _require_domain(A)
    return [Filter(A, g) for g in domain_elements(A) if g != A.zero]


def extend_filter(F: Filter, h: int) -> Filter:
    """
    Filtro generado por F ∪ {h}

    Raises:
        FilterError: si h no es elemento de dominio o ya está en F
    """
    A = F.algebra
    if int(A.domain[h]) != h:
        raise FilterError(f"{A.label(h)} no es un elemento de dominio")
    if F.contains(h):
        raise FilterError(f"{A.label(h)} ya pertenece al filtro ↑{A.label(F.generator)}")
    return Filter(A, int(A.mult[F.generator, h]))


def _separating_generators(A: FiniteAlgebra, a: int, b: int) -> List[int]:
    _require_domain(A)
    if natural_order(A)[a, b]:
        raise FilterError(f"{A.label(a)} ≤ {A.label(b)}: no hay filtros separadores")
    Da = int(A.domain[a])
    return [g for g in domain_elements(A)
            if A.mult[g, Da] == g and A.mult[g, a] != A.mult[g, b]]


def separating_filters(A: FiniteAlgebra, a: int, b: int) -> List[Filter]:
    """Filtros con D(a) ∈ F y sin e ∈ F tal que e·a = e·b"""
    return [Filter(A, g) for g in _separating_generators(A, a, b)]


def _minimal(A: FiniteAlgebra, generators: Sequence[int]) -> List[int]:
    # entre elementos de dominio, h ≤ g sii h = h·g
    return [g for g in generators
            if not any(h != g and A.mult[h, g] == h for h in generators)]


def maximal_separating(A: FiniteAlgebra, a: int, b: int) -> List[Filter]:
    """Filtros (a,b)-separadores maximales: los de generador minimal"""
    return [Filter(A, g) for g in _minimal(A, _separating_generators(A, a, b))]


@dataclass(frozen=True)
class DeterminativePair:
    """
    Par (W_F, ε_F) de un filtro

    W = {a : D(a) ∉ F}; las clases de ε_F particionan S∖W con x ~ y sii g·x = g·y.
    """
    filter: Filter
    W: FrozenSet[int]
    classes: Tuple[Tuple[int, ...], ...]

    @property
    def class_array(self) -> np.ndarray:
        """Elemento ↦ clase, −1 en W"""
        owner = np.full(self.filter.algebra.size, UNDEFINED, dtype=np.int64)
        for i, members in enumerate(self.classes):
            owner[list(members)] = i
        return owner

    def to_dict(self) -> Dict[str, Any]:
        return {"filter_generator": self.filter.generator, "W": sorted(self.W),
                "classes": [list(c) for c in self.classes]}


def determinative_pair(A: FiniteAlgebra, F: Filter) -> DeterminativePair:
    if not F.is_proper:
        raise FilterError("El filtro impropio no tiene par determinativo")
    g = F.generator
    W = frozenset(x for x in range(A.size) if A.mult[g, A.domain[x]] != g)
    grouped: Dict[int, List[int]] = {}
    for x in range(A.size):
        if x not in W:
            grouped.setdefault(int(A.mult[g, x]), []).append(x)
    classes = tuple(sorted((tuple(members) for members in grouped.values()), key=lambda c: c[0]))
    return DeterminativePair(F, W, classes)


def psi(A: FiniteAlgebra, pair: DeterminativePair, s: int) -> PartialMap:
    """
    ψ_s: clase(x) ↦ clase(x·s) si x·s ∉ W

    Raises:
        InvariantViolation: si dos representantes de una clase no coinciden
    """
    owner = pair.class_array
    targets = owner[A.mult[:, s]]
    image = np.full(len(pair.classes), UNDEFINED, dtype=np.int64)
    for c, members in enumerate(pair.classes):
        values = targets[list(members)]
        if (values != values[0]).any():
            raise InvariantViolation(
                f"ψ_{A.label(s)} mal definida en la clase de {A.label(members[0])} "
                f"(filtro ↑{A.label(pair.filter.generator)})")
        image[c] = values[0]
    return PartialMap(PointSet(len(pair.classes)), image)


@dataclass
class Component:
    pair: Tuple[int, int]
    determinative: DeterminativePair
    offset: int

    def to_dict(self) -> Dict[str, Any]:
        return {"filter_generator": self.determinative.filter.generator, "pair": list(self.pair),
                "classes": [list(c) for c in self.determinative.classes]}


@dataclass
class Representation:
    """θ: elemento ↦ función parcial sobre la unión disjunta de los S_F"""
    algebra: FiniteAlgebra
    components: List[Component]
    space: PointSet
    images: Tuple[PartialMap, ...]

    def theta(self, x: int) -> PartialMap:
        return self.images[x]

    def point_names(self) -> List[str]:
        """Cada punto como componente:etiqueta del menor elemento de su clase"""
        names = []
        for i, comp in enumerate(self.components):
            names.extend(f"{i}:{self.algebra.label(c[0])}" for c in comp.determinative.classes)
        return names

    def to_dict(self) -> Dict[str, Any]:
        return {
            "components": [c.to_dict() for c in self.components],
            "points": self.point_names(),
            "theta": {str(x): f.entries() for x, f in enumerate(self.images)},
        }


class RepresentationBuilder:
    """Construye θ a partir de todos los filtros separadores maximales"""

    def __init__(self, algebra: FiniteAlgebra):
        _require_domain(algebra)
        self.algebra = algebra
        self.logger = logging.getLogger(__name__)

    def components(self) -> List[Tuple[Tuple[int, int], Filter]]:
        A = self.algebra
        leq = natural_order(A)
        seen: Dict[int, Tuple[int, int]] = {}
        for a, b in itertools.product(range(A.size), repeat=2):
            if leq[a, b]:
                continue
            for F in maximal_separating(A, a, b):
                seen.setdefault(F.generator, (a, b))
        return [(pair, Filter(A, g)) for g, pair in seen.items()]

    def build(self) -> Representation:
        A = self.algebra
        components: List[Component] = []
        offset = 0
        for pair, F in self.components():
            det = determinative_pair(A, F)
            components.append(Component(pair, det, offset))
            offset += len(det.classes)
        space = PointSet(offset)
        rows = np.full((A.size, offset), UNDEFINED, dtype=np.int64)
        for comp in components:
            width = len(comp.determinative.classes)
            for s in range(A.size):
                local = psi(A, comp.determinative, s).image
                rows[s, comp.offset:comp.offset + width] = np.where(local >= 0, local + comp.offset, UNDEFINED)
        images = tuple(PartialMap(space, row) for row in rows)
        self.logger.info(f"Representación: {len(components)} componentes, {offset} puntos")
        return Representation(A, components, space, images)


def build_representation(A: FiniteAlgebra) -> Representation:
    return RepresentationBuilder(A).build()


@dataclass
class RepresentationFailure:
    check: str
    location: Tuple[int, ...]
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.check, "location": list(self.location), "detail": self.detail}


@dataclass
class RepresentationReport:
    failures: List[RepresentationFailure] = field(default_factory=list)
    checked: List[str] = field(default_factory=list)

    @property
    def is_faithful(self) -> bool:
        return not self.failures

    def failed_checks(self) -> List[str]:
        return sorted({f.check for f in self.failures})

    def to_dict(self) -> Dict[str, Any]:
        return {"faithful": self.is_faithful, "checked": self.checked,
                "failures": [f.to_dict() for f in self.failures]}


TABLE_CHECKS = (("compose", "mult"), ("D", "domain"), ("star", "star"), ("neq", "neq"),
                ("eite", "eite"), ("wc", "wc"), ("while", "whl"))


def verify_representation(A: FiniteAlgebra, rep: Representation, limit: int = 20) -> RepresentationReport:
    """
    Verifica que θ sea inyectiva y preserve cada operación presente

    Args:
        A: Álgebra representada
        rep: Representación construida
        limit: Máximo de fallas registradas por chequeo

    Returns:
        RepresentationReport: cada falla con su ubicación
    """
    report = RepresentationReport()
    R = np.stack([f.image for f in rep.images]) if rep.images else np.zeros((0, 0), dtype=np.int64)
    N = rep.space.size
    counts: Dict[str, int] = {}

    def fail(check: str, location: Sequence[int], detail: str = "") -> None:
        counts[check] = counts.get(check, 0) + 1
        if counts[check] <= limit:
            report.failures.append(RepresentationFailure(check, tuple(int(v) for v in location), detail))

    report.checked.append("injective")
    first: Dict[bytes, int] = {}
    for x in range(A.size):
        key = R[x].tobytes()
        if key in first:
            fail("injective", (first[key], x), f"θ({A.label(first[key])}) = θ({A.label(x)})")
        else:
            first[key] = x

    report.checked += ["identity", "zero"]
    if not np.array_equal(R[A.one], np.arange(N)):
        fail("identity", (A.one,))
    if (R[A.zero] != UNDEFINED).any():
        fail("zero", (A.zero,))

    tests = list(A.tests)
    report.checked += ["test-image", "complement-coverage", "complement-overlap"]
    points = np.arange(N)
    for a in tests:
        row = R[a]
        if ((row >= 0) & (row != points)).any():
            fail("test-image", (a,), f"θ({A.label(a)}) no es restricción de la identidad")
        c = A.complement_of(a)
        inside, outside = R[a] >= 0, R[c] >= 0
        for z in np.flatnonzero(~(inside | outside)):
            fail("complement-coverage", (a, z), f"el estado {z} no está ni en θ({A.label(a)}) ni en θ({A.label(c)})")
        for z in np.flatnonzero(inside & outside):
            fail("complement-overlap", (a, z))

    masks = R[tests] >= 0 if tests else np.zeros((0, N), dtype=bool)
    for op, table_name in TABLE_CHECKS:
        table = getattr(A, table_name)
        if table is None:
            continue
        report.checked.append(op)
        for prefix, results in image_batches(op, R, masks):
            expected = R[table[prefix]]
            wrong = (expected != results).any(axis=-1)
            for hit in np.argwhere(wrong):
                fail(op, prefix + tuple(hit))

    for check, total in counts.items():
        if total > limit:
            logger.warning(f"{check}: {total} fallas, se registran las primeras {limit}")
    logger.info(f"Verificación de la representación: {len(report.failures)} fallas registradas")
    return report


def _power_cycle(ctx: EvalContext, x: Any) -> List[Any]:
    """x^0, x^1, ... hasta la primera repetición (excluida)"""
    powers = [ctx.one()]
    current = ctx.one()
    while True:
        current = ctx.mult(current, x)
        if current in powers:
            return powers
        powers.append(current)


def stabilization_bound(ctx: EvalContext, x: Any, f: Any) -> int:
    """
    Menor n tal que toda pieza x^j·f con j > n es 0 o repite una anterior
    """
    zero = ctx.zero()
    seen: List[Any] = []
    bound = 0
    for j, power in enumerate(_power_cycle(ctx, x)):
        piece = ctx.mult(power, f)
        if piece != zero and piece not in seen:
            bound = j
        seen.append(piece)
    return bound


@dataclass
class UnrollResult:
    value: Any
    trace: List[Any]
    bound: int
    powers_hold: bool
    while_value: Optional[Any] = None

    @property
    def matches_while(self) -> Optional[bool]:
        if self.while_value is None:
            return None
        return self.value == self.while_value


def while_unroll(ctx: EvalContext, t: Any, alpha: Any, s: Any) -> UnrollResult:
    """
    Despliega ((t,α):s) como if-then-else anidados v_0..v_n

    Con e = D(tα), f = D(tα′) y x = e·s: v_0 = x^n f y
    v_{k+1} = (x^{n-k-1} t, α)[v_k, x^{n-k-1} f].

    Raises:
        CapabilityError: sin eite
    """
    ctx.require("eite", "D", "complement")
    e = ctx.domain(ctx.mult(t, alpha))
    f = ctx.domain(ctx.mult(t, ctx.complement(alpha)))
    x = ctx.mult(e, s)
    n = stabilization_bound(ctx, x, f)
    powers = [ctx.one()]
    for _ in range(n):
        powers.append(ctx.mult(powers[-1], x))

    value = ctx.mult(powers[n], f)
    trace = [value]
    for k in range(n):
        prefix = powers[n - k - 1]
        value = ctx.eite(ctx.mult(prefix, t), alpha, value, ctx.mult(prefix, f))
        trace.append(value)

    while_value = ctx.whl(t, alpha, s) if "while" in ctx.capabilities else None
    target = while_value if while_value is not None else value
    powers_hold = all(ctx.leq(ctx.mult(p, f), target) for p in powers)
    return UnrollResult(value, trace, n, powers_hold, while_value)


@dataclass
class MinbResult:
    holds: bool
    minimum: Optional[Any]
    displayed_minimum: Optional[Any]
    while_value: Any

    @property
    def readings_disagree(self) -> bool:
        return self.minimum != self.displayed_minimum


def _minimum(ctx: EvalContext, candidates: Sequence[Any]) -> Optional[Any]:
    for c in candidates:
        if all(ctx.leq(c, other) for other in candidates):
            return c
    return None


def minb_check(ctx: EvalContext, t: Any, alpha: Any, s: Any) -> MinbResult:
    """
    ((t,α):s) es el menor u con D(tα)su = D(tα)u y D(tα′)u = D(tα′)

    También calcula el mínimo con la lectura D(tα)su = D(tα)s para señalar
    modelos donde ambas lecturas difieren.
    """
    e = ctx.domain(ctx.mult(t, alpha))
    f = ctx.domain(ctx.mult(t, ctx.complement(alpha)))
    es = ctx.mult(e, s)
    exits = [u for u in ctx.elements() if ctx.mult(f, u) == f]
    candidates = [u for u in exits if ctx.mult(es, u) == ctx.mult(e, u)]
    displayed = [u for u in exits if ctx.mult(es, u) == es]
    loop = ctx.whl(t, alpha, s)
    minimum = _minimum(ctx, candidates)
    result = MinbResult(loop in candidates and minimum == loop, minimum, _minimum(ctx, displayed), loop)
    if result.readings_disagree:
        logger.debug(f"Las dos lecturas del mínimo difieren para t={ctx.label(t)}, α={ctx.label(alpha)}, "
                     f"s={ctx.label(s)}")
    return result


def check_principal_filters(A: FiniteAlgebra, max_domain: int = 12) -> LemmaReport:
    """
    Todo ↑g es filtro y todo filtro propio de D(S) es ↑(su ínfimo)
    """
    _require_domain(A)
    report = LemmaReport("principal-filters")
    dom = list(domain_elements(A))
    if len(dom) > max_domain:
        raise InputError(f"|D(S)| = {len(dom)} supera la cota de {max_domain} para la enumeración")
    M = A.mult

    def up(g: int) -> FrozenSet[int]:
        return frozenset(f for f in dom if M[g, f] == g)

    def is_filter(members: FrozenSet[int]) -> bool:
        if not members:
            return False
        for f, h in itertools.product(members, repeat=2):
            if M[f, h] not in members:
                return False
        return all(h in members for f in members for h in dom if M[f, h] == f)

    for g in dom:
        report.examined += 1
        if g != A.zero and not is_filter(up(g)):
            report.violations.append({"generator": g, "problem": "↑g no es filtro"})
    for r in range(1, len(dom) + 1):
        for subset in itertools.combinations(dom, r):
            members = frozenset(subset)
            if A.zero in members or not is_filter(members):
                continue
            report.examined += 1
            meet = A.one
            for f in members:
                meet = int(M[meet, f])
            if members != up(meet):
                report.violations.append({"filter": sorted(members), "meet": meet})
    return report


def check_star_lemma(A: FiniteAlgebra) -> LemmaReport:
    """x, y ∉ W_F y x ε_F y sii x∗y ∈ F, para todo filtro F"""
    if A.star is None:
        raise InputError("El chequeo necesita la tabla de ∗")
    report = LemmaReport("star-filter")
    for F in all_filters(A):
        det = determinative_pair(A, F)
        owner = det.class_array
        for x, y in itertools.product(range(A.size), repeat=2):
            report.examined += 1
            related = owner[x] >= 0 and owner[x] == owner[y]
            if related != F.contains(int(A.star[x, y])):
                report.violations.append({"filter": F.generator, "x": x, "y": y})
    return report


def check_maxagree_lemma(A: FiniteAlgebra) -> LemmaReport:
    """
    Maximal (a,b)-separador coincide con maximal entre los filtros con
    D(a) ∈ F y a∗b ∉ F
    """
    if A.star is None:
        raise InputError("El chequeo necesita la tabla de ∗")
    report = LemmaReport("maximal-agreement")
    leq = natural_order(A)
    dom = [g for g in domain_elements(A) if g != A.zero]
    for a, b in itertools.product(range(A.size), repeat=2):
        if leq[a, b]:
            continue
        report.examined += 1
        separating = {F.generator for F in maximal_separating(A, a, b)}
        Da, ab = int(A.domain[a]), int(A.star[a, b])
        avoiding = [g for g in dom if A.mult[g, Da] == g and A.mult[g, ab] != g]
        if separating != set(_minimal(A, avoiding)):
            report.violations.append({"a": a, "b": b, "separating": sorted(separating),
                                      "avoiding": sorted(_minimal(A, avoiding))})
    return report
