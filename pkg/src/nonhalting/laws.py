"""
Registro de leyes (ecuaciones y cuasi-ecuaciones) y verificador
exhaustivo o por muestreo con testigos reproducibles
"""

import itertools
import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import validate
from .contexts import EvalContext, TableContext
from .errors import CapabilityError, InputError, SortError
from .terms import Domain, Term, TermParser, Var, compile_term, expand_derived

TEST_VARIABLES = ("a", "b")
DOMAIN_VARIABLES = ("e",)


def conventional_sorts(names: Iterable[str]) -> Dict[str, str]:
    """a, b son tests; e es elemento de dominio; el resto, elementos"""
    sorts = {}
    for name in names:
        if name in TEST_VARIABLES:
            sorts[name] = "test"
        elif name in DOMAIN_VARIABLES:
            sorts[name] = "domelem"
        else:
            sorts[name] = "elem"
    return sorts


def leq(x: str, y: str) -> str:
    """x ≤ y escrito como la ecuación x = D(x);y"""
    return f"{x} = D({x});{y}"


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Law:
    """
    Ley con nombre: premisas ⇒ conclusiones

    Las variables se listan en el orden en que se enumeran las asignaciones.
    """
    name: str
    variables: Tuple[Tuple[str, str], ...]
    premises: Tuple[Equation, ...]
    conclusions: Tuple[Equation, ...]
    source: str = ""

    @classmethod
    def define(cls, name: str, conclusions: Sequence[str], premises: Sequence[str] = (),
               variables: Optional[Sequence[str]] = None, source: str = "") -> "Law":
        """Construye una ley a partir de ecuaciones en la sintaxis de términos"""
        texts = list(premises) + list(conclusions)
        equations = []
        raw = []
        for text in texts:
            if text.count("=") != 1:
                raise InputError(f"Ley {name}: cada ecuación lleva exactamente un '=': {text!r}")
            raw.append(text.split("="))
        # primera pasada sólo para descubrir variables, sin chequeo de tipos
        discovery = TermParser(default_sort="test")
        found: List[str] = []
        for lhs, rhs in raw:
            for side in (lhs, rhs):
                for var in discovery.parse(side).variables():
                    if var.name not in found:
                        found.append(var.name)
        order = list(variables) if variables else found
        if set(order) != set(found):
            raise InputError(f"Ley {name}: variables declaradas {order} y usadas {found} no coinciden")
        parser_sorts = conventional_sorts(order)
        parser = TermParser(parser_sorts)
        for lhs, rhs in raw:
            equations.append(Equation(parser.parse(lhs), parser.parse(rhs)))
        return cls(
            name=name,
            variables=tuple((v, parser_sorts[v]) for v in order),
            premises=tuple(equations[:len(premises)]),
            conclusions=tuple(equations[len(premises):]),
            source=source,
        )

    @property
    def is_implication(self) -> bool:
        return bool(self.premises)

    def __str__(self) -> str:
        body = " ∧ ".join(str(c) for c in self.conclusions)
        if self.premises:
            return f"{' ∧ '.join(str(p) for p in self.premises)} ⇒ {body}"
        return body

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "variables": {v: s for v, s in self.variables},
            "premises": [str(p) for p in self.premises],
            "conclusions": [str(c) for c in self.conclusions],
            "source": self.source,
        }


def _law_table() -> List[Law]:
    L = Law.define
    return [
        # monoide con tests
        L("assoc", ["(s;t);u = s;(t;u)"]),
        L("one-left", ["1;s = s"]),
        L("one-right", ["s;1 = s"]),
        L("zero-left", ["0;s = 0"]),
        L("zero-right", ["s;0 = 0"]),
        L("tests-commute", ["a;b = b;a"]),
        L("tests-idempotent", ["a;a = a"]),
        L("complement-meet", ["a;not(a) = 0"]),
        L("complement-involution", ["not(not(a)) = a"]),
        L("complement-join", ["not(not(a);a) = 1"]),
        # restricción con tests
        L("D1", ["D(s);s = s"], source="D(s)s=s"),
        L("Dleft", ["D(s;t) = D(s);D(s;t)"], source="D(st)=D(s)D(st)"),
        L("Dcom", ["D(s);D(t) = D(t);D(s)"], source="D(s)D(t)=D(t)D(s)"),
        L("DD", ["D(D(s)) = D(s)"], source="D(D(s))=D(s)"),
        L("Dtwisted", ["s;D(t) = D(s;t);s"], source="sD(t)=D(st)s"),
        L("DT1", ["D(a) = a"], source="D(α)=α"),
        L("DT2", ["D(s);t = D(s);u"],
          premises=["D(s;a);t = D(s;a);u", "D(s;not(a));t = D(s;not(a));u"],
          variables=["s", "a", "t", "u"], source="D(sβ)t=D(sβ)u, D(sβ′)t=D(sβ′)u ⇒ D(s)t=D(s)u"),
        L("D-compose-domain", ["D(s;t) = D(s;D(t))"], source="D(st)=D(sD(t))"),
        L("D-idempotent", ["D(s);D(s) = D(s)"], source="D(s)²=D(s)"),
        L("D-meet", ["D(D(s);D(t)) = D(s);D(t)"], source="D(D(s)D(t))=D(s)D(t)"),
        # if-then-else extendido
        L("EITE1", ["D(s);t = ite(s,a,t,t)"], variables=["s", "a", "t"], source="D(s)t=(s,α)[t,t]"),
        L("EITE2", ["D(s;a);ite(s,a,t,u) = D(s;a);t"], source="D(sα)((s,α)[t,u])=D(sα)t"),
        L("EITE3", ["D(s;not(a));ite(s,a,t,u) = D(s;not(a));u"], source="D(sα′)((s,α)[t,u])=D(sα′)u"),
        L("EITE4", ["ite(s,a,t,u) = ite(s,a,D(s;a);t,D(s;not(a));u)"],
          source="(s,α)[t,u]=(s,α)[D(sα)t,D(sα′)u]"),
        L("EITE5", [leq("D(ite(s,a,t,u))", "D(s)")], source="D((s,α)[t,u])≤D(s)"),
        L("EITE-domain", ["D(s) = ite(s,1,1,1)"], source="D(s)=(s,1)[1,1]"),
        L("EITE-compose", ["s;ite(v,a,t,u) = ite(s;v,a,s;t,s;u)"], variables=["s", "v", "a", "t", "u"],
          source="s·(v,α)[t,u]=(sv,α)[st,su]"),
        # agreeable retorcido
        L("A1", ["star(s,s);s = s"], source="(s∗s)s=s"),
        L("Acom", ["star(s,t) = star(t,s)"], source="s∗t=t∗s"),
        L("Aeq", ["star(s,t);s = star(s,t);t"], source="(s∗t)s=(s∗t)t"),
        L("Anorm", ["star(u,v);star(s,t) = star(s,t);star(u,v)"], variables=["s", "t", "u", "v"],
          source="(u∗v)(s∗t)=(s∗t)(u∗v)"),
        L("Atwisted", ["u;star(s,t) = star(u;s,u;t);u"], variables=["s", "t", "u"], source="u(s∗t)=(us∗ut)u"),
        L("A-domain", ["D(s) = star(s,s)"], source="D(s)=s∗s"),
        L("DT2A", [leq("D(s)", "e")], premises=[leq("D(s;a)", "e"), leq("D(s;not(a))", "e")],
          variables=["s", "a", "e"], source="D(sβ)≤e, D(sβ′)≤e ⇒ D(s)≤e"),
        # desacuerdo
        L("in1", ["D(neq(s,t)) = neq(s,t)"], source="D(s≠t)=(s≠t)"),
        L("intwist", ["s;neq(t,u) = neq(s;t,s;u);s"], source="s(t≠u)=(st≠su)s"),
        L("ineq", ["star(s,t);neq(s,t) = 0"], source="(s∗t)(s≠t)=0"),
        L("innorm", ["e;neq(u,v) = neq(e;u,e;v)"], source="e(u≠v)=(eu≠ev)"),
        L("inimp", [leq("D(s);D(t)", "e")], premises=[leq("star(s,t)", "e"), leq("neq(s,t)", "e")],
          variables=["s", "t", "e"], source="(s∗t)≤e, (s≠t)≤e ⇒ D(s)D(t)≤e"),
        # comparación débil
        L("comp1", ["star(s,t);wc(s,t,u,v) = star(s,t);u"], source="(s∗t)·(s=t)[u,v]=(s∗t)u"),
        L("comp2", ["neq(s,t);wc(s,t,u,v) = neq(s,t);v"], source="(s≠t)·(s=t)[u,v]=(s≠t)v"),
        L("comp3", [leq("D(wc(s,t,u,v))", "D(s);D(t)")], source="D((s=t)[u,v])≤D(s)D(t)"),
        L("wc1", ["wc(s,t,u,u) = D(s);D(t);u"], source="(s=t)[u,u]=D(s)D(t)u"),
        L("wc2", ["wc(s,t,u,v) = wc(s,t,star(s,t);u,neq(s,t);v)"],
          source="(s=t)[u,v]=(s=t)[(s∗t)u,(s≠t)v]"),
        L("wc-domain", ["D(s) = wc(s,s,1,0)"], source="D(f)=(f=f)[1,0]"),
        # while-do extendido
        L("W12", ["while(t,a,s) = ite(t,a,s;while(t,a,s),1)"], variables=["t", "a", "s"],
          source="((t,α):s)=(t,α)[s((t,α):s),1]"),
        L("W1", ["D(t;a);while(t,a,s) = D(t;a);s;while(t,a,s)"], variables=["t", "a", "s"],
          source="D(tα)((t,α):s)=D(tα)s((t,α):s)"),
        L("W2", ["D(t;not(a));while(t,a,s) = D(t;not(a))"], variables=["t", "a", "s"],
          source="D(tα′)((t,α):s)=D(tα′)"),
        L("Kleenean-1", ["while(t,a,s);D(t;not(a)) = while(t,a,s)"], variables=["t", "a", "s"],
          source="((t,α):s)D(tα′)=((t,α):s)"),
        L("Kleenean-2", [leq("while(t,a,s);u", "u")], premises=[leq("D(t;a);s;u", "u")],
          variables=["t", "a", "s", "u"], source="D(tα)su≤u ⇒ ((t,α):s)u≤u"),
        # orden natural
        L("order-stable", [leq("s1;s2", "t1;t2")], premises=[leq("s1", "t1"), leq("s2", "t2")],
          variables=["s1", "s2", "t1", "t2"], source="s₁≤t₁, s₂≤t₂ ⇒ s₁s₂≤t₁t₂"),
        L("order-antisymmetric", ["s = t"], premises=[leq("s", "t"), leq("t", "s")], variables=["s", "t"]),
        L("order-transitive", [leq("s", "u")], premises=[leq("s", "t"), leq("t", "u")], variables=["s", "t", "u"]),
        # operaciones derivadas
        L("P-def", ["P(s) = not(D(s))"], source="P(s):=D(s)′"),
        L("bowtie-def", ["bowtie(s,t) = not(not(star(s,t));not(P(s);P(t)))"], source="(s⋈t):=(s∗t)∪D(s)′D(t)′"),
        L("cup-def", ["cup(s,t) = ite(1,D(s),s,t)"], source="s⊔t:=D(s)[s,t]"),
        L("bowtie-star", ["star(s,t) = bowtie(s,t);D(s);D(t)"], source="s∗t:=(s⋈t)D(s)D(t)"),
        L("bowtie-neq", ["neq(s,t) = not(bowtie(s,t));D(s);D(t)"], source="s≠t=(s⋈t)′D(s)D(t)"),
        L("bowtie-neq-literal", ["neq(s,t) = not(bowtie(s,t))"], source="s≠t:=(s⋈t)′"),
        L("cup-ite", ["ite(s,a,t,u) = cup(D(s;a);t,D(s;not(a));u)"], source="(s,α)[t,u]:=D(sα)t⊔D(sα′)u"),
        L("cup-wc", ["wc(s,t,u,v) = cup(star(s,t);u,neq(s,t);v)"], source="(s=t)[u,v]=(s∗t)u∪(s≠t)v"),
    ]


_REGISTRY: Optional[Dict[str, Law]] = None


def registry() -> Dict[str, Law]:
    """Todas las leyes por nombre"""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {law.name: law for law in _law_table()}
    return _REGISTRY


@dataclass(frozen=True)
class Suite:
    name: str
    laws: Tuple[str, ...]
    structural: bool = False
    description: str = ""

    def resolve(self) -> List[Law]:
        table = registry()
        return [table[name] for name in self.laws]


MONOID = ("assoc", "one-left", "one-right", "zero-left", "zero-right", "tests-commute",
          "tests-idempotent", "complement-meet", "complement-involution", "complement-join")
RESTRICTION = ("D1", "Dleft", "Dcom", "DD", "Dtwisted", "DT1", "DT2")
EITE = RESTRICTION + ("EITE2", "EITE3", "EITE5", "EITE1", "EITE4", "EITE-domain", "EITE-compose")
TWISTED = RESTRICTION + ("A1", "Acom", "Aeq", "Anorm", "Atwisted", "A-domain", "DT2A")
DISAGREEABLE = TWISTED + ("in1", "intwist", "ineq", "innorm", "inimp")
WEAK_COMPARISON = DISAGREEABLE + ("comp1", "comp2", "comp3", "wc1", "wc2", "wc-domain")
KLEENEAN = EITE + ("W12", "W1", "W2", "Kleenean-1", "Kleenean-2")


def suites() -> Dict[str, Suite]:
    """Suites con nombre, una por clase de axiomas"""
    entries = [
        Suite("monoid-with-tests", MONOID, structural=True, description="monoide con tests"),
        Suite("restriction-with-tests", RESTRICTION, description="monoide de restricción con tests"),
        Suite("restriction-consequences", ("D-compose-domain", "D-idempotent", "D-meet"),
              description="consecuencias de los axiomas de restricción"),
        Suite("eite", EITE, description="monoide con if-then-else extendido"),
        Suite("twisted-agreeable", TWISTED, description="monoide agreeable retorcido con tests"),
        Suite("disagreeable", DISAGREEABLE, description="monoide disagreeable con tests"),
        Suite("weak-comparison", WEAK_COMPARISON, description="monoide con comparación débil"),
        Suite("kleenean-w", KLEENEAN, description="W-monoide kleeneano"),
        Suite("order", ("order-stable", "order-antisymmetric", "order-transitive"),
              description="orden natural"),
        Suite("derived-operations", ("P-def", "bowtie-def", "cup-def", "bowtie-star", "bowtie-neq",
                                     "cup-ite", "cup-wc"),
              description="operaciones derivadas y sus identidades"),
    ]
    return {s.name: s for s in entries}


def get_suite(name: str) -> Suite:
    try:
        return suites()[name]
    except KeyError:
        raise InputError(f"Suite desconocida: {name} (disponibles: {', '.join(suites())})") from None


@dataclass(frozen=True)
class CheckMode:
    """
    Exhaustivo, muestreo con semilla, o automático

    En modo automático cada ley se recorre exhaustivamente si tiene a lo
    sumo `count` asignaciones y se muestrea con `count` asignaciones si no.
    """
    kind: str = "exhaustive"
    count: int = 0
    seed: Optional[int] = None

    @classmethod
    def exhaustive(cls) -> "CheckMode":
        return cls("exhaustive")

    @classmethod
    def sampled(cls, count: int, seed: int) -> "CheckMode":
        if count < 1:
            raise InputError("El muestreo necesita al menos una asignación")
        return cls("sampled", count, seed)

    @classmethod
    def auto(cls, count: int, seed: int) -> "CheckMode":
        if count < 1:
            raise InputError("El muestreo necesita al menos una asignación")
        return cls("auto", count, seed)

    def for_space(self, assignments: int) -> "CheckMode":
        """Modo efectivo para una ley con `assignments` asignaciones posibles"""
        if self.kind != "auto":
            return self
        if assignments <= self.count:
            return CheckMode.exhaustive()
        return CheckMode.sampled(self.count, self.seed)

    def __str__(self) -> str:
        if self.kind == "exhaustive":
            return self.kind
        return f"{self.kind}(count={self.count}, seed={self.seed})"


@dataclass
class LawResult:
    """Resultado de una ley: pass, fail, skipped o error"""
    law: str
    status: str
    mode: CheckMode
    examined: int = 0
    witness: Optional[Dict[str, int]] = None
    witness_labels: Optional[Dict[str, str]] = None
    failed: Optional[str] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "law": self.law,
            "status": self.status,
            "witness": self.witness,
            "witness_labels": self.witness_labels,
            "failed": self.failed,
            "mode": self.mode.kind,
            "seed": self.mode.seed,
            "count": self.examined,
            "note": self.note,
        }


@dataclass
class CheckReport:
    suite: str
    context: str
    mode: CheckMode
    results: List[LawResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def has_errors(self) -> bool:
        return any(r.status in ("error", "skipped") for r in self.results)

    def result(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def failures(self) -> List[LawResult]:
        return [r for r in self.results if r.status == "fail"]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "context": self.context,
            "mode": self.mode.kind,
            "seed": self.mode.seed,
            "passed": self.all_passed,
            "results": [r.to_dict() for r in self.results],
        }


class LawChecker:
    """
    Verifica leyes sobre un contexto

    Las asignaciones exhaustivas se enumeran en orden lexicográfico de
    índices, así que el testigo reportado es el primero en ese orden. Los
    testigos sugeridos (`hints`, por etiquetas) se prueban antes que la
    enumeración y, si violan la ley, son los que se reportan.
    """

    def __init__(self, ctx: EvalContext, hints: Optional[Mapping[str, Mapping[str, str]]] = None):
        self.ctx = ctx
        self.hints = dict(hints or {})
        self.logger = logging.getLogger(__name__)
        self._domains: Dict[str, Sequence[Any]] = {}

    def _domain(self, sort: str) -> Sequence[Any]:
        if sort not in self._domains:
            if sort == "test":
                values = self.ctx.tests()
            elif sort == "domelem":
                values = self._domain_elements()
            else:
                values = self.ctx.elements()
            self._domains[sort] = list(values)
        return self._domains[sort]

    def _domain_elements(self) -> List[Any]:
        """D(S), con D derivado (p. ej. wc(x,x,1,0)) si el contexto no tiene tabla de dominio"""
        if "D" in self.ctx.capabilities:
            return list(self.ctx.domain_elements())
        d = compile_term(expand_derived(Domain(Var("x")), self.ctx.capabilities), self.ctx)
        return [x for x in self.ctx.elements() if d({"x": x}) == x]

    def _compile(self, law: Law):
        basis = self.ctx.capabilities

        def side(term: Term):
            return compile_term(expand_derived(term, basis), self.ctx)

        premises = [(side(eq.lhs), side(eq.rhs)) for eq in law.premises]
        conclusions = [(side(eq.lhs), side(eq.rhs), str(eq)) for eq in law.conclusions]
        return premises, conclusions

    def missing_capabilities(self, laws: Sequence[Law]) -> List[Tuple[str, str]]:
        """(ley, operación) para cada ley que el contexto no puede evaluar"""
        missing = []
        for law in laws:
            try:
                self._compile(law)
                if any(sort == "domelem" for _, sort in law.variables):
                    self._domain("domelem")
            except CapabilityError as e:
                missing.append((law.name, e.operation))
        return missing

    def _assignments(self, sizes: Sequence[int], mode: CheckMode) -> Iterator[Tuple[int, ...]]:
        if mode.kind == "exhaustive":
            return itertools.product(*(range(n) for n in sizes))
        rng = np.random.default_rng(mode.seed)
        draws = np.column_stack([rng.integers(0, n, size=mode.count) for n in sizes])
        return (tuple(row) for row in draws.tolist())

    def check_law(self, law: Union[str, Law], mode: CheckMode = CheckMode()) -> LawResult:
        """
        Verifica una ley

        Args:
            law: Ley o nombre registrado
            mode: Exhaustivo o muestreo

        Returns:
            LawResult: con el primer testigo si falla
        """
        if isinstance(law, str):
            law = registry()[law]
        try:
            premises, conclusions = self._compile(law)
            domains = [self._domain(sort) for _, sort in law.variables]
        except CapabilityError as e:
            self.logger.warning(f"Ley {law.name} omitida: falta {e.operation}")
            return LawResult(law.name, "skipped", mode, note=f"falta la operación {e.operation}")

        names = [name for name, _ in law.variables]
        mode = mode.for_space(math.prod(len(d) for d in domains))
        if any(len(d) == 0 for d in domains):
            return LawResult(law.name, "pass", mode, note="cuantificación vacía")

        examined = 0
        hinted = self._hinted(law, domains)
        if hinted is not None:
            examined += 1
            failed = self._violated(premises, conclusions, hinted)
            if failed is not None:
                self.logger.debug(f"{law.name} falla en el testigo sugerido")
                return self._failure(law, "fail", mode, examined, names, hinted, failed)

        env: Dict[str, Any] = {}
        for indices in self._assignments([len(d) for d in domains], mode):
            for name, values, i in zip(names, domains, indices):
                env[name] = values[i]
            examined += 1
            try:
                failed = self._violated(premises, conclusions, env)
            except SortError as e:
                return self._failure(law, "error", mode, examined, names, env, str(e))
            if failed is not None:
                self.logger.debug(f"{law.name} falla tras {examined} asignaciones")
                return self._failure(law, "fail", mode, examined, names, env, failed)
        return LawResult(law.name, "pass", mode, examined)

    def _hinted(self, law: Law, domains: Sequence[Sequence[Any]]) -> Optional[Dict[str, Any]]:
        """Asignación sugerida para la ley, si existe y respeta los sortes"""
        hint = self.hints.get(law.name)
        names = [name for name, _ in law.variables]
        if not hint or set(hint) != set(names):
            return None
        try:
            env = {n: self.ctx.element_named(hint[n]) for n in names}
        except InputError as e:
            self.logger.debug(f"Testigo sugerido para {law.name} ignorado: {e}")
            return None
        if any(env[n] not in values for n, values in zip(names, domains)):
            self.logger.debug(f"Testigo sugerido para {law.name} ignorado: sorte incorrecto")
            return None
        return env

    @staticmethod
    def _violated(premises, conclusions, env: Dict[str, Any]) -> Optional[str]:
        """Texto de la conclusión que falla, o None si la asignación cumple la ley"""
        if all(lhs(env) == rhs(env) for lhs, rhs in premises):
            for lhs, rhs, text in conclusions:
                if lhs(env) != rhs(env):
                    return text
        return None

    def witnesses(self, law: Union[str, Law], limit: Optional[int] = None) -> List[Dict[str, str]]:
        """
        Todas las asignaciones que violan la ley, en orden lexicográfico

        Args:
            law: Ley o nombre registrado
            limit: Máximo de testigos devueltos

        Returns:
            Lista de {variable: etiqueta}
        """
        if isinstance(law, str):
            law = registry()[law]
        premises, conclusions = self._compile(law)
        names = [name for name, _ in law.variables]
        domains = [self._domain(sort) for _, sort in law.variables]
        found: List[Dict[str, str]] = []
        env: Dict[str, Any] = {}
        for values in itertools.product(*domains):
            env.update(zip(names, values))
            if all(lhs(env) == rhs(env) for lhs, rhs in premises) and \
                    any(lhs(env) != rhs(env) for lhs, rhs, _ in conclusions):
                found.append({n: self.ctx.label(env[n]) for n in names})
                if limit is not None and len(found) >= limit:
                    break
        return found

    def _failure(self, law: Law, status: str, mode: CheckMode, examined: int,
                 names: Sequence[str], env: Dict[str, Any], detail: str) -> LawResult:
        return LawResult(
            law.name, status, mode, examined,
            witness={n: self.ctx.index_of(env[n]) for n in names},
            witness_labels={n: self.ctx.label(env[n]) for n in names},
            failed=detail,
        )

    def check(self, suite: Union[str, Suite], mode: CheckMode = CheckMode()) -> CheckReport:
        """
        Corre una suite completa

        Raises:
            CapabilityError: si alguna ley necesita una operación ausente
        """
        if isinstance(suite, str):
            suite = get_suite(suite)
        laws = suite.resolve()
        missing = self.missing_capabilities(laws)
        if missing:
            law, op = missing[0]
            raise CapabilityError(op, f"La suite {suite.name} necesita '{op}' (ley {law}) y el contexto no la ofrece")

        self.logger.info(f"Suite {suite.name} sobre {self.ctx.description}: {len(laws)} leyes, modo {mode}")
        report = CheckReport(suite.name, self.ctx.description, mode)
        for law in laws:
            result = self.check_law(law, mode)
            self.logger.debug(f"  {law.name}: {result.status} ({result.examined} asignaciones)")
            report.results.append(result)
        if suite.structural and isinstance(self.ctx, TableContext):
            validation = validate(self.ctx.algebra)
            structural = LawResult("structure", "pass" if validation.is_valid else "fail", mode)
            if not validation.is_valid:
                first = validation.violations[0]
                structural.failed = f"{first.invariant} en {list(first.witness)}"
            report.results.append(structural)
        return report


def check(ctx: EvalContext, suite: Union[str, Suite], mode: CheckMode = CheckMode(),
          hints: Optional[Mapping[str, Mapping[str, str]]] = None) -> CheckReport:
    return LawChecker(ctx, hints).check(suite, mode)


EQUIVALENCES = (
    ("DT2~EITE1+EITE4", ("DT2",), ("EITE1", "EITE4"),
     ("D1", "Dleft", "Dcom", "DD", "Dtwisted", "DT1", "EITE2", "EITE3", "EITE5")),
    ("DT2~DT2A", ("DT2",), ("DT2A",),
     ("D1", "Dleft", "Dcom", "DD", "Dtwisted", "DT1", "A1", "Acom", "Aeq", "Anorm", "Atwisted")),
    ("inimp~wc1+wc2", ("inimp",), ("wc1", "wc2"),
     ("D1", "Dleft", "Dcom", "DD", "Dtwisted", "DT1", "A1", "Acom", "Aeq", "Anorm", "Atwisted",
      "in1", "intwist", "ineq", "innorm", "comp1", "comp2", "comp3")),
)


@dataclass
class EquivalenceEntry:
    context: str
    proposition: str
    status: str
    lhs: Optional[bool] = None
    rhs: Optional[bool] = None
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"context": self.context, "proposition": self.proposition, "status": self.status,
                "lhs": self.lhs, "rhs": self.rhs, "note": self.note}


@dataclass
class EquivalenceReport:
    entries: List[EquivalenceEntry] = field(default_factory=list)

    @property
    def disagreements(self) -> List[EquivalenceEntry]:
        return [e for e in self.entries if e.status == "disagree"]

    def to_dict(self) -> Dict[str, Any]:
        return {"entries": [e.to_dict() for e in self.entries],
                "disagreements": len(self.disagreements)}


def check_equivalences(corpus: Sequence[Tuple[str, EvalContext]],
                       mode: CheckMode = CheckMode()) -> EquivalenceReport:
    """
    Compara leyes que deben ser equivalentes sobre una base común

    Args:
        corpus: Pares (nombre, contexto)
        mode: Modo de verificación de cada ley

    Returns:
        EquivalenceReport: disagree señala un error de implementación
    """
    report = EquivalenceReport()
    for name, ctx in corpus:
        checker = LawChecker(ctx)
        for proposition, left, right, base in EQUIVALENCES:
            laws = [registry()[n] for n in left + right + base]
            missing = checker.missing_capabilities(laws)
            if missing:
                report.entries.append(EquivalenceEntry(
                    name, proposition, "skipped", note=f"falta la operación {missing[0][1]}"))
                continue
            if not all(checker.check_law(n, mode).passed for n in base):
                report.entries.append(EquivalenceEntry(name, proposition, "base-fails"))
                continue
            lhs = all(checker.check_law(n, mode).passed for n in left)
            rhs = all(checker.check_law(n, mode).passed for n in right)
            report.entries.append(EquivalenceEntry(name, proposition, "agree" if lhs == rhs else "disagree", lhs, rhs))
    return report


@dataclass
class LemmaReport:
    """Verificación de una propiedad instancia por instancia"""
    name: str
    examined: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "examined": self.examined, "holds": self.holds,
                "violations": self.violations[:20]}


def largest_agreement_check(ctx: EvalContext) -> LemmaReport:
    """
    x∗y es el mayor e ∈ D(S) con e ≤ D(x)D(y) y ex = ey
    """
    ctx.require("D", "star")
    report = LemmaReport("largest-agreement")
    domain = list(ctx.domain_elements())
    for x, y in itertools.product(ctx.elements(), repeat=2):
        report.examined += 1
        bound = ctx.mult(ctx.domain(x), ctx.domain(y))
        agreeing = [e for e in domain if ctx.leq(e, bound) and ctx.mult(e, x) == ctx.mult(e, y)]
        best = ctx.star(x, y)
        if best not in agreeing or not all(ctx.leq(e, best) for e in agreeing):
            report.violations.append({"x": ctx.label(x), "y": ctx.label(y), "star": ctx.label(best)})
    return report
