"""
Lenguaje de términos: nodos, parser, impresión canónica, evaluación sobre
cualquier EvalContext y expansión de operaciones derivadas
"""

import logging
import re
from dataclasses import dataclass, fields
from typing import Any, Callable, ClassVar, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .contexts import EvalContext
from .errors import CapabilityError, InputError, SortError, TermSyntaxError

logger = logging.getLogger(__name__)

SORTS = ("elem", "test", "domelem")


@dataclass(frozen=True)
class Term:
    """Nodo base; las subclases fijan palabra clave, operación y posiciones de test"""

    keyword: ClassVar[str] = ""
    operation: ClassVar[Optional[str]] = None
    test_positions: ClassVar[Tuple[int, ...]] = ()

    def children(self) -> Tuple["Term", ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def rebuild(self, *children: "Term") -> "Term":
        return type(self)(*children)

    def variables(self) -> Tuple["Var", ...]:
        """Variables libres en orden de primera aparición"""
        found: Dict[str, Var] = {}
        stack: List[Term] = [self]
        ordered: List[Var] = []
        while stack:
            node = stack.pop()
            if isinstance(node, Var):
                if node.name not in found:
                    found[node.name] = node
                    ordered.append(node)
            else:
                stack.extend(reversed(node.children()))
        return tuple(ordered)

    def __str__(self) -> str:
        return f"{self.keyword}({','.join(str(c) for c in self.children())})"


@dataclass(frozen=True)
class Zero(Term):
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class One(Term):
    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Var(Term):
    name: str
    sort: str = "elem"

    def children(self) -> Tuple[Term, ...]:
        return ()

    def rebuild(self, *children: Term) -> Term:
        return self

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compose(Term):
    operation = "mult"
    left: Term
    right: Term

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, Compose) else str(self.right)
        return f"{self.left};{right}"


@dataclass(frozen=True)
class Domain(Term):
    keyword = "D"
    operation = "D"
    arg: Term


@dataclass(frozen=True)
class Star(Term):
    keyword = "star"
    operation = "star"
    left: Term
    right: Term


@dataclass(frozen=True)
class Neq(Term):
    keyword = "neq"
    operation = "neq"
    left: Term
    right: Term


@dataclass(frozen=True)
class Eite(Term):
    keyword = "ite"
    operation = "eite"
    test_positions = (1,)
    cond: Term
    test: Term
    then: Term
    other: Term


@dataclass(frozen=True)
class Wc(Term):
    keyword = "wc"
    operation = "wc"
    left: Term
    right: Term
    then: Term
    other: Term


@dataclass(frozen=True)
class While(Term):
    keyword = "while"
    operation = "while"
    test_positions = (1,)
    guard: Term
    test: Term
    body: Term


@dataclass(frozen=True)
class Complement(Term):
    keyword = "not"
    operation = "complement"
    test_positions = (0,)
    arg: Term


@dataclass(frozen=True)
class AntiP(Term):
    keyword = "P"
    operation = "antidomain"
    arg: Term


@dataclass(frozen=True)
class Bowtie(Term):
    keyword = "bowtie"
    operation = "bowtie"
    left: Term
    right: Term


@dataclass(frozen=True)
class PrefUnion(Term):
    keyword = "cup"
    operation = "pref_union"
    left: Term
    right: Term


FUNCTIONS = {cls.keyword: cls for cls in (Domain, Star, Neq, Eite, Wc, While, Complement, AntiP, Bowtie, PrefUnion)}
ARITY = {cls.keyword: len(fields(cls)) for cls in FUNCTIONS.values()}

TOKEN_PATTERN = re.compile(r"(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<const>[01])|(?P<sym>[();,])")


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    """Lista de (tipo, valor, posición); termina con ("end", "", len)"""
    tokens: List[Tuple[str, str, int]] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        match = TOKEN_PATTERN.match(text, pos)
        if not match:
            raise TermSyntaxError(f"Carácter inesperado {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class TermParser:
    """
    Parser descendente recursivo de la gramática de términos

    Args:
        sorts: Tipo declarado de cada variable
        default_sort: Tipo de las variables no declaradas
    """

    def __init__(self, sorts: Optional[Mapping[str, str]] = None, default_sort: str = "elem"):
        self.sorts = dict(sorts or {})
        unknown = {s for s in self.sorts.values() if s not in SORTS} | ({default_sort} - set(SORTS))
        if unknown:
            raise InputError(f"Tipos desconocidos: {sorted(unknown)}")
        self.default_sort = default_sort
        self.tokens: List[Tuple[str, str, int]] = []
        self.index = 0

    def parse(self, text: str) -> Term:
        self.tokens = tokenize(text)
        self.index = 0
        term = self._term()
        kind, value, position = self._peek()
        if kind != "end":
            raise TermSyntaxError(f"Se esperaba el fin del término y se encontró {value!r}", position)
        check_sorts(term)
        return term

    def _peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def _advance(self) -> Tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, symbol: str) -> None:
        kind, value, position = self._advance()
        if kind != "sym" or value != symbol:
            found = value or "fin del texto"
            raise TermSyntaxError(f"Se esperaba {symbol!r} y se encontró {found!r}", position)

    def _term(self) -> Term:
        term = self._atom()
        while self._peek()[:2] == ("sym", ";"):
            self._advance()
            term = Compose(term, self._atom())
        return term

    def _atom(self) -> Term:
        kind, value, position = self._advance()
        if kind == "const":
            return Zero() if value == "0" else One()
        if kind == "sym" and value == "(":
            term = self._term()
            self._expect(")")
            return term
        if kind == "ident":
            if value in FUNCTIONS and self._peek()[:2] == ("sym", "("):
                self._advance()
                args = [self._term()]
                while self._peek()[:2] == ("sym", ","):
                    self._advance()
                    args.append(self._term())
                self._expect(")")
                if len(args) != ARITY[value]:
                    raise TermSyntaxError(
                        f"{value} espera {ARITY[value]} argumentos y recibió {len(args)}", position)
                return FUNCTIONS[value](*args)
            return Var(value, self.sorts.get(value, self.default_sort))
        found = value or "fin del texto"
        raise TermSyntaxError(f"Término inesperado: {found!r}", position)


def parse(text: str, sorts: Optional[Mapping[str, str]] = None) -> Term:
    return TermParser(sorts).parse(text)


def check_sorts(term: Term) -> None:
    """
    Rechaza variables de tipo no-test en posiciones de test

    Raises:
        SortError: con el subtérmino culpable
    """
    for i, child in enumerate(term.children()):
        if i in term.test_positions and isinstance(child, Var) and child.sort != "test":
            raise SortError(f"La variable {child.name} ({child.sort}) ocupa una posición de test en {term}", child)
        check_sorts(child)


def compile_term(term: Term, ctx: EvalContext) -> Callable[[Mapping[str, Any]], Any]:
    """
    Compila un término a una función de la asignación

    Raises:
        CapabilityError: si el contexto no ofrece alguna operación del término
    """
    if isinstance(term, Zero):
        zero = ctx.zero()
        return lambda env: zero
    if isinstance(term, One):
        one = ctx.one()
        return lambda env: one
    if isinstance(term, Var):
        name = term.name
        return lambda env: env[name]

    fn = ctx.operation(term.operation)
    parts = [compile_term(child, ctx) for child in term.children()]
    if len(parts) == 1:
        a, = parts
        return lambda env: fn(a(env))
    if len(parts) == 2:
        a, b = parts
        return lambda env: fn(a(env), b(env))
    if len(parts) == 3:
        a, b, c = parts
        return lambda env: fn(a(env), b(env), c(env))
    a, b, c, d = parts
    return lambda env: fn(a(env), b(env), c(env), d(env))


def check_assignment(term: Term, assignment: Mapping[str, Any], ctx: EvalContext) -> None:
    """Verifica que toda variable libre esté ligada y respete su tipo"""
    for var in term.variables():
        if var.name not in assignment:
            raise InputError(f"La variable {var.name} no tiene valor")
        value = assignment[var.name]
        if var.sort == "test" and not ctx.is_test(value):
            raise SortError(f"{var.name} = {ctx.label(value)} no es un test", var)
        if var.sort == "domelem" and "D" in ctx.capabilities and ctx.domain(value) != value:
            raise SortError(f"{var.name} = {ctx.label(value)} no es un elemento de dominio", var)


def evaluate(term: Term, assignment: Mapping[str, Any], ctx: EvalContext) -> Any:
    """
    Evalúa un término estructuralmente

    Args:
        term: Término a evaluar
        assignment: Valor de cada variable libre
        ctx: Contexto que ofrece las operaciones

    Returns:
        Elemento del contexto
    """
    check_assignment(term, assignment, ctx)
    return compile_term(term, ctx)(assignment)


def _rules(term: Term) -> List[Term]:
    """Reescrituras alternativas de una operación en términos de otras"""
    one, zero = One(), Zero()
    c = term.children()
    if isinstance(term, Domain):
        s, = c
        return [Eite(s, one, one, one), Wc(s, s, one, zero), Star(s, s)]
    if isinstance(term, Star):
        s, t = c
        return [Wc(s, t, one, zero)]
    if isinstance(term, Neq):
        s, t = c
        return [Wc(s, t, zero, one)]
    if isinstance(term, AntiP):
        s, = c
        return [Complement(Domain(s))]
    if isinstance(term, Bowtie):
        s, t = c
        neither = Compose(AntiP(s), AntiP(t))
        return [Complement(Compose(Complement(Star(s, t)), Complement(neither)))]
    if isinstance(term, PrefUnion):
        s, t = c
        return [Eite(one, Domain(s), s, t)]
    if isinstance(term, Eite):
        s, a, t, u = c
        return [PrefUnion(Compose(Domain(Compose(s, a)), t), Compose(Domain(Compose(s, Complement(a))), u))]
    if isinstance(term, Wc):
        s, t, u, v = c
        return [PrefUnion(Compose(Star(s, t), u), Compose(Neq(s, t), v))]
    return []


def expand_derived(term: Term, basis: Iterable[str]) -> Term:
    """
    Reescribe un término usando sólo las operaciones de `basis`

    Raises:
        CapabilityError: si algún constructor no es derivable
    """
    return _expand(term, frozenset(basis), frozenset())


def _expand(term: Term, basis: FrozenSet[str], active: FrozenSet[str]) -> Term:
    if isinstance(term, (Zero, One, Var)):
        return term
    children = [_expand(child, basis, active) for child in term.children()]
    node = term.rebuild(*children)
    if node.operation in basis:
        return node
    if node.operation in active:
        raise CapabilityError(node.operation, f"{node.operation} no es derivable de {sorted(basis)}")
    for rewritten in _rules(node):
        try:
            return _expand(rewritten, basis, active | {node.operation})
        except CapabilityError:
            continue
    raise CapabilityError(node.operation, f"{node.operation} no es derivable de {sorted(basis)}")
