"""
Banco de verificación para el álgebra de programas que no terminan

Modelos concretos de funciones parciales, álgebras finitas tabuladas,
baterías de leyes, representación por filtros y predicados trivaluados.
"""

from .algebra import FiniteAlgebra, Partition, check_congruence, from_concrete, from_model, quotient, validate
from .calg import GenPredicate, Truth, generate_bstar, three_valued_check
from .contexts import EvalContext, MapContext, TableContext
from .errors import (CapabilityError, ClosureBoundError, CongruenceError, FilterError, InputError,
                     InvariantViolation, SortError, TermSyntaxError, WorkbenchError)
from .exporters import CSVExporter, JSONExporter, ReportExporter
from .filters import build_representation, minb_check, verify_representation, while_unroll
from .fixtures import paper_example, random_corpus, three_element_algebra
from .laws import CheckMode, LawChecker, check, get_suite, suites
from .pfun import ConcreteModel, PartialMap, PointSet, TestSet, full_model
from .terms import evaluate, expand_derived, parse

__version__ = "1.0.0"

__all__ = [
    'FiniteAlgebra', 'Partition', 'check_congruence', 'from_concrete', 'from_model', 'quotient', 'validate',
    'GenPredicate', 'Truth', 'generate_bstar', 'three_valued_check',
    'EvalContext', 'MapContext', 'TableContext',
    'CapabilityError', 'ClosureBoundError', 'CongruenceError', 'FilterError', 'InputError',
    'InvariantViolation', 'SortError', 'TermSyntaxError', 'WorkbenchError',
    'CSVExporter', 'JSONExporter', 'ReportExporter',
    'build_representation', 'minb_check', 'verify_representation', 'while_unroll',
    'paper_example', 'random_corpus', 'three_element_algebra',
    'CheckMode', 'LawChecker', 'check', 'get_suite', 'suites',
    'ConcreteModel', 'PartialMap', 'PointSet', 'TestSet', 'full_model',
    'evaluate', 'expand_derived', 'parse',
]
