import itertools

import numpy as np
import pytest

from nonhalting.calg import (BStarGenerator, GenPredicate, Truth, basic_predicates, connective, export_bstar,
                             generate_bstar, three_valued_check, trace)
from nonhalting.calg import _and_codes, _not_codes, _or_codes
from nonhalting.errors import CapabilityError, InputError

T, F, U = Truth.TRUE, Truth.FALSE, Truth.UNDEFINED


class TestTruth:
    @pytest.mark.parametrize("p, q, expected", [
        (T, T, T), (T, F, F), (T, U, U),
        (F, T, F), (F, U, F),
        (U, T, U), (U, F, U),
    ])
    def test_sequential_and(self, p, q, expected):
        assert p.sequential_and(q) is expected

    @pytest.mark.parametrize("p, q, expected", [
        (T, U, T), (F, T, T), (F, F, F), (F, U, U), (U, T, U),
    ])
    def test_sequential_or(self, p, q, expected):
        assert p.sequential_or(q) is expected

    def test_negate(self):
        assert [v.negate() for v in (T, F, U)] == [F, T, U]

    def test_and_is_not_commutative(self):
        assert F.sequential_and(U) is not U.sequential_and(F)

    def test_trace_codes_follow_truth(self):
        codes = {T: 1, F: 0, U: -1}
        pairs = list(itertools.product((T, F, U), repeat=2))
        p = np.array([codes[a] for a, _ in pairs])
        q = np.array([codes[b] for _, b in pairs])
        assert _and_codes(p, q).tolist() == [codes[a.sequential_and(b)] for a, b in pairs]
        assert _or_codes(p, q).tolist() == [codes[a.sequential_or(b)] for a, b in pairs]
        assert _not_codes(p).tolist() == [codes[a.negate()] for a, _ in pairs]


class TestConnectives:
    def test_tables(self):
        P = GenPredicate(np.array([[0, 1], [1, 0]]), "P")
        Q = GenPredicate(np.array([[1, 1], [0, 0]]), "Q")
        assert connective("not", P).table.tolist() == [[0, 1], [1, 0]]
        assert connective("and", P, Q).table.tolist() == [[1, 0], [0, 1]]
        assert connective("or", P, Q).table.tolist() == [[1, 1], [1, 1]]
        assert connective("and", P, Q).expression == "(P and Q)"

    def test_double_negation(self, full2):
        for P in basic_predicates(full2):
            assert connective("not", connective("not", P)) == P

    def test_unknown_connective(self):
        P = GenPredicate(np.zeros((2, 2), dtype=np.int32), "P")
        with pytest.raises(InputError):
            connective("xor", P, P)
        with pytest.raises(InputError):
            connective("and", P)

    def test_equality_ignores_expression(self):
        table = np.eye(2, dtype=np.int32)
        assert GenPredicate(table, "a") == GenPredicate(table.copy(), "b")
        assert len({GenPredicate(table, "a"), GenPredicate(table.copy(), "b")}) == 1


class TestBStar:
    def test_one_point(self, full1):
        predicates = generate_bstar(full1)
        assert len(predicates) == 3
        assert sorted(trace(full1, P)[0].value for P in predicates) == ["F", "T", "U"]

    def test_two_points(self, full2):
        predicates = generate_bstar(full2)
        assert len(predicates) == 9
        traces = {"".join(t.value for t in trace(full2, P)) for P in predicates}
        assert traces == {"".join(p) for p in itertools.product("TFU", repeat=2)}

    def test_tests_embed(self, full1, full2):
        for A in (full1, full2):
            generator = BStarGenerator(A)
            assert generator.embedding_is_injective()
        alpha = full2.element_named("f_0x")
        assert "".join(t.value for t in trace(full2, BStarGenerator(full2).test_predicate(alpha))) == "TF"

    def test_three_valued_semantics(self, full1, full2):
        for A in (full1, full2):
            report = three_valued_check(A, generate_bstar(A))
            assert report.holds, report.to_dict()

    def test_pair_limit(self, full2):
        predicates = generate_bstar(full2)
        report = three_valued_check(full2, predicates, max_pairs=5)
        assert report.examined == len(predicates) + 5

    def test_requires_ite(self, quasiv_algebra):
        with pytest.raises(CapabilityError):
            generate_bstar(quasiv_algebra)

    def test_trace_requires_realization(self, three):
        P = GenPredicate(np.zeros((3, 3), dtype=np.int32), "P")
        with pytest.raises(InputError):
            trace(three, P)

    def test_export(self, full1):
        rows = export_bstar(full1, generate_bstar(full1))
        assert {row["trace"] for row in rows} == {"T", "F", "U"}
        assert all(row["expression"] for row in rows)
