import numpy as np
import pytest

from conftest import pmap
from nonhalting.algebra import (FiniteAlgebra, Partition, check_congruence, domain_elements, from_concrete,
                                from_model, is_periodic, natural_order, quotient, validate)
from nonhalting.errors import ClosureBoundError, CongruenceError, InputError, SortError
from nonhalting.pfun import PartialMap, PointSet, TestSet, full_model, agree_star, compose


def invariants(report):
    return {v.invariant for v in report.violations}


class TestFiniteAlgebra:
    def test_three_element_is_valid(self, three):
        assert validate(three).is_valid
        assert three.capabilities == frozenset({"mult", "complement", "D"})
        assert three.complement_of(0) == 2
        assert three.element_named("e") == 1
        assert three.element_named("2") == 2

    def test_tables_are_read_only(self, three):
        with pytest.raises(ValueError):
            three.mult[0, 0] = 1

    def test_wrong_shape(self):
        with pytest.raises(InputError):
            FiniteAlgebra(size=2, one=1, zero=0, mult=[0, 1, 1], tests=(0, 1), complement=(1, 0))

    def test_out_of_range_entry(self):
        with pytest.raises(InputError):
            FiniteAlgebra(size=2, one=1, zero=0, mult=[[0, 0], [0, 2]], tests=(0, 1), complement=(1, 0))

    def test_complement_must_align(self):
        with pytest.raises(InputError):
            FiniteAlgebra(size=2, one=1, zero=0, mult=[[0, 0], [0, 1]], tests=(0, 1), complement=(1,))

    def test_complement_of_non_test(self, three):
        with pytest.raises(SortError):
            three.complement_of(1)

    def test_unknown_name(self, three):
        with pytest.raises(InputError):
            three.element_named("x")

    def test_file_format(self, three):
        data = three.to_dict()
        assert data["mult"] == [0, 0, 0, 0, 1, 1, 0, 1, 2]
        back = FiniteAlgebra.from_dict(data)
        assert np.array_equal(back.mult, three.mult)
        assert back.names == three.names
        assert back.tests == three.tests

    def test_missing_key(self):
        with pytest.raises(InputError):
            FiniteAlgebra.from_dict({"size": 1, "one": 0})


class TestValidate:
    def test_broken_complement(self):
        broken = FiniteAlgebra(size=2, one=1, zero=0, mult=[[0, 0], [0, 1]], tests=(0, 1), complement=(1, 1))
        report = validate(broken)
        assert not report.is_valid
        assert "complement-meet" in invariants(report)

    def test_identity_violation(self):
        broken = FiniteAlgebra(size=2, one=1, zero=0, mult=[[0, 0], [0, 0]], tests=(0, 1), complement=(1, 0))
        assert "identity" in invariants(validate(broken))

    def test_missing_constants_in_tests(self):
        broken = FiniteAlgebra(size=2, one=1, zero=0, mult=[[0, 0], [0, 1]], tests=(1,), complement=(1,))
        assert "tests-contain-constants" in invariants(validate(broken))

    def test_domain_of_test(self):
        broken = FiniteAlgebra(size=2, one=1, zero=0, mult=[[0, 0], [0, 1]], tests=(0, 1),
                               complement=(1, 0), domain=[1, 1])
        assert "domain-of-test" in invariants(validate(broken))

    def test_closed_models_are_valid(self, full2, quasiv_algebra, disagreeable_algebra):
        for algebra in (full2, quasiv_algebra, disagreeable_algebra):
            assert validate(algebra).is_valid, validate(algebra).to_dict()


class TestOrderAndPeriods:
    def test_natural_order_is_min(self, three):
        leq = natural_order(three)
        assert leq[0, 2] and leq[1, 2] and leq[0, 1]
        assert not leq[2, 0]
        assert domain_elements(three) == (0, 1, 2)

    def test_periods(self, quasiv_algebra):
        ok, periods = is_periodic(quasiv_algebra)
        assert ok
        assert periods[quasiv_algebra.element_named("s")] == (2, 1)
        assert periods[quasiv_algebra.one] == (1, 1)
        assert periods[quasiv_algebra.zero] == (1, 1)

    def test_domain_required(self):
        plain = FiniteAlgebra(size=1, one=0, zero=0, mult=[[0]], tests=(0,), complement=(0,))
        with pytest.raises(InputError):
            natural_order(plain)


class TestPartitions:
    def test_from_pairs_merges_groups(self):
        P = Partition.from_pairs(5, [[0, 1], [3, 4], [4, 3]])
        assert P.blocks == ((0, 1), (2,), (3, 4))

    def test_overlapping_blocks(self):
        with pytest.raises(InputError):
            Partition(((0,), (0, 1))).block_of(2)

    def test_uncovered_elements(self):
        with pytest.raises(InputError):
            Partition(((0,),)).block_of(2)

    def test_non_congruence(self, three):
        report = check_congruence(three, Partition(((0, 2), (1,))))
        assert not report.is_congruence
        assert report.operation == "mult"
        with pytest.raises(CongruenceError):
            quotient(three, Partition(((0, 2), (1,))))

    def test_mixed_block_rejected(self, three):
        P = Partition(((0,), (1, 2)))
        report = check_congruence(three, P)
        assert report.is_congruence
        assert report.mixed_blocks == [(1, 2)]
        with pytest.raises(CongruenceError):
            quotient(three, P)

    def test_identity_partition(self, three):
        same = quotient(three, Partition.identity(3))
        assert same.size == 3
        assert np.array_equal(same.mult, three.mult)

    def test_builtin_quotients(self, quasiv_quotient, disagreeable_quotient):
        assert quasiv_quotient.size == 12
        assert "f~ef" in quasiv_quotient.names
        assert "sbeta'~efs" in quasiv_quotient.names
        assert disagreeable_quotient.size == 13
        assert validate(quasiv_quotient).is_valid
        assert validate(disagreeable_quotient).is_valid


class TestFromModel:
    def test_full_model_two_points(self, full2):
        assert full2.size == 9
        assert len(full2.tests) == 4
        assert full2.capabilities == frozenset({"mult", "complement", "D", "star", "neq", "eite", "wc", "while"})
        assert full2.label(full2.zero) == "f_xx"
        assert full2.label(full2.one) == "f_01"

    def test_quasiv_closure_adds_one_element(self, quasiv_algebra):
        assert quasiv_algebra.size == 14
        es = pmap(8, {0: 4, 1: 5, 2: 6})
        assert es in quasiv_algebra.realization
        assert quasiv_algebra.capabilities == frozenset({"mult", "complement", "D", "star"})

    def test_tables_match_realization(self, full2):
        R = full2.realization
        for x in range(full2.size):
            for y in range(full2.size):
                assert R[full2.mult[x, y]] == compose(R[x], R[y])
                assert R[full2.star[x, y]] == agree_star(R[x], R[y])

    def test_bound(self):
        with pytest.raises(ClosureBoundError):
            from_concrete(full_model(2), bound=5)

    def test_bound_reports_pending_generators(self):
        maps = {"f": pmap(2, {0: 1}), "g": pmap(2, {1: 0}), "h": pmap(2, {0: 0, 1: 0})}
        with pytest.raises(ClosureBoundError) as error:
            from_model(maps, {}, bound=1)
        # g, h y las constantes 0 y 1
        assert error.value.frontier == 4

    def test_unknown_operation(self):
        with pytest.raises(InputError):
            from_model({"f": pmap(2, {0: 1})}, {}, ("compose", "fold"))

    def test_needs_generators(self):
        with pytest.raises(InputError):
            from_model({}, {})

    def test_test_must_be_restriction(self):
        with pytest.raises(SortError):
            from_model({}, {"a": pmap(2, {0: 1})})

    def test_too_many_points(self):
        with pytest.raises(InputError):
            from_model({"f": PartialMap(PointSet(16), [-1] * 16)}, {})

    def test_boolean_closure_of_tests(self):
        space = PointSet(3)
        algebra = from_model({}, {"a": TestSet(space, [0]), "b": TestSet(space, [1])})
        members = {algebra.realization[t].domain for t in algebra.tests}
        assert len(members) == 8
        for t, c in zip(algebra.tests, algebra.complement):
            assert algebra.realization[t].domain | algebra.realization[c].domain == frozenset(range(3))
