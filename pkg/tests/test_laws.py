import pytest

from nonhalting.algebra import from_concrete
from nonhalting.contexts import MapContext, TableContext
from nonhalting.errors import CapabilityError, InputError
from nonhalting.laws import (CheckMode, Law, LawChecker, check, check_equivalences, get_suite,
                             largest_agreement_check, registry, suites)
from nonhalting.pfun import full_model


@pytest.fixture(scope="module")
def wc_only():
    return from_concrete(full_model(2), close_under=("compose", "wc"))


class TestRegistry:
    def test_suites_resolve(self):
        for suite in suites().values():
            assert len(suite.resolve()) == len(suite.laws)

    def test_unknown_suite(self):
        with pytest.raises(InputError):
            get_suite("lattice")

    def test_variable_sorts(self):
        law = registry()["DT2A"]
        assert law.variables == (("s", "elem"), ("a", "test"), ("e", "domelem"))
        assert law.is_implication
        assert str(law) == "D(s;a) = D(D(s;a));e ∧ D(s;not(a)) = D(D(s;not(a)));e ⇒ D(s) = D(D(s));e"

    def test_define_rejects_bad_equations(self):
        with pytest.raises(InputError):
            Law.define("broken", ["s = t = u"])
        with pytest.raises(InputError):
            Law.define("undeclared", ["s = t"], variables=["s"])


class TestFullModel:
    @pytest.mark.parametrize("suite", sorted(suites()))
    def test_every_suite_holds(self, full2, suite):
        report = check(TableContext(full2, "full-2"), suite)
        assert report.all_passed, [r.to_dict() for r in report.failures()]
        assert not report.has_errors

    def test_structural_result_is_appended(self, full2):
        report = check(TableContext(full2), "monoid-with-tests")
        assert report.result("structure").passed

    def test_literal_bowtie_reading_fails(self, full2):
        result = LawChecker(TableContext(full2)).check_law("bowtie-neq-literal")
        assert result.status == "fail"
        assert result.witness is not None

    def test_concrete_context(self, full1):
        report = check(MapContext.from_algebra(full1), "kleenean-w")
        assert report.all_passed

    def test_operations_derived_from_weak_comparison(self, wc_only):
        assert wc_only.capabilities == frozenset({"mult", "complement", "wc"})
        assert check(TableContext(wc_only), "restriction-with-tests").all_passed
        report = check(TableContext(wc_only, "wc-only"), "weak-comparison")
        assert report.all_passed, [r.to_dict() for r in report.failures()]
        assert not [r.law for r in report.results if r.status == "skipped"]
        for law in ("DT2A", "innorm", "inimp"):
            assert report.result(law).examined > 0, law

    def test_domain_elements_from_weak_comparison(self, wc_only, full2):
        derived_ctx, tabled_ctx = TableContext(wc_only), TableContext(full2)
        derived = LawChecker(derived_ctx)._domain("domelem")
        tabled = LawChecker(tabled_ctx)._domain("domelem")
        assert len(derived) == 4
        assert sorted(derived_ctx.label(x) for x in derived) == sorted(tabled_ctx.label(x) for x in tabled)

    def test_largest_agreement(self, full2, quasiv_algebra):
        assert largest_agreement_check(TableContext(full2)).holds
        assert largest_agreement_check(TableContext(quasiv_algebra)).holds


class TestQuotients:
    def test_quasiv_quotient_fails_only_domain_tests(self, quasiv_quotient):
        report = check(TableContext(quasiv_quotient, "quasiv/~"), "restriction-with-tests")
        assert [r.law for r in report.failures()] == ["DT2"]
        failure = report.result("DT2")
        assert set(failure.witness_labels) == {"s", "a", "t", "u"}
        assert failure.failed == "D(s);t = D(s);u"

    def test_quasiv_quotient_witnesses(self, quasiv_quotient):
        checker = LawChecker(TableContext(quasiv_quotient))
        witnesses = checker.witnesses("DT2")
        assert {"s": "s", "a": "beta", "t": "e", "u": "1"} in witnesses
        assert witnesses[0] == check(TableContext(quasiv_quotient), "restriction-with-tests") \
            .result("DT2").witness_labels
        assert len(checker.witnesses("DT2", limit=1)) == 1

    def test_quasiv_quotient_reports_suggested_witness(self, quasiv, quasiv_quotient):
        report = check(TableContext(quasiv_quotient, "quasiv/~"), "restriction-with-tests", hints=quasiv.witnesses)
        failure = report.result("DT2")
        assert failure.witness_labels == {"s": "s", "a": "beta", "t": "e", "u": "1"}
        assert failure.examined == 1
        assert [r.law for r in report.failures()] == ["DT2"]

    def test_suggested_witness_that_holds_falls_back(self, quasiv_algebra):
        hints = {"DT2": {"s": "s", "a": "beta", "t": "e", "u": "1"}}
        assert check(TableContext(quasiv_algebra), "restriction-with-tests", hints=hints).all_passed

    def test_unknown_labels_are_ignored(self, quasiv_quotient):
        hints = {"DT2": {"s": "nope", "a": "beta", "t": "e", "u": "1"}}
        result = LawChecker(TableContext(quasiv_quotient), hints).check_law("DT2")
        assert result.status == "fail"
        assert result.witness_labels == check(TableContext(quasiv_quotient), "restriction-with-tests") \
            .result("DT2").witness_labels

    def test_quasiv_closure_satisfies_domain_tests(self, quasiv_algebra):
        assert check(TableContext(quasiv_algebra), "restriction-with-tests").all_passed

    def test_disagreeable_quotient_fails_only_implication(self, disagreeable_quotient):
        report = check(TableContext(disagreeable_quotient, "disagreeable/~"), "disagreeable")
        assert [r.law for r in report.failures()] == ["inimp"]
        assert report.result("inimp").witness_labels == {"s": "s", "t": "t", "e": "e"}

    def test_missing_capability(self, quasiv_algebra):
        with pytest.raises(CapabilityError) as error:
            check(TableContext(quasiv_algebra), "eite")
        assert error.value.operation == "eite"

    def test_skipped_law(self, quasiv_algebra):
        result = LawChecker(TableContext(quasiv_algebra)).check_law("in1")
        assert result.status == "skipped"


class TestModes:
    def test_sampling_is_reproducible(self, full2):
        mode = CheckMode.sampled(200, seed=7)
        first = check(TableContext(full2), "twisted-agreeable", mode)
        second = check(TableContext(full2), "twisted-agreeable", mode)
        assert first.to_dict() == second.to_dict()
        assert all(r.examined == 200 for r in first.results)
        assert first.to_dict()["seed"] == 7

    def test_sampling_needs_a_positive_count(self):
        with pytest.raises(InputError):
            CheckMode.sampled(0, seed=1)

    def test_auto_mode_is_exhaustive_on_small_spaces(self, three):
        result = LawChecker(TableContext(three)).check_law("assoc", CheckMode.auto(27, seed=0))
        assert result.mode == CheckMode.exhaustive()
        assert result.examined == 27

    def test_auto_mode_samples_large_spaces(self, three):
        result = LawChecker(TableContext(three)).check_law("assoc", CheckMode.auto(10, seed=5))
        assert result.mode == CheckMode.sampled(10, 5)
        assert result.examined == 10
        assert str(CheckMode.auto(10, seed=5)) == "auto(count=10, seed=5)"

    def test_exhaustive_counts(self, three):
        result = LawChecker(TableContext(three)).check_law("assoc")
        assert result.passed
        assert result.examined == 27


class TestEquivalences:
    def test_no_disagreement(self, full1, full2, quasiv_quotient, disagreeable_quotient):
        corpus = [
            ("full-1", TableContext(full1)),
            ("full-2", TableContext(full2)),
            ("quasiv/~", TableContext(quasiv_quotient)),
            ("disagreeable/~", TableContext(disagreeable_quotient)),
        ]
        report = check_equivalences(corpus)
        assert report.disagreements == []
        statuses = {(e.context, e.proposition): e.status for e in report.entries}
        assert statuses[("full-2", "DT2~EITE1+EITE4")] == "agree"
        assert statuses[("full-2", "inimp~wc1+wc2")] == "agree"
        assert statuses[("quasiv/~", "DT2~EITE1+EITE4")] == "skipped"
