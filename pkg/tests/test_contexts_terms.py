import itertools

import pytest

from nonhalting import pfun
from nonhalting.contexts import MapContext, TableContext
from nonhalting.errors import CapabilityError, InputError, SortError, TermSyntaxError
from nonhalting.terms import Compose, Domain, Var, evaluate, expand_derived, parse


class TestParser:
    def test_composition_is_left_associative(self):
        term = parse("s;t;u")
        assert term == Compose(Compose(Var("s"), Var("t")), Var("u"))
        assert str(term) == "s;t;u"
        assert str(parse("s;(t;u)")) == "s;(t;u)"

    def test_functions_and_constants(self):
        assert parse("D(s)") == Domain(Var("s"))
        assert str(parse("wc(s, t, 1, 0)")) == "wc(s,t,1,0)"
        assert str(parse("ite(s,a,t,u)", {"a": "test"})) == "ite(s,a,t,u)"

    def test_keyword_without_arguments_is_a_variable(self):
        assert parse("D") == Var("D")

    def test_variables_in_order(self):
        assert [v.name for v in parse("star(t,s);t").variables()] == ["t", "s"]

    @pytest.mark.parametrize("text, position", [
        ("D(s", 3),
        ("s;;t", 2),
        ("D(s,t)", 0),
        ("s $", 2),
        ("s t", 2),
    ])
    def test_syntax_errors(self, text, position):
        with pytest.raises(TermSyntaxError) as error:
            parse(text)
        assert error.value.position == position

    def test_test_position_needs_test_variable(self):
        with pytest.raises(SortError) as error:
            parse("ite(s,a,t,u)")
        assert error.value.subterm == Var("a")
        with pytest.raises(SortError):
            parse("not(s)")

    def test_unknown_sort(self):
        with pytest.raises(InputError):
            parse("s", {"s": "number"})


class TestTableContext:
    def test_evaluate(self, three):
        ctx = TableContext(three)
        assert evaluate(parse("x;y"), {"x": 1, "y": 2}, ctx) == 1
        assert evaluate(parse("D(x);0"), {"x": 2}, ctx) == 0
        assert evaluate(parse("not(a)", {"a": "test"}), {"a": 2}, ctx) == 0

    def test_missing_binding(self, three):
        with pytest.raises(InputError):
            evaluate(parse("x;y"), {"x": 1}, TableContext(three))

    def test_test_variable_bound_to_non_test(self, three):
        with pytest.raises(SortError):
            evaluate(parse("not(a)", {"a": "test"}), {"a": 1}, TableContext(three))

    def test_missing_operation(self, three):
        with pytest.raises(CapabilityError) as error:
            evaluate(parse("star(x,y)"), {"x": 1, "y": 1}, TableContext(three))
        assert error.value.operation == "star"

    def test_natural_order(self, three):
        ctx = TableContext(three)
        assert ctx.leq(0, 1) and ctx.leq(1, 2)
        assert not ctx.leq(2, 1)


class TestMapContext:
    def test_labels_follow_model_names(self, quasiv_algebra):
        ctx = MapContext.from_algebra(quasiv_algebra, "quasiv")
        s = ctx.elements()[quasiv_algebra.element_named("s")]
        result = evaluate(parse("D(s)"), {"s": s}, ctx)
        assert ctx.label(result) == "Ds"
        assert ctx.index_of(result) == quasiv_algebra.element_named("Ds")

    def test_results_outside_the_collection(self):
        space = pfun.PointSet(3)
        ctx = MapContext({"f": pfun.PartialMap(space, [1, 2, -1])}, [])
        f = ctx.elements()[0]
        square = ctx.mult(f, f)
        assert ctx.index_of(square) is None
        assert ctx.label(square) == repr(square)
        assert len(ctx.tests()) == 2

    def test_non_test_in_test_list(self):
        space = pfun.PointSet(2)
        with pytest.raises(SortError):
            MapContext({"f": pfun.PartialMap(space, [1, 0])}, ["f"])

    def test_agrees_with_tables(self, full2):
        table, maps = TableContext(full2), MapContext.from_algebra(full2)
        elements = maps.elements()
        for i, j in itertools.product(range(full2.size), repeat=2):
            x, y = elements[i], elements[j]
            assert maps.index_of(maps.mult(x, y)) == table.mult(i, j)
            assert maps.index_of(maps.neq(x, y)) == table.neq(i, j)
        for i, a in itertools.product(range(full2.size), full2.tests):
            assert maps.index_of(maps.whl(elements[i], elements[a], elements[i])) == table.whl(i, a, i)


class TestDerivedOperations:
    def test_domain_through_weak_comparison(self):
        expanded = expand_derived(parse("D(s)"), {"mult", "wc", "complement"})
        assert str(expanded) == "wc(s,s,1,0)"

    def test_preferential_union_through_ite(self):
        expanded = expand_derived(parse("cup(s,t)"), {"mult", "D", "eite", "complement"})
        assert str(expanded) == "ite(1,D(s),s,t)"

    def test_basis_operations_stay(self):
        term = parse("star(s,t)")
        assert expand_derived(term, {"mult", "star"}) == term

    def test_underivable(self):
        with pytest.raises(CapabilityError):
            expand_derived(parse("star(s,t)"), {"mult", "D", "complement"})

    @pytest.mark.parametrize("text, basis", [
        ("star(s,t)", {"mult", "wc", "complement"}),
        ("neq(s,t)", {"mult", "wc", "complement"}),
        ("P(s)", {"mult", "D", "complement"}),
        ("bowtie(s,t)", {"mult", "D", "star", "complement"}),
        ("cup(s,t)", {"mult", "D", "eite", "complement"}),
        ("wc(s,t,s,t)", {"mult", "D", "star", "neq", "eite", "complement"}),
    ])
    def test_expansion_preserves_meaning(self, full2, text, basis):
        ctx = TableContext(full2)
        term = parse(text)
        expanded = expand_derived(term, basis)
        maps = MapContext.from_algebra(full2)
        for s, t in itertools.product(range(full2.size), repeat=2):
            direct = maps.index_of(evaluate(term, {"s": maps.elements()[s], "t": maps.elements()[t]}, maps))
            assert evaluate(expanded, {"s": s, "t": t}, ctx) == direct
