import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pmap
from nonhalting import pfun
from nonhalting.errors import InputError, SortError
from nonhalting.pfun import ConcreteModel, PartialMap, PointSet, TestSet, full_model

EIGHT = PointSet(8)
TEN = PointSet(10)


@pytest.fixture
def s8():
    return pmap(8, {x: x + 4 for x in range(4)})


@pytest.fixture
def beta():
    return TestSet(EIGHT, range(6))


@pytest.fixture
def s10():
    return pmap(10, {x: x + 5 for x in range(5)})


@pytest.fixture
def t10():
    return pmap(10, {0: 5, 1: 7, 2: 6, 3: 9, 4: 8})


@st.composite
def maps_on_shared_space(draw, count=2, with_test=False):
    n = draw(st.integers(min_value=1, max_value=5))
    space = PointSet(n)
    image = st.lists(st.integers(min_value=-1, max_value=n - 1), min_size=n, max_size=n)
    maps = [PartialMap(space, draw(image)) for _ in range(count)]
    if with_test:
        members = draw(st.sets(st.integers(min_value=0, max_value=n - 1)))
        maps.append(TestSet(space, members))
    return maps


class TestBasics:
    def test_compose_reads_left_to_right(self, s8, beta):
        assert pfun.compose(s8, beta).entries() == [4, 5, None, None, None, None, None, None]

    def test_compose_with_constants(self, s8):
        assert pfun.compose(s8, pfun.identity(EIGHT)) == s8
        assert pfun.compose(s8, pfun.null(EIGHT)) == pfun.null(EIGHT)

    def test_domain(self, s8):
        assert pfun.domain_of(s8).members == frozenset(range(4))
        assert pfun.domain_of(pfun.identity(EIGHT)) == pfun.identity(EIGHT)
        assert pfun.domain_of(pmap(8, {2: 6})).members == frozenset({2})

    def test_complement(self, beta):
        assert pfun.test_complement(beta).members == frozenset({6, 7})
        assert pfun.test_complement(pfun.identity(EIGHT)) == pfun.null(EIGHT)
        assert pfun.test_complement(pfun.test_complement(beta)) == beta

    def test_complement_rejects_non_tests(self, s8):
        with pytest.raises(SortError):
            pfun.test_complement(s8)

    def test_intersect_agree_disagree(self, s10, t10):
        assert pfun.intersect(s10, t10) == pmap(10, {0: 5})
        assert pfun.intersect(s10, s10) == s10
        assert pfun.intersect(s10, pfun.null(TEN)) == pfun.null(TEN)
        assert pfun.agree_star(s10, t10).members == frozenset({0})
        assert pfun.agree_star(s10, s10) == pfun.domain_of(s10)
        assert pfun.disagree(s10, t10).members == frozenset({1, 2, 3, 4})
        assert pfun.disagree(s10, s10) == pfun.null(TEN)
        assert pfun.disagree(s10, pfun.null(TEN)) == pfun.null(TEN)

    def test_disjoint_domains_never_agree(self):
        f, g = pmap(4, {0: 1}), pmap(4, {2: 1})
        assert pfun.agree_star(f, g) == pfun.null(PointSet(4))

    def test_union(self):
        assert pfun.union(pmap(3, {0: 1}), pmap(3, {2: 2})) == pmap(3, {0: 1, 2: 2})
        with pytest.raises(InputError):
            pfun.union(pmap(3, {0: 1}), pmap(3, {0: 2}))

    def test_mismatched_spaces(self):
        with pytest.raises(InputError):
            pfun.compose(pmap(3, {}), pmap(4, {}))

    def test_ext_ite(self, s8, beta):
        one, zero = pfun.identity(EIGHT), pfun.null(EIGHT)
        assert pfun.ext_ite(s8, beta, one, zero) == TestSet(EIGHT, [0, 1])
        assert pfun.ext_ite(s8, one, s8, s8) == pfun.compose(pfun.domain_of(s8), s8)
        assert pfun.ext_ite(zero, beta, s8, one) == zero

    def test_weak_comparison(self, s10, t10):
        one, zero = pfun.identity(TEN), pfun.null(TEN)
        assert pfun.weak_cmp(s10, t10, one, zero) == TestSet(TEN, [0])
        assert pfun.weak_cmp(s10, t10, zero, one) == TestSet(TEN, [1, 2, 3, 4])
        assert pfun.weak_cmp(s10, s10, t10, one) == pfun.compose(pfun.domain_of(s10), t10)

    def test_while_do(self):
        two = PointSet(2)
        swap = pmap(2, {0: 1, 1: 0})
        assert pfun.while_do(pfun.identity(two), swap) == pfun.null(two)
        assert pfun.while_do(pfun.null(two), swap) == pfun.identity(two)
        step = pmap(4, {0: 1, 1: 2, 2: 3})
        assert pfun.while_do(TestSet(PointSet(4), [0, 1, 2]), step).entries() == [3, 3, 3, 3]

    def test_ext_while(self, s8, beta):
        g = pmap(8, {0: 1, 1: 2})
        assert pfun.ext_while(pfun.identity(EIGHT), beta, g) == pfun.while_do(beta, g)
        assert pfun.ext_while(pfun.null(EIGHT), beta, g) == pfun.null(EIGHT)
        assert pfun.ext_while(s8, pfun.null(EIGHT), g) == pfun.domain_of(s8)

    def test_natural_order(self, s10, t10):
        f, ef = TestSet(EIGHT, [2, 3]), TestSet(EIGHT, [2])
        assert pfun.natural_leq(ef, f)
        assert not pfun.natural_leq(f, ef)
        assert pfun.natural_leq(s10, s10)
        assert not pfun.natural_leq(s10, t10)

    def test_derived_operations(self, s8, s10, t10):
        assert pfun.antidomain_P(s8).members == frozenset({4, 5, 6, 7})
        assert pfun.pref_union(s8, s8) == s8
        assert pfun.bowtie(s10, t10).members == frozenset({0, 5, 6, 7, 8, 9})

    def test_power(self, s8):
        assert pfun.power(s8, 0) == pfun.identity(EIGHT)
        assert pfun.power(s8, 2) == pfun.null(EIGHT)


class TestFullModel:
    @pytest.mark.parametrize("n, maps, tests", [(0, 1, 1), (1, 2, 2), (2, 9, 4), (3, 64, 8)])
    def test_counts(self, n, maps, tests):
        model = full_model(n)
        assert len(model.maps) == maps
        assert len(model.tests) == tests
        assert len(set(model.maps.values())) == maps

    def test_bound(self):
        with pytest.raises(InputError):
            full_model(6)

    def test_file_format(self):
        model = full_model(2)
        data = model.to_dict()
        assert data["points"] == 2
        assert data["maps"]["f_x1"] == [None, 1]
        back = ConcreteModel.from_dict(data)
        assert back.maps == model.maps
        assert back.tests == model.tests
        assert back.operations == model.operations

    def test_invalid_names(self):
        with pytest.raises(InputError):
            ConcreteModel(space=PointSet(1), maps={"bad name": pmap(1, {})})

    def test_out_of_range_image(self):
        with pytest.raises(InputError):
            PartialMap(PointSet(2), [0, 2])


class TestPointwiseLaws:
    @given(maps_on_shared_space(count=3))
    def test_compose_associative(self, maps):
        f, g, h = maps
        assert pfun.compose(pfun.compose(f, g), h) == pfun.compose(f, pfun.compose(g, h))

    @given(maps_on_shared_space(count=1))
    def test_domain_is_left_unit(self, maps):
        f, = maps
        assert pfun.compose(pfun.domain_of(f), f) == f

    @given(maps_on_shared_space(count=2))
    def test_agreement_and_disagreement_are_disjoint(self, maps):
        f, g = maps
        assert pfun.agree_star(f, g) == pfun.agree_star(g, f)
        assert pfun.compose(pfun.agree_star(f, g), pfun.disagree(f, g)) == pfun.null(f.space)

    @given(maps_on_shared_space(count=2))
    def test_order_is_graph_inclusion(self, maps):
        f, g = maps
        assert pfun.natural_leq(f, g) == (f == pfun.compose(pfun.domain_of(f), g))

    @given(maps_on_shared_space(count=4))
    def test_weak_comparison_decomposes(self, maps):
        f, g, h, k = maps
        expected = pfun.pref_union(pfun.compose(pfun.agree_star(f, g), h),
                                   pfun.compose(pfun.disagree(f, g), k))
        assert pfun.weak_cmp(f, g, h, k) == expected

    @given(maps_on_shared_space(count=3, with_test=True))
    def test_ite_decomposes(self, maps):
        f, g, h, alpha = maps
        then = pfun.compose(pfun.domain_of(pfun.compose(f, alpha)), g)
        other = pfun.compose(pfun.domain_of(pfun.compose(f, pfun.test_complement(alpha))), h)
        assert pfun.ext_ite(f, alpha, g, h) == pfun.pref_union(then, other)

    @settings(max_examples=200)
    @given(maps_on_shared_space(count=2, with_test=True))
    def test_while_unfolds_once(self, maps):
        t, s, alpha = maps
        loop = pfun.ext_while(t, alpha, s)
        unfolded = pfun.ext_ite(t, alpha, pfun.compose(s, loop), pfun.identity(t.space))
        assert loop == unfolded
