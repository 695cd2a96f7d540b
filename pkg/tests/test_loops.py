from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings as hsettings

from conftest import PENTAGON, flag_complexes
from corpus import disjoint_points, load_named, path, simplex
from errors import HypothesisRefused
from golod import is_chordal
from loops import (
    Commutator,
    PoincareSeries,
    disjoint_points_profile,
    enumerate_commutator_generators,
    expand_rational,
    free_algebra_series,
    generator_count_check,
    golod_series_identity,
    group_by_degree,
    loop_zk_series,
)
from simplicial import bit, clique_complex, connected_components, graph_from_edges, one_skeleton

PENTAGON_BRACKETS = [
    "[u3,u1]", "[u4,u1]", "[u4,u2]", "[u5,u2]", "[u5,u3]",
    "[u2,[u4,u1]]", "[u3,[u4,u1]]", "[u3,[u5,u2]]", "[u4,[u5,u2]]", "[u1,[u5,u3]]",
]


class TestCommutators:
    def test_pentagon(self):
        generators = enumerate_commutator_generators(PENTAGON)
        assert sorted(map(str, generators)) == sorted(PENTAGON_BRACKETS)
        assert {d: len(cs) for d, cs in group_by_degree(generators).items()} == {2: 5, 3: 5}
        assert generators == sorted(generators, key=Commutator.sort_key)

    def test_path(self):
        (only,) = enumerate_commutator_generators(path(3))
        assert str(only) == "[u3,u1]"
        assert only.to_json() == {"prefix": [], "j": 3, "i": 1}

    def test_connected_pieces_have_none(self):
        assert enumerate_commutator_generators(simplex(3)) == []
        complete = clique_complex(graph_from_edges(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]))
        assert enumerate_commutator_generators(complete) == []

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_points_count(self, m):
        by_degree = group_by_degree(enumerate_commutator_generators(disjoint_points(m)))
        assert {d: len(cs) for d, cs in by_degree.items()} == {
            ell: (ell - 1) * comb(m, ell) for ell in range(2, m + 1)
        }

    def test_bracket_rendering(self):
        c = Commutator(prefix=(2, 3), j=5, i=1)
        assert str(c) == "[u2,[u3,[u5,u1]]]"
        assert c.degree == 4
        assert c.support == 0b10111

    def test_non_flag_refused(self):
        with pytest.raises(HypothesisRefused):
            enumerate_commutator_generators(load_named("triangle_boundary"))

    @given(flag_complexes())
    def test_structure(self, K):
        for c in enumerate_commutator_generators(K):
            assert c.j == max(c.prefix + (c.i, c.j))
            components = connected_components(K, within=c.support)
            home = next(comp for comp in components if comp & bit(c.i))
            assert not home & bit(c.j)
            assert c.i == min(v for v in range(1, K.m + 1) if home & bit(v))

    @hsettings(max_examples=30)
    @given(flag_complexes())
    def test_counts_match_degree_zero_cohomology(self, K):
        assert generator_count_check(K)


class TestSeries:
    def test_pentagon(self):
        series = loop_zk_series(PENTAGON, 6)
        assert series.render() == "1/(1-5t^2-5t^3+t^5)"
        assert series.denominator == (1, 0, -5, -5, 0, 1)
        assert series.expansion == (1, 0, 5, 5, 25, 49, 150)

    @pytest.mark.parametrize("K", [path(3), disjoint_points(2)])
    def test_one_generator(self, K):
        assert loop_zk_series(K, 4).render() == "1/(1-t^2)"

    def test_simplex(self):
        series = loop_zk_series(simplex(3), 3)
        assert series.render() == "1"
        assert series.expansion == (1, 0, 0, 0)

    def test_non_flag_refused(self):
        with pytest.raises(HypothesisRefused):
            loop_zk_series(load_named("rp2_6"), 4)

    def test_json(self):
        data = loop_zk_series(path(3), 3).to_json()
        assert data == {"rational": "1/(1-t^2)", "numerator": [1], "denominator": [1, 0, -1], "expansion": [1, 0, 1, 0]}


class TestExpansion:
    def test_geometric(self):
        assert expand_rational((1,), (1, -1), 4) == (1, 1, 1, 1, 1)

    def test_negative_constant_term(self):
        assert expand_rational((1,), (-1, 1), 3) == (-1, -1, -1, -1)

    def test_requires_unit_constant_term(self):
        with pytest.raises(ValueError):
            expand_rational((1,), (2, 1), 3)
        with pytest.raises(ValueError):
            expand_rational((1,), (), 3)

    def test_render(self):
        assert PoincareSeries((1, 2), (1, -3, 0, 1), ()).render() == "1+2t/(1-3t+t^3)"


class TestGolodIdentity:
    def test_holds_for_points(self):
        report = golod_series_identity(disjoint_points(3), N=12)
        assert report.holds
        assert report.first_residual_degree is None
        assert set(report.residual) == {0}

    def test_fails_for_pentagon(self):
        report = golod_series_identity(PENTAGON, N=8)
        assert not report.holds
        assert report.first_residual_degree == 5
        assert report.residual[5] == -1
        assert report.golod_series.render() == "1/(1-5t^2-5t^3-t^6)"

    @hsettings(max_examples=20, deadline=None)
    @given(flag_complexes(max_m=5))
    def test_holds_exactly_when_chordal(self, K):
        assert golod_series_identity(K).holds == is_chordal(one_skeleton(K))


class TestFreeAlgebra:
    def test_three_points(self):
        series = free_algebra_series([2, 2, 2, 3, 3], 6)
        assert series.render() == "1/(1-3t^2-2t^3)"
        assert series == loop_zk_series(disjoint_points(3), 6)

    def test_trivial_cases(self):
        assert free_algebra_series([], 3).expansion == (1, 0, 0, 0)
        assert free_algebra_series([1], 3).expansion == (1, 1, 1, 1)

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            free_algebra_series([0], 3)

    @given(flag_complexes())
    def test_chordal_loop_series_is_free(self, K):
        if not is_chordal(one_skeleton(K)):
            return
        degrees = [c.degree for c in enumerate_commutator_generators(K)]
        N = 2 * K.m + 2
        assert loop_zk_series(K, N).expansion == free_algebra_series(degrees, N).expansion


def test_points_profile():
    assert disjoint_points_profile(4).counts() == {3: 6, 4: 8, 5: 3}
    with pytest.raises(ValueError):
        disjoint_points_profile(0)


@hsettings(max_examples=40)
@given(flag_complexes())
def test_loop_series_coefficients_are_nonnegative(K):
    assert all(c >= 0 for c in loop_zk_series(K, 8).expansion)
