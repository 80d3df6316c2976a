"""Regularity predicates, hypothesis checks, group predictions and regular systems."""

from fractions import Fraction

import pytest

from src.clusters.counting import count_classes
from src.clusters.equivalence import GroupResult, cluster_group
from src.clusters.extract import cluster_around
from src.core.exceptions import ParameterError
from src.core.geometry import OrthoMap, group_closure, sign_flip
from src.core.rational import QuadRadius
from src.engel.construct import EngelParams, delone_type
from src.engel.sequence import ShiftSequence
from src.regularity.predicates import (
    crosspolytope_generators,
    crucial_holds,
    is_regular,
    kappa,
    onecluster_hypothesis,
    predict_group,
    two_d_r_minus_eps_sq,
)
from src.regularity.systems import enreg_check, two_d_r_sq, two_regular_distinct


def all_plus_4d() -> EngelParams:
    return EngelParams(ShiftSequence.all_plus(4), Fraction(1), Fraction(100), Fraction(1, 2))


class TestIsRegular:
    def test_examples_are_not_regular(self, planar, spatial):
        assert not is_regular(planar.seq).is_regular
        assert not is_regular(spatial.seq).is_regular
        assert is_regular(planar.seq).tau is None

    @pytest.mark.parametrize("tau", [1, -1])
    def test_tau_regular(self, tau):
        verdict = is_regular(ShiftSequence.tau_regular([1, 2], tau))
        assert verdict.is_regular
        assert verdict.tau == tau

    def test_all_plus(self):
        assert is_regular(ShiftSequence.all_plus(4)).tau == 1

    def test_kappa(self, spatial):
        assert kappa(ShiftSequence.tau_regular([1, 2], 1)) == 1
        assert kappa(ShiftSequence.tau_regular([1, 2], -1)) == -1
        assert kappa(spatial.seq) == -1


class TestRadius:
    def test_rational_radii(self):
        assert two_d_r_minus_eps_sq(2, Fraction(169), Fraction(4)) == 2304
        assert two_d_r_minus_eps_sq(3, Fraction(81), Fraction(14)) == 1600

    def test_irrational_radius(self):
        radius = two_d_r_minus_eps_sq(2, Fraction(2), Fraction(1))
        assert isinstance(radius, QuadRadius)
        assert (radius.u, radius.v, radius.D) == (33, -8, 2)

    @pytest.mark.parametrize("eps", [Fraction(0), Fraction(-1), Fraction(4)])
    def test_rejects_bad_eps(self, eps):
        with pytest.raises(ParameterError):
            two_d_r_minus_eps_sq(2, Fraction(1), eps)

    def test_two_d_r_sq(self, planar, spatial):
        assert two_d_r_sq(planar) == 52 * 52
        assert two_d_r_sq(spatial) == 54 * 54


class TestHypothesis:
    def test_planar_fails(self, planar):
        report = onecluster_hypothesis(planar, Fraction(4))
        checks = {c.name: c for c in report.checks}
        assert checks["a_below_b"].holds
        # 4d²(d-1)a² - eps² = 384 and 384² equals 16d²eps²b² exactly
        assert not checks["radius_below_layer_gap"].holds
        assert not checks["a_sq_bound"].holds
        assert checks["a_sq_bound"].lhs.endswith("=2500")
        assert checks["a_sq_bound"].rhs.endswith("=2304")
        assert not report.all_hold
        assert not report.crucial_holds

    def test_spatial_holds(self, spatial):
        report = onecluster_hypothesis(spatial, Fraction(14))
        checks = {c.name: c for c in report.checks}
        assert checks["radius_below_layer_gap"].holds
        assert checks["a_sq_bound"].lhs.endswith("=9216")
        assert checks["a_sq_bound"].rhs.endswith("=9604")
        assert report.all_hold
        assert report.crucial_holds

    def test_crucial_is_strict(self):
        # a⁴d²(d-1)² = 4 = eps²b²
        assert not crucial_holds(2, Fraction(1), Fraction(4), Fraction(1))
        assert crucial_holds(2, Fraction(1), Fraction(5), Fraction(1))

    def test_rejects_uneven_spacing(self, planar):
        uneven = EngelParams(planar.seq, Fraction(5), Fraction(144), Fraction(1), Fraction(81))
        with pytest.raises(ParameterError):
            onecluster_hypothesis(uneven, Fraction(4))

    def test_rejects_non_positive_eps(self, planar):
        with pytest.raises(ParameterError):
            onecluster_hypothesis(planar, Fraction(0))


class TestGroupPrediction:
    @pytest.mark.parametrize(("k", "axes", "order"), [(1, [1, 2], 8), (2, [2], 2), (3, [], 1)])
    def test_all_plus_4d(self, k, axes, order):
        prediction = predict_group(all_plus_4d(), k, 0)
        assert prediction.axes == axes
        assert prediction.predicted_order == order
        assert prediction.applicable
        assert prediction.sufficient_condition.holds

    def test_planar(self, planar):
        prediction = predict_group(planar, 1, 0)
        assert prediction.axes == []
        assert prediction.predicted_order == 1
        assert prediction.applicable

    def test_rejects_k_zero(self, planar):
        with pytest.raises(ParameterError):
            predict_group(planar, 0, 0)

    def test_k1_matches_computed_group(self):
        params = all_plus_4d()
        rho_sq = 4 * 103 * Fraction(1)
        result = cluster_group(cluster_around(params, 0, rho_sq))
        assert isinstance(result, GroupResult)
        assert result.order == predict_group(params, 1, 0).predicted_order

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [2, 3])
    def test_larger_k_matches_computed_group(self, k):
        params = all_plus_4d()
        rho_sq = 4 * k * k * Fraction(103)
        # the k = 3 window holds about 2.1 million lattice points
        cluster = cluster_around(params, 0, rho_sq, max_points=5_000_000)
        result = cluster_group(cluster, with_maps=False)
        assert isinstance(result, GroupResult)
        assert result.order == predict_group(params, k, 0).predicted_order

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_generators_close_to_the_predicted_order(self, k):
        prediction = predict_group(all_plus_4d(), k, 0)
        generators = crosspolytope_generators(4, prediction.axes)
        assert [g.to_strings() for g in generators] == prediction.generators
        assert len(group_closure(generators, 4)) == prediction.predicted_order

    def test_predicted_generators_are_computed_elements(self):
        params = all_plus_4d()
        prediction = predict_group(params, 1, 0)
        result = cluster_group(cluster_around(params, 0, 4 * Fraction(103)))
        assert isinstance(result, GroupResult)
        computed = [m.to_strings() for m in result.maps()]
        assert prediction.generators
        for generator in prediction.generators:
            assert generator in computed

    def test_spatial_prediction_is_the_computed_reflection(self, spatial):
        prediction = predict_group(spatial, 1, 0)
        assert prediction.axes == [1]
        assert prediction.generators == [sign_flip(3, 1).to_strings()]
        result = cluster_group(cluster_around(spatial, 0, Fraction(18 * 18)))
        assert isinstance(result, GroupResult)
        assert [m.to_strings() for m in result.maps()] == [
            OrthoMap.identity(3).to_strings(),
            sign_flip(3, 1).to_strings(),
        ]


class TestRegularSystems:
    @pytest.mark.parametrize(
        ("name", "initial", "tau"),
        [
            ("planar", None, None),
            ("planar", [1], 1),
            ("planar", [1], -1),
            pytest.param("spatial", None, None, marks=pytest.mark.slow),
            pytest.param("spatial", [1, 2], 1, marks=pytest.mark.slow),
            pytest.param("spatial", [1, 2], -1, marks=pytest.mark.slow),
        ],
    )
    def test_verdict_agrees_with_single_class_at_two_d_r(self, name, initial, tau, request):
        params = request.getfixturevalue(name)
        if initial is not None:
            params = params.with_sequence(ShiftSequence.tau_regular(initial, tau))
        report = enreg_check(params)
        assert report.consistent
        assert report.is_regular == (initial is not None)
        assert report.tau == tau
        if report.is_regular:
            assert report.n_classes == 1
        else:
            assert report.n_classes >= 2

    @pytest.mark.parametrize(
        ("name", "initial", "tau", "k"),
        [
            ("planar", [1], 1, 1),
            ("planar", [1], 1, 2),
            ("planar", [1], -1, 1),
            ("planar", [1], -1, 2),
            pytest.param("spatial", [1, 2], 1, 1, marks=pytest.mark.slow),
            pytest.param("spatial", [1, 2], 1, 2, marks=pytest.mark.slow),
            pytest.param("spatial", [1, 2], -1, 1, marks=pytest.mark.slow),
            pytest.param("spatial", [1, 2], -1, 2, marks=pytest.mark.slow),
        ],
    )
    def test_regular_sets_have_one_class_at_two_k_r(self, name, initial, tau, k, request):
        params = request.getfixturevalue(name).with_sequence(
            ShiftSequence.tau_regular(initial, tau)
        )
        assert is_regular(params.seq).is_regular
        _, cover_sq = delone_type(params)
        assert count_classes(params, 4 * k * k * cover_sq).n_classes == 1

    def test_non_regular_planar_is_consistent(self, planar):
        report = enreg_check(planar)
        assert not report.is_regular
        assert report.n_classes >= 2
        assert report.consistent
        assert report.rho_sq == "2704"

    def test_regular_planar_is_consistent(self, planar):
        regular = planar.with_sequence(ShiftSequence.tau_regular([1], 1))
        report = enreg_check(regular)
        assert report.is_regular
        assert report.n_classes == 1
        assert report.consistent

    def test_two_regular_without_clusters(self, spatial):
        report = two_regular_distinct(spatial, cluster_check=False)
        assert report.initial_terms == [1, 2]
        assert report.plus_sequence == [1, 2]
        assert report.minus_sequence == [1, 2, -1, -2]
        assert (report.kappa_plus, report.kappa_minus) == (1, -1)
        assert report.distinct
        assert report.plus_self_equivalent is None
        assert report.clusters_distinct is None

    def test_two_regular_planar_clusters(self, planar):
        report = two_regular_distinct(planar)
        assert report.plus_verdict.is_regular and report.minus_verdict.is_regular
        assert report.plus_self_equivalent
        assert report.minus_self_equivalent
        assert report.clusters_distinct

    @pytest.mark.slow
    def test_two_regular_spatial_clusters(self, spatial):
        report = two_regular_distinct(spatial)
        assert report.plus_self_equivalent
        assert report.minus_self_equivalent
        assert report.clusters_distinct
