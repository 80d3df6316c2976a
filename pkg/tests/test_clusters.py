"""Cluster extraction, equivalence witnesses and cluster groups."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.clusters.equivalence import (
    GroupResult,
    NonSpanning,
    cluster_group,
    cluster_rank,
    clusters_equivalent,
    compose_witnesses,
    invert_witness,
    preserves_gram,
)
from src.clusters.extract import (
    Cluster,
    cluster_around,
    extract_cluster,
    extract_cluster_from_points,
)
from src.core.exceptions import InsufficientWindowError, ParameterError
from src.core.geometry import SplitVector, inner, sign_flip, signed_permutation
from src.engel.construct import generate_window, layer_origin

UNIT = Fraction(1)


def planar_points(*pairs: tuple[int, int]) -> list[SplitVector]:
    return [SplitVector.of([x], v) for x, v in pairs]


def small_cluster(*pairs: tuple[int, int]) -> Cluster:
    points = [SplitVector.zero(2), *planar_points(*pairs)]
    return extract_cluster_from_points(points, SplitVector.zero(2), Fraction(100), UNIT)


class TestExtraction:
    def test_planar_radius_26(self, planar):
        cluster = cluster_around(planar, 0, Fraction(676))
        assert cluster.size == 10
        assert len(cluster.dist_partition[Fraction(676)]) == 2
        assert cluster.center_layer == 0
        assert cluster.norms == tuple(sorted(cluster.norms))

    def test_ball_is_closed(self, planar):
        # (±10, ±1 layer) sits exactly on the sphere of radius 26
        cluster = cluster_around(planar, 0, Fraction(676))
        assert SplitVector.of([10], 2) in cluster.rel_points

    def test_center_off_layer(self, planar):
        with pytest.raises(ParameterError):
            cluster_around(planar, 0, Fraction(100), center=SplitVector.of([3], 0))

    def test_window_too_small(self, planar):
        window = generate_window(planar, (0, 0), 1)
        with pytest.raises(InsufficientWindowError):
            extract_cluster(window, SplitVector.zero(2), Fraction(676))

    def test_lattice_radius_too_small(self, planar):
        window = generate_window(planar, (-1, 1), 1)
        with pytest.raises(InsufficientWindowError):
            extract_cluster(window, SplitVector.zero(2), Fraction(676))

    def test_center_outside_window(self, planar):
        window = generate_window(planar, (-2, 2), 6)
        with pytest.raises(ParameterError):
            extract_cluster(window, layer_origin(planar, 5), Fraction(100))

    def test_off_center_point(self, planar):
        center = layer_origin(planar, 1) + SplitVector.of([30], 0)
        shifted = cluster_around(planar, 1, Fraction(676), center=center)
        assert shifted.center == center
        assert shifted.rel_points == cluster_around(planar, 1, Fraction(676)).rel_points

    def test_from_points_needs_center(self):
        with pytest.raises(ParameterError):
            extract_cluster_from_points(
                planar_points((1, 0)), SplitVector.zero(2), Fraction(4), UNIT
            )


class TestEquivalence:
    def test_mirror_images_are_equivalent(self):
        source = small_cluster((3, 0), (1, 2))
        mirror = small_cluster((-3, 0), (-1, 2))
        witness = clusters_equivalent(source, mirror)
        assert witness is not None
        assert witness.map == sign_flip(2, 1)
        assert preserves_gram(witness, source, mirror)

    def test_same_distances_different_shape(self):
        source = small_cluster((3, 0), (1, 2))
        other = small_cluster((3, 0), (2, 1))
        assert [c.norms for c in (source, other)] == [(5, 9), (5, 9)]
        assert clusters_equivalent(source, other) is None

    def test_size_mismatch(self):
        assert clusters_equivalent(small_cluster((3, 0)), small_cluster((3, 0), (0, 3))) is None

    def test_empty_clusters(self):
        assert clusters_equivalent(small_cluster(), small_cluster()) is not None

    def test_invert_and_compose(self):
        source = small_cluster((3, 0), (1, 2), (0, -1))
        mirror = small_cluster((-3, 0), (-1, 2), (0, -1))
        witness = clusters_equivalent(source, mirror)
        assert witness is not None
        back = invert_witness(witness)
        assert preserves_gram(back, mirror, source)
        assert compose_witnesses(witness, back).is_identity
        round_trip = compose_witnesses(witness, back).map
        assert round_trip is not None and round_trip.is_identity()

    def test_vertical_units_must_agree(self):
        other = extract_cluster_from_points(
            [SplitVector.zero(2)], SplitVector.zero(2), Fraction(4), Fraction(2)
        )
        with pytest.raises(ParameterError):
            clusters_equivalent(small_cluster(), other)


class TestGroups:
    def test_planar_radius_26_is_trivial(self, planar):
        result = cluster_group(cluster_around(planar, 0, Fraction(676)))
        assert isinstance(result, GroupResult)
        assert result.order == 1
        assert result.elements[0].is_identity

    def test_spatial_radius_18_has_a_reflection(self, spatial):
        result = cluster_group(cluster_around(spatial, 0, Fraction(324)))
        assert isinstance(result, GroupResult)
        assert result.order == 2
        assert result.elements[0].is_identity
        reflection = result.maps()[1]
        assert reflection.order() == 2
        assert reflection.to_strings() == sign_flip(3, 1).to_strings()
        assert reflection.apply(SplitVector.of([1, 0], 0)) == SplitVector.of([-1, 0], 0)

    def test_spatial_radius_36_is_trivial(self, spatial):
        result = cluster_group(cluster_around(spatial, 0, Fraction(1296)))
        assert isinstance(result, GroupResult)
        assert result.order == 1

    def test_flat_cluster_does_not_span(self, planar):
        cluster = cluster_around(planar, 0, Fraction(100))
        assert cluster_rank(cluster) == 1
        assert cluster_group(cluster) == NonSpanning(rank=1, dim=2)

    def test_symmetric_cross(self):
        cross = small_cluster((1, 0), (-1, 0), (0, 1), (0, -1))
        result = cluster_group(cross)
        assert isinstance(result, GroupResult)
        assert result.order == 8
        # swaps of the horizontal and vertical axes have no vertical-preserving map
        assert len(result.maps()) == 4


# =============================================================================
# Brute-force oracle
# =============================================================================

offsets = st.tuples(
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-2, max_value=2),
).filter(lambda t: t != (0, 0, 0))
point_sets = st.lists(offsets, min_size=1, max_size=4, unique=True)


def spatial_cluster(triples: list[tuple[int, int, int]]) -> Cluster:
    center = SplitVector.zero(3)
    points = [center, *(SplitVector.of([x, y], v) for x, y, v in triples)]
    return Cluster.build(center, points, Fraction(100), UNIT)


def brute_force_equivalent(source: Cluster, target: Cluster) -> bool:
    src, dst = source.rel_points, target.rel_points
    if len(src) != len(dst):
        return False
    for perm in permutations(range(len(dst))):
        if all(
            inner(src[i], src[k], UNIT) == inner(dst[perm[i]], dst[perm[k]], UNIT)
            for i in range(len(src))
            for k in range(i, len(src))
        ):
            return True
    return False


class TestOracle:
    @settings(max_examples=150, deadline=None)
    @given(point_sets, point_sets)
    def test_agrees_with_brute_force(self, first, second):
        source, target = spatial_cluster(first), spatial_cluster(second)
        found = clusters_equivalent(source, target, with_map=False)
        assert (found is not None) == brute_force_equivalent(source, target)

    @settings(max_examples=100, deadline=None)
    @given(
        point_sets,
        st.sampled_from([((1, 1), (2, 1)), ((2, -1), (1, 1)), ((1, -1), (2, -1))]),
        st.sampled_from([1, -1]),
    )
    def test_images_under_isometries(self, triples, images, vertical):
        ortho = signed_permutation(3, list(images), vertical)
        source = spatial_cluster(triples)
        target = Cluster.build(
            SplitVector.zero(3),
            [ortho.apply(x) for x in source.absolute_points()],
            Fraction(100),
            UNIT,
        )
        witness = clusters_equivalent(source, target)
        assert witness is not None
        assert preserves_gram(witness, source, target)
        if witness.map is not None:
            for i, j in enumerate(witness.bijection):
                assert witness.map.apply(source.rel_points[i]) == target.rel_points[j]
