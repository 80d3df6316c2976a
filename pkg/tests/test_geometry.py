"""Split vectors, squared distances and orthogonal maps."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.exceptions import ParameterError
from src.core.geometry import (
    OrthoMap,
    SplitVector,
    axis_transposition,
    group_closure,
    inner,
    sign_flip,
    signed_permutation,
    sq_dist,
)

coords = st.fractions(min_value=-20, max_value=20, max_denominator=12)
levels = st.integers(min_value=-6, max_value=6)
spatial_vectors = st.builds(
    lambda x, y, v: SplitVector((x, y), v), coords, coords, levels
)


@st.composite
def spatial_maps(draw):
    perm = draw(st.sampled_from(list(permutations([1, 2]))))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=2, max_size=2))
    vertical = draw(st.sampled_from([1, -1]))
    return signed_permutation(3, list(zip(perm, signs)), vertical)


class TestSqDist:
    def test_zero_for_equal_points(self):
        x = SplitVector.of([3, Fraction(1, 2)], 5)
        assert sq_dist(x, x, Fraction(49)) == 0

    def test_layer_two_neighbour(self):
        assert sq_dist(SplitVector.of([0], 0), SplitVector.of([1], 4), Fraction(144)) == 2305

    def test_sharp_point_distance(self):
        # (a, b) sits at squared distance a² + b² = R² from the origin
        sharp = SplitVector.of([5], 1)
        assert sq_dist(sharp, SplitVector.zero(2), Fraction(144)) == 169

    def test_dimension_mismatch(self):
        with pytest.raises(ParameterError):
            sq_dist(SplitVector.of([0], 0), SplitVector.of([0, 0], 0), Fraction(1))

    def test_inner_product(self):
        x, y = SplitVector.of([1, 2], 1), SplitVector.of([3, -1], 2)
        assert inner(x, y, Fraction(4)) == 1 + 8

    @given(spatial_vectors, spatial_vectors, spatial_maps())
    def test_isometry_invariance(self, x, y, ortho):
        unit_sq = Fraction(49)
        assert sq_dist(ortho.apply(x), ortho.apply(y), unit_sq) == sq_dist(x, y, unit_sq)

    @given(spatial_vectors, spatial_vectors)
    def test_symmetric(self, x, y):
        assert sq_dist(x, y, Fraction(2)) == sq_dist(y, x, Fraction(2))

    @given(spatial_vectors, spatial_vectors, spatial_vectors)
    def test_addition_is_exact(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x + y) - y == x


class TestOrthoMap:
    def test_identity_composition(self):
        ortho = signed_permutation(3, [(2, 1), (1, -1)])
        assert OrthoMap.identity(3).compose(ortho) == ortho
        assert ortho.compose(OrthoMap.identity(3)) == ortho

    def test_reflection_squared_is_identity(self):
        flip = sign_flip(3, 2)
        assert flip.compose(flip).is_identity()
        assert flip.order() == 2

    def test_quarter_turn_has_order_four(self):
        assert signed_permutation(3, [(2, 1), (1, -1)]).order() == 4

    def test_inverse(self):
        ortho = signed_permutation(3, [(2, 1), (1, -1)], vertical_sign=-1)
        assert ortho.compose(ortho.invert()).is_identity()

    def test_apply(self):
        ortho = signed_permutation(3, [(2, 1), (1, -1)], vertical_sign=-1)
        assert ortho.apply(SplitVector.of([1, 0], 3)) == SplitVector.of([0, 1], -3)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(ParameterError):
            OrthoMap(((Fraction(1), Fraction(1), Fraction(0)),
                      (Fraction(0), Fraction(1), Fraction(0)),
                      (Fraction(0), Fraction(0), Fraction(1))))

    def test_rejects_vertical_mixing(self):
        with pytest.raises(ParameterError):
            OrthoMap(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))

    def test_rational_rotation_is_accepted(self):
        # 3-4-5 rotation of the horizontal plane
        c, s = Fraction(3, 5), Fraction(4, 5)
        ortho = OrthoMap(((c, -s, Fraction(0)), (s, c, Fraction(0)),
                          (Fraction(0), Fraction(0), Fraction(1))))
        assert ortho.apply(SplitVector.of([5, 0], 0)) == SplitVector.of([3, 4], 0)

    def test_to_strings(self):
        assert sign_flip(2, 1).to_strings() == [["-1", "0"], ["0", "1"]]


class TestGroupClosure:
    def test_square_symmetries(self):
        generators = [sign_flip(3, 1), sign_flip(3, 2), axis_transposition(3, 1, 2)]
        assert len(group_closure(generators, 3)) == 8

    def test_cube_symmetries(self):
        generators = [
            sign_flip(4, 1),
            sign_flip(4, 2),
            sign_flip(4, 3),
            axis_transposition(4, 1, 2),
            axis_transposition(4, 2, 3),
        ]
        assert len(group_closure(generators, 4)) == 48

    def test_trivial(self):
        assert group_closure([], 3) == [OrthoMap.identity(3)]
