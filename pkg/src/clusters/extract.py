"""ρ-clusters: closed balls around a set point, stored relative to the center."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..core.exceptions import ParameterError
from ..core.geometry import SplitVector
from ..core.rational import RadiusSq, cmp_to_radius_sq, radius_sq_to_str
from ..engel.construct import (
    EngelParams,
    LayerWindow,
    generate_window,
    lattice_index,
    layer_origin,
    required_window,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cluster:
    """Center plus the other points of the closed ball, as offsets from the center.

    rel_points is sorted by (squared norm, horiz, vlevel) and never contains 0.
    """

    center: SplitVector
    rel_points: tuple[SplitVector, ...]
    rho_sq: RadiusSq
    vertical_unit_sq: Fraction
    center_layer: int | None = None

    @classmethod
    def build(
        cls,
        center: SplitVector,
        points: Iterable[SplitVector],
        rho_sq: RadiusSq,
        vertical_unit_sq: Fraction,
        center_layer: int | None = None,
    ) -> "Cluster":
        rel = []
        for x in points:
            offset = x - center
            if not offset.is_zero():
                rel.append(offset)
        rel.sort(key=lambda v: (v.sq_norm(vertical_unit_sq), v.horiz, v.vlevel))
        return cls(center, tuple(rel), rho_sq, vertical_unit_sq, center_layer)

    @property
    def dim(self) -> int:
        return self.center.dim

    @property
    def size(self) -> int:
        """Number of points including the center."""
        return len(self.rel_points) + 1

    @cached_property
    def norms(self) -> tuple[Fraction, ...]:
        return tuple(v.sq_norm(self.vertical_unit_sq) for v in self.rel_points)

    @cached_property
    def dist_partition(self) -> dict[Fraction, tuple[int, ...]]:
        """Squared distance from the center -> indices into rel_points."""
        groups: dict[Fraction, list[int]] = {}
        for i, norm in enumerate(self.norms):
            groups.setdefault(norm, []).append(i)
        return {norm: tuple(idx) for norm, idx in groups.items()}

    def absolute_points(self) -> list[SplitVector]:
        return [self.center, *(self.center + v for v in self.rel_points)]

    def __str__(self) -> str:
        return (
            f"Cluster(center={self.center}, size={self.size}, "
            f"rho_sq={radius_sq_to_str(self.rho_sq)})"
        )


def extract_cluster(window: LayerWindow, center: SplitVector, rho_sq: RadiusSq) -> Cluster:
    """The ρ-cluster of the window point `center` (closed ball).

    Raises:
        ParameterError: If center is not a window point
        InsufficientWindowError: If the ball may reach outside the window
    """
    window.check_covers_ball(center, rho_sq)
    points = (x for _, x in window.points_in_ball(center, rho_sq))
    cluster = Cluster.build(
        center, points, rho_sq, window.params.vertical_unit_sq, window.layer_of(center)
    )
    logger.debug(f"Extracted {cluster}")
    return cluster


def extract_cluster_from_points(
    points: Iterable[SplitVector],
    center: SplitVector,
    rho_sq: RadiusSq,
    vertical_unit_sq: Fraction,
) -> Cluster:
    """ρ-cluster of an arbitrary finite point set.

    The caller is responsible for the set containing the whole ball.
    """
    points = list(points)
    if center not in points:
        raise ParameterError(f"Center {center} is not one of the given points")
    inside = (
        x for x in points if cmp_to_radius_sq((x - center).sq_norm(vertical_unit_sq), rho_sq) <= 0
    )
    return Cluster.build(center, inside, rho_sq, vertical_unit_sq)


def cluster_around(
    params: EngelParams,
    p: int,
    rho_sq: RadiusSq,
    center: SplitVector | None = None,
    padding: int = 0,
    max_points: int | None = None,
) -> Cluster:
    """ρ-cluster of a point of layer p (its origin by default) in an auto-sized window."""
    if padding < 0:
        raise ParameterError(f"Padding must be non-negative, got {padding}")
    if center is None:
        center = layer_origin(params, p)
    index = lattice_index(params, p, center)
    if index is None:
        raise ParameterError(f"{center} is not a point of layer {p}")
    layer_range, radius = required_window(params, rho_sq, p)
    radius += max((abs(n) for n in index), default=0) + padding
    window = generate_window(params, layer_range, radius, max_points)
    return extract_cluster(window, center, rho_sq)
