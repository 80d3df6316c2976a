"""Engel set construction: parameters, layer origins, windows and chains.

Layer m is a translate of the grid 2a Z^{d-1}. Moving from an even layer to
the next odd layer is a pure vertical step of 2b; moving from an odd layer to
the next even layer 2i is a vertical step of 2b (2b' with uneven spacing)
plus the horizontal shift delta * u_i.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from ..core.config import get_settings
from ..core.exceptions import InsufficientWindowError, ParameterError, ResourceCapError
from ..core.geometry import SplitVector, sq_dist
from ..core.rational import (
    RadiusSq,
    cmp_to_radius_sq,
    radius_sq_ceil,
    radius_sq_floor,
    rational_gcd,
    rational_sqrt,
)
from .sequence import ShiftSequence

logger = logging.getLogger(__name__)


# =============================================================================
# Parameters
# =============================================================================


@dataclass(frozen=True)
class EngelParams:
    """Sequence A plus the reals a, b (as b²), optional b' (as b'²) and delta."""

    seq: ShiftSequence
    a: Fraction
    b_sq: Fraction
    delta: Fraction
    b_prime_sq: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b_sq", Fraction(self.b_sq))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.b_prime_sq is not None:
            object.__setattr__(self, "b_prime_sq", Fraction(self.b_prime_sq))

        if not 0 < self.delta < self.a:
            raise ParameterError(f"Need 0 < delta < a, got delta={self.delta}, a={self.a}")
        if not self.a * self.a < self.b_sq:
            raise ParameterError(f"Need a² < b², got a²={self.a * self.a}, b²={self.b_sq}")
        if self.b_prime_sq is not None:
            if not self.a * self.a < self.b_prime_sq:
                raise ParameterError(
                    f"Need a² < b'², got a²={self.a * self.a}, b'²={self.b_prime_sq}"
                )
            if rational_sqrt(self.b_sq) is None or rational_sqrt(self.b_prime_sq) is None:
                raise ParameterError("Uneven spacing needs rational b and b'")

    @property
    def d(self) -> int:
        return self.seq.d

    @property
    def uneven(self) -> bool:
        return self.b_prime_sq is not None

    @cached_property
    def _spacing(self) -> tuple[Fraction, int, int]:
        """(vertical unit squared, levels per plain step, levels per shifted step)."""
        if self.b_prime_sq is None:
            return self.b_sq, 2, 2
        b = rational_sqrt(self.b_sq)
        b_prime = rational_sqrt(self.b_prime_sq)
        assert b is not None and b_prime is not None
        unit = rational_gcd(b, b_prime)
        return unit * unit, int(2 * b / unit), int(2 * b_prime / unit)

    @property
    def vertical_unit_sq(self) -> Fraction:
        return self._spacing[0]

    @property
    def plain_step_levels(self) -> int:
        return self._spacing[1]

    @property
    def shifted_step_levels(self) -> int:
        return self._spacing[2]

    def with_sequence(self, seq: ShiftSequence) -> "EngelParams":
        if seq.d != self.d:
            raise ParameterError(f"Sequence dimension {seq.d} does not match {self.d}")
        return EngelParams(seq, self.a, self.b_sq, self.delta, self.b_prime_sq)


def delone_type(params: EngelParams) -> tuple[Fraction, Fraction]:
    """Delone type (r, R²) with r = a and R² = b² + (d-1)a²."""
    b_sq = params.b_sq
    if params.b_prime_sq is not None:
        b_sq = max(b_sq, params.b_prime_sq)
    return params.a, b_sq + (params.d - 1) * params.a**2


# =============================================================================
# Layer origins
# =============================================================================


@lru_cache(maxsize=8192)
def layer_origin(params: EngelParams, m: int) -> SplitVector:
    """Origin o_m of layer m, with o_0 = 0."""
    seq = params.seq
    h = params.d - 1
    shift = [0] * h
    if m >= 0:
        indices = range(1, m // 2 + 1)
        direction = 1
        plain_steps, shifted_steps = (m + 1) // 2, m // 2
    else:
        indices = range(m // 2 + 1, 1)
        direction = -1
        plain_steps, shifted_steps = (-m) // 2, (-m + 1) // 2
    for i in indices:
        unit = seq.shift_unit(i)
        for s in range(h):
            shift[s] += unit[s]
    horiz = tuple(direction * params.delta * c for c in shift)
    vlevel = direction * (
        plain_steps * params.plain_step_levels + shifted_steps * params.shifted_step_levels
    )
    return SplitVector(horiz, vlevel)


def lattice_index(params: EngelParams, m: int, x: SplitVector) -> tuple[int, ...] | None:
    """Integer n with x = o_m + 2a n, or None when x is not on layer m."""
    origin = layer_origin(params, m)
    if x.dim != origin.dim or x.vlevel != origin.vlevel:
        return None
    two_a = 2 * params.a
    index = []
    for coord, base in zip(x.horiz, origin.horiz):
        n = (coord - base) / two_a
        if n.denominator != 1:
            return None
        index.append(n.numerator)
    return tuple(index)


def basis_used(params: EngelParams, p: int, k: int) -> tuple[int, ...]:
    """Axes |a_i| consumed by the shifted steps while building layers p-k..p+k."""
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    used = {abs(params.seq.term(m // 2)) for m in range(p - k + 1, p + k + 1) if m % 2 == 0}
    return tuple(sorted(used))


# =============================================================================
# Windows
# =============================================================================


@dataclass(frozen=True)
class LayerWindow:
    """Layers m_min..m_max, each clipped to lattice indices |n_s| <= L.

    Points are generated lazily. `generate_window` refuses windows above the
    resource cap; `points` checks it again for windows built directly.
    """

    params: EngelParams
    m_min: int
    m_max: int
    lattice_radius: int
    max_points: int = field(default=0, compare=False)

    @property
    def layers(self) -> range:
        return range(self.m_min, self.m_max + 1)

    @property
    def is_empty(self) -> bool:
        return self.m_min > self.m_max

    @property
    def count(self) -> int:
        if self.is_empty:
            return 0
        return len(self.layers) * (2 * self.lattice_radius + 1) ** (self.params.d - 1)

    def origin(self, m: int) -> SplitVector:
        return layer_origin(self.params, m)

    @cached_property
    def _layer_by_vlevel(self) -> dict[int, int]:
        return {self.origin(m).vlevel: m for m in self.layers}

    def layer_of(self, x: SplitVector) -> int | None:
        """Layer holding x inside this window, or None."""
        m = self._layer_by_vlevel.get(x.vlevel)
        if m is None:
            return None
        index = lattice_index(self.params, m, x)
        if index is None or any(abs(n) > self.lattice_radius for n in index):
            return None
        return m

    def layer_points(self, m: int) -> Iterator[SplitVector]:
        """Points of layer m in lexicographic order."""
        origin = self.origin(m)
        two_a = 2 * self.params.a
        span = range(-self.lattice_radius, self.lattice_radius + 1)
        for index in itertools.product(span, repeat=self.params.d - 1):
            yield SplitVector(
                tuple(base + two_a * n for base, n in zip(origin.horiz, index)), origin.vlevel
            )

    def iter_points(self) -> Iterator[tuple[int, SplitVector]]:
        for m in self.layers:
            for x in self.layer_points(m):
                yield m, x

    @cached_property
    def points(self) -> list[tuple[int, SplitVector]]:
        cap = self.max_points or get_settings().max_points
        if self.count > cap:
            raise ResourceCapError(self.count, cap)
        return list(self.iter_points())

    def points_in_ball(
        self, center: SplitVector, rho_sq: RadiusSq
    ) -> Iterator[tuple[int, SplitVector]]:
        """Window points x with |x - center|² <= ρ², enumerated per layer."""
        bound = radius_sq_ceil(rho_sq)
        unit_sq = self.params.vertical_unit_sq
        for m in self.layers:
            origin = self.origin(m)
            v_sq = (origin.vlevel - center.vlevel) ** 2 * unit_sq
            if v_sq > bound:
                continue
            for x in self._ball_layer(origin, center, rho_sq, bound - v_sq, v_sq):
                yield m, x

    def _ball_layer(
        self,
        origin: SplitVector,
        center: SplitVector,
        rho_sq: RadiusSq,
        slack: Fraction,
        v_sq: Fraction,
    ) -> Iterator[SplitVector]:
        two_a = 2 * self.params.a
        radius = self.lattice_radius
        h = len(origin.horiz)

        def walk(
            axis: int, prefix: tuple[Fraction, ...], rem: Fraction, acc: Fraction
        ) -> Iterator[SplitVector]:
            if axis == h:
                if cmp_to_radius_sq(acc + v_sq, rho_sq) <= 0:
                    yield SplitVector(prefix, origin.vlevel)
                return
            base, c = origin.horiz[axis], center.horiz[axis]
            t = (c - base) / two_a
            w = math.isqrt(math.floor(rem / (two_a * two_a))) + 1
            lo = max(-radius, math.ceil(t - w))
            hi = min(radius, math.floor(t + w))
            for n in range(lo, hi + 1):
                coord = base + two_a * n
                dx_sq = (coord - c) ** 2
                if dx_sq > rem:
                    continue
                yield from walk(axis + 1, prefix + (coord,), rem - dx_sq, acc + dx_sq)

        yield from walk(0, (), slack, Fraction(0))

    def check_covers_ball(self, center: SplitVector, rho_sq: RadiusSq) -> None:
        """Raise InsufficientWindowError unless B_ρ(center) ∩ X lies in the window."""
        if self.layer_of(center) is None:
            raise ParameterError(f"Center {center} is not a point of the window")
        unit_sq = self.params.vertical_unit_sq
        for outside in (self.m_min - 1, self.m_max + 1):
            gap = self.origin(outside).vlevel - center.vlevel
            if cmp_to_radius_sq(gap * gap * unit_sq, rho_sq) <= 0:
                raise InsufficientWindowError(
                    f"Layer {outside} is within reach of the ball but outside "
                    f"the window layers [{self.m_min}, {self.m_max}]"
                )
        two_a = 2 * self.params.a
        reach = self.lattice_radius + 1
        for m in self.layers:
            origin = self.origin(m)
            v_sq = (origin.vlevel - center.vlevel) ** 2 * unit_sq
            if cmp_to_radius_sq(v_sq, rho_sq) > 0:
                continue
            for s, (base, c) in enumerate(zip(origin.horiz, center.horiz), start=1):
                for gap in (base + two_a * reach - c, c - (base - two_a * reach)):
                    if gap <= 0 or cmp_to_radius_sq(gap * gap + v_sq, rho_sq) <= 0:
                        raise InsufficientWindowError(
                            f"Ball may clip layer {m} along axis {s}; "
                            f"lattice radius {self.lattice_radius} is too small"
                        )


def generate_window(
    params: EngelParams,
    layer_range: tuple[int, int],
    lattice_radius: int,
    max_points: int | None = None,
) -> LayerWindow:
    """Window over layers layer_range[0]..layer_range[1] with |n_s| <= L.

    An empty range (m_min > m_max) gives an empty window.

    Raises:
        ParameterError: If the lattice radius is negative
        ResourceCapError: If the window holds more points than the cap
            (max_points, else ENGELSET_MAX_POINTS)
    """
    if lattice_radius < 0:
        raise ParameterError(f"Lattice radius must be non-negative, got {lattice_radius}")
    m_min, m_max = layer_range
    cap = max_points or get_settings().max_points
    window = LayerWindow(params, m_min, m_max, lattice_radius, cap)
    if window.count > cap:
        raise ResourceCapError(window.count, cap)
    logger.debug(
        f"Window layers [{m_min}, {m_max}], L={lattice_radius}: {window.count} points"
    )
    return window


def required_window(
    params: EngelParams, rho_sq: RadiusSq, p: int
) -> tuple[tuple[int, int], int]:
    """Layer range and lattice radius that contain B_ρ(o_p) ∩ X.

    The layer range reaches every layer whose vertical gap to layer p is at
    most ρ; L = ceil((ρ + Kδ) / 2a) + 1 with K the larger reach.
    """
    if cmp_to_radius_sq(Fraction(0), rho_sq) > 0:
        raise ParameterError(f"ρ² must be non-negative, got {rho_sq}")
    unit_sq = params.vertical_unit_sq
    base = layer_origin(params, p).vlevel

    def reach(direction: int) -> int:
        k = 0
        while True:
            gap = layer_origin(params, p + direction * (k + 1)).vlevel - base
            if cmp_to_radius_sq(gap * gap * unit_sq, rho_sq) > 0:
                return k
            k += 1

    k_down, k_up = reach(-1), reach(1)
    reach_max = max(k_down, k_up)

    two_a = 2 * params.a
    slack = reach_max * params.delta
    lower = max(0, math.floor(radius_sq_floor(rho_sq)))
    n = math.floor((math.isqrt(lower) + slack) / two_a)
    while True:
        span = two_a * n - slack
        if span >= 0 and cmp_to_radius_sq(span * span, rho_sq) >= 0:
            break
        n += 1
    return (p - k_down, p + k_up), n + 1


# =============================================================================
# Chains
# =============================================================================


def chain_point(params: EngelParams, p: int, x: SplitVector, j: int) -> SplitVector:
    """x_j = x + o_{p+j} - o_p, the point of layer p+j reached from x."""
    if lattice_index(params, p, x) is None:
        raise ParameterError(f"{x} is not a point of layer {p}")
    return x + layer_origin(params, p + j) - layer_origin(params, p)


@dataclass
class ChainStep:
    """Squared step lengths around x_j and whether x_j is the unique nearest point."""

    j: int
    layer: int
    back_sq: Fraction
    forward_sq: Fraction
    unique_to_previous: bool
    unique_to_next: bool

    @property
    def pair(self) -> tuple[Fraction, Fraction]:
        return self.back_sq, self.forward_sq

    @property
    def certified(self) -> bool:
        return self.unique_to_previous and self.unique_to_next


def _unique_nearest(
    window: LayerWindow, m: int, target: SplitVector, expected: SplitVector
) -> bool:
    unit_sq = window.params.vertical_unit_sq
    best: Fraction | None = None
    hits: list[SplitVector] = []
    for y in window.layer_points(m):
        dist = sq_dist(y, target, unit_sq)
        if best is None or dist < best:
            best, hits = dist, [y]
        elif dist == best:
            hits.append(y)
    return hits == [expected]


def chain_profile(
    params: EngelParams,
    p: int,
    x: SplitVector,
    j_range: Iterable[int],
    window: LayerWindow | None = None,
) -> list[ChainStep]:
    """Step lengths (|x_j - x_{j-1}|², |x_{j+1} - x_j|²) along the chain through x.

    Each x_j is also checked by a scan of its window layer to be the unique
    nearest point to both neighbours in the chain.

    Raises:
        InsufficientWindowError: If a chain point sits on the window boundary
    """
    js = sorted(set(j_range))
    if not js:
        return []
    chain = {j: chain_point(params, p, x, j) for j in range(js[0] - 1, js[-1] + 2)}

    if window is None:
        widest = 0
        for j, xj in chain.items():
            index = lattice_index(params, p + j, xj)
            assert index is not None
            widest = max([widest, *(abs(n) for n in index)])
        window = generate_window(params, (p + js[0] - 1, p + js[-1] + 1), widest + 2)

    for j, xj in chain.items():
        m = p + j
        index = lattice_index(params, m, xj)
        if m not in window.layers or index is None:
            raise InsufficientWindowError(f"Chain point x_{j} lies outside the window")
        if any(abs(n) >= window.lattice_radius for n in index):
            raise InsufficientWindowError(f"Chain point x_{j} sits on the window boundary")

    unit_sq = params.vertical_unit_sq
    steps = []
    for j in js:
        m = p + j
        steps.append(
            ChainStep(
                j=j,
                layer=m,
                back_sq=sq_dist(chain[j], chain[j - 1], unit_sq),
                forward_sq=sq_dist(chain[j + 1], chain[j], unit_sq),
                unique_to_previous=_unique_nearest(window, m, chain[j - 1], chain[j]),
                unique_to_next=_unique_nearest(window, m, chain[j + 1], chain[j]),
            )
        )
    return steps
