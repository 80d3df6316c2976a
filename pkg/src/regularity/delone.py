"""Delone-type verification: packing by brute force, covering by sampling."""

import logging
import math
import random
from fractions import Fraction

from ..core.exceptions import InsufficientWindowError, ParameterError
from ..core.geometry import SplitVector, sq_dist
from ..core.models import CoveringReport, PackingReport, PointModel
from ..engel.construct import LayerWindow

logger = logging.getLogger(__name__)

SAMPLE_DENOMINATOR = 1000


def _point(x: SplitVector) -> PointModel:
    return PointModel(horiz=list(x.horiz), vlevel=x.vlevel)


def verify_packing(window: LayerWindow, r_sq: Fraction) -> PackingReport:
    """Smallest pairwise squared distance in the window, compared to (2r)²."""
    points = sorted((x for _, x in window.points), key=lambda x: x.vlevel)
    unit_sq = window.params.vertical_unit_sq
    best: Fraction | None = None
    pair: tuple[SplitVector, SplitVector] | None = None
    for i, x in enumerate(points):
        for y in points[i + 1 :]:
            gap = (y.vlevel - x.vlevel) ** 2 * unit_sq
            if best is not None and gap > best:
                break
            dist = sq_dist(x, y, unit_sq)
            if best is None or dist < best:
                best, pair = dist, (x, y)
    holds = best is None or best >= 4 * r_sq
    logger.info(f"Packing over {len(points)} points: min squared distance {best}")
    return PackingReport(
        r_sq=r_sq,
        n_points=len(points),
        min_sq_dist=best,
        holds=holds,
        witness=None if holds or pair is None else [_point(pair[0]), _point(pair[1])],
    )


def nearest_sq_dist(
    window: LayerWindow, horiz: tuple[Fraction, ...], vlevel: Fraction
) -> Fraction:
    """Squared distance from a rational point to the nearest window point.

    vlevel may be fractional; the vertical coordinate is vlevel times the unit.
    Layers are scanned by vertical distance until none can improve; within a
    layer the nearest lattice point is found by rounding each coordinate.

    Raises:
        InsufficientWindowError: If the nearest lattice point falls outside the window
    """
    params = window.params
    unit_sq = params.vertical_unit_sq
    two_a = 2 * params.a
    best: Fraction | None = None
    layers = sorted(window.layers, key=lambda m: abs(window.origin(m).vlevel - vlevel))
    for m in layers:
        origin = window.origin(m)
        v_sq = (origin.vlevel - vlevel) ** 2 * unit_sq
        if best is not None and v_sq >= best:
            break
        total = v_sq
        for coord, base in zip(horiz, origin.horiz):
            n = round((coord - base) / two_a)
            if abs(n) > window.lattice_radius:
                raise InsufficientWindowError(
                    f"Nearest point of layer {m} lies outside the window lattice radius"
                )
            total += (base + two_a * n - coord) ** 2
        if best is None or total < best:
            best = total
    if best is None:
        raise InsufficientWindowError("Window has no layers")
    return best


def _levels_for(cover_sq: Fraction, unit_sq: Fraction) -> int:
    """Smallest n with (n * unit)² >= R²."""
    n = math.isqrt(math.floor(cover_sq / unit_sq))
    while n * n * unit_sq < cover_sq:
        n += 1
    return n


def verify_covering(
    window: LayerWindow, cover_sq: Fraction, n_samples: int, seed: int = 0
) -> CoveringReport:
    """Sample points well inside the window and check each lies within R of the set.

    Also checks the sharp point: (a, ..., a) above the origin, halfway between
    layers 0 and 1, whose nearest squared distance is exactly (d-1)a² + b².
    """
    if n_samples < 0:
        raise ParameterError(f"Sample count must be non-negative, got {n_samples}")
    params = window.params
    if window.is_empty:
        raise InsufficientWindowError("Cannot sample an empty window")

    margin = _levels_for(cover_sq, params.vertical_unit_sq)
    v_lo = window.origin(window.m_min).vlevel + margin
    v_hi = window.origin(window.m_max).vlevel - margin
    if v_lo > v_hi and n_samples:
        raise InsufficientWindowError(
            f"Window layers [{window.m_min}, {window.m_max}] leave no room for a margin of R"
        )

    rng = random.Random(seed)
    h = params.d - 1
    span = math.floor(params.a * SAMPLE_DENOMINATOR)
    worst: Fraction | None = None
    for _ in range(n_samples):
        horiz = tuple(
            Fraction(rng.randint(-span, span), SAMPLE_DENOMINATOR) for _ in range(h)
        )
        level = Fraction(
            rng.randint(v_lo * SAMPLE_DENOMINATOR, v_hi * SAMPLE_DENOMINATOR),
            SAMPLE_DENOMINATOR,
        )
        dist = nearest_sq_dist(window, horiz, level)
        if worst is None or dist > worst:
            worst = dist

    sharp_horiz = tuple(params.a for _ in range(h))
    sharp_level = Fraction(params.plain_step_levels, 2)
    sharp = nearest_sq_dist(window, sharp_horiz, sharp_level)
    expected = (h * params.a**2) + sharp_level**2 * params.vertical_unit_sq
    logger.info(f"Covering: {n_samples} samples, worst squared distance {worst}")
    return CoveringReport(
        R_sq=cover_sq,
        n_samples=n_samples,
        seed=seed,
        max_sq_dist=worst,
        holds=worst is None or worst <= cover_sq,
        sharp_horiz=list(sharp_horiz),
        sharp_vlevel=sharp_level,
        sharp_sq_dist=sharp,
        sharp_expected=expected,
        sharp_holds=sharp == expected,
    )
