"""Deterministic SVG figures of a window.

The figure is plain text built from a fixed template: one circle per
projected point, the horizontal coordinate along x and height along y.
Optional ρ-circles are drawn as outline families, one family per radius,
centred on the layer representatives inside the window.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

from ..core.exceptions import ParameterError
from ..core.rational import QuadRadius, RadiusSq, cmp_to_radius_sq, radius_sq_to_str
from ..engel.construct import LayerWindow

logger = logging.getLogger(__name__)

CANVAS = 600
MARGIN = 20
RADIUS = 3
# One stroke colour per ρ family, reused cyclically.
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd")

HEADER = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
    'viewBox="0 0 {size} {size}">\n'
    '<rect width="{size}" height="{size}" fill="white"/>\n'
)
LAYER_LINE = (
    '<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="#cccccc" stroke-width="0.5"/>\n'
)
POINT = '<circle cx="{x}" cy="{y}" r="{r}" fill="black"/>\n'
FAMILY_OPEN = '<g class="rho" data-rho-sq="{rho_sq}">\n'
RHO_CIRCLE = (
    '<circle cx="{x}" cy="{y}" r="{r}" fill="none" stroke="{color}" stroke-width="1"/>\n'
)
FAMILY_CLOSE = "</g>\n"
FOOTER = "</svg>\n"


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _radius(rho_sq: RadiusSq) -> float:
    if cmp_to_radius_sq(Fraction(0), rho_sq) > 0:
        raise ParameterError(f"ρ² must be non-negative, got {radius_sq_to_str(rho_sq)}")
    value = rho_sq.to_float() if isinstance(rho_sq, QuadRadius) else float(rho_sq)
    return math.sqrt(max(value, 0.0))


def render_window_svg(window: LayerWindow, radii: Sequence[RadiusSq] = ()) -> str:
    """SVG of the window for d = 2 or 3, with one ρ-circle family per radius.

    For d = 3 the second horizontal axis is dropped and points that project
    to the same place are drawn once. With no radii the figure is a plain
    scatter.

    Raises:
        ParameterError: If d > 3 or a radius is negative
    """
    params = window.params
    if params.d > 3:
        raise ParameterError(f"SVG output supports d <= 3, got d={params.d}")
    lengths = [_radius(rho_sq) for rho_sq in radii]
    unit = math.sqrt(params.vertical_unit_sq)

    projected = sorted({(x.horiz[0], x.vlevel) for _, x in window.points})
    parts = [HEADER.format(size=CANVAS)]
    if not projected:
        parts.append(FOOTER)
        return "".join(parts)

    xs = [float(h) for h, _ in projected]
    ys = [v * unit for _, v in projected]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    span = max(x_max - x_min, y_max - y_min) or 1.0
    scale = (CANVAS - 2 * MARGIN) / span

    def to_x(value: float) -> str:
        return _fmt(MARGIN + (value - x_min) * scale)

    def to_y(value: float) -> str:
        # SVG y grows downward.
        return _fmt(CANVAS - MARGIN - (value - y_min) * scale)

    for level in sorted({v for _, v in projected}):
        parts.append(
            LAYER_LINE.format(x1=to_x(x_min), x2=to_x(x_max), y=to_y(level * unit))
        )
    for x, y in zip(xs, ys):
        parts.append(POINT.format(x=to_x(x), y=to_y(y), r=RADIUS))

    representatives = [
        window.origin(m) for m in range(2 * params.seq.period) if m in window.layers
    ]
    for i, (rho_sq, length) in enumerate(zip(radii, lengths)):
        parts.append(FAMILY_OPEN.format(rho_sq=radius_sq_to_str(rho_sq)))
        color = PALETTE[i % len(PALETTE)]
        for origin in representatives:
            parts.append(
                RHO_CIRCLE.format(
                    x=to_x(float(origin.horiz[0])),
                    y=to_y(origin.vlevel * unit),
                    r=_fmt(length * scale),
                    color=color,
                )
            )
        parts.append(FAMILY_CLOSE)
    parts.append(FOOTER)
    logger.info(
        f"Rendered {len(projected)} projected points and {len(radii)} ρ-circle families "
        f"around {len(representatives)} representatives"
    )
    return "".join(parts)
