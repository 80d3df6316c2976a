"""Finite point sets on the line: ab-sets and the two-radius counterexample."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..core.exceptions import InsufficientWindowError, ParameterError
from ..core.models import LineCheckReport, LineSetKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineSet:
    """Strictly increasing rational points."""

    points: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(Fraction(x) for x in self.points))
        if any(x >= y for x, y in zip(self.points, self.points[1:])):
            raise ParameterError("Points must be strictly increasing")

    @cached_property
    def gaps(self) -> tuple[Fraction, ...]:
        return tuple(y - x for x, y in zip(self.points, self.points[1:]))

    @property
    def delone_type(self) -> tuple[Fraction, Fraction]:
        """(r, R) = (smallest gap / 2, largest gap / 2) on the window."""
        if not self.gaps:
            raise ParameterError("A single point has no Delone type")
        return min(self.gaps) / 2, max(self.gaps) / 2

    def __len__(self) -> int:
        return len(self.points)


def _from_gaps(start: Fraction, gaps: Sequence[Fraction]) -> LineSet:
    points = [start]
    for gap in gaps:
        points.append(points[-1] + gap)
    return LineSet(tuple(points))


def make_ab_set(a: Fraction, b: Fraction, n: int) -> LineSet:
    """2n+1 points around 0: gap a to the right of 0, b to the left, alternating outward."""
    a, b = Fraction(a), Fraction(b)
    if not 0 < a <= b:
        raise ParameterError(f"Need 0 < a <= b, got a={a}, b={b}")
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")
    left = sum((a if i % 2 else b for i in range(n)), Fraction(0))
    # Reading left to right the gaps end with b just before the origin.
    gaps = [b if (n - 1 - i) % 2 == 0 else a for i in range(n)]
    gaps += [a if i % 2 == 0 else b for i in range(n)]
    return _from_gaps(-left, gaps)


def counterexample_gap(rho: Fraction, reach: Fraction, k: int) -> Fraction:
    """g_k = ρ + (2R - ρ)(k+1)/(k+3), strictly between ρ and 2R and injective in k."""
    return rho + (reach - rho) * Fraction(k + 1, k + 3)


def make_1d_counterexample(rho: Fraction, cover: Fraction, n: int) -> LineSet:
    """Gaps ρ, g_0, ρ, g_1, ..., g_{n-1}, ρ starting at 0.

    Every ρ-cluster is a point with one neighbour at distance ρ, yet the free
    gaps are pairwise distinct.
    """
    rho, cover = Fraction(rho), Fraction(cover)
    if not 0 < rho < 2 * cover:
        raise ParameterError(f"Need 0 < ρ < 2R, got ρ={rho}, R={cover}")
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")
    gaps = [rho]
    for k in range(n):
        gaps += [counterexample_gap(rho, 2 * cover, k), rho]
    return _from_gaps(Fraction(0), gaps)


def interior_points(line: LineSet, rho: Fraction) -> list[int]:
    """Indices of points whose closed ρ-ball lies inside the window."""
    first, last = line.points[0], line.points[-1]
    return [i for i, x in enumerate(line.points) if x - rho >= first and x + rho <= last]


def _offsets(line: LineSet, i: int, rho: Fraction) -> tuple[Fraction, ...]:
    center = line.points[i]
    return tuple(y - center for y in line.points if abs(y - center) <= rho)


def line_clusters_equal(line: LineSet, rho: Fraction) -> bool:
    """Whether all interior ρ-clusters agree up to translation or reflection.

    Raises:
        InsufficientWindowError: If no point has its ρ-ball inside the window
    """
    rho = Fraction(rho)
    inner = interior_points(line, rho)
    if not inner:
        raise InsufficientWindowError(f"No point lies at distance ρ={rho} from both ends")
    reference = _offsets(line, inner[0], rho)
    mirrored = tuple(-x for x in reversed(reference))
    for i in inner[1:]:
        offsets = _offsets(line, i, rho)
        if offsets != reference and offsets != mirrored:
            logger.debug(f"Point {line.points[i]} has cluster {offsets}, expected {reference}")
            return False
    return True


def line_is_regular_window(line: LineSet) -> bool:
    """Whether the gap sequence alternates between (at most) two values."""
    gaps = line.gaps
    return all(gaps[i] == gaps[i + 2] for i in range(len(gaps) - 2))


def check_line(kind: LineSetKind, line: LineSet, rho: Fraction) -> LineCheckReport:
    return LineCheckReport(
        kind=kind,
        points=list(line.points),
        rho=rho,
        interior=len(interior_points(line, rho)),
        clusters_equal=line_clusters_equal(line, rho),
        regular_window=line_is_regular_window(line),
    )
