"""Cluster equivalence and cluster groups via Gram-preserving bijections.

Two clusters are equivalent (by an isometry fixing the center) iff some
bijection of their points preserves every pairwise inner product. The search
picks a maximal independent base of the source, backtracks over base images
among target points of equal norm, and then forces every other point from its
coordinates in the base.

All arithmetic runs in an integer frame: horizontal coordinates are scaled to
a common denominator and the vertical weight is folded into the inner product.
"""

import logging
import math
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, replace
from fractions import Fraction

from ..core.exceptions import ParameterError
from ..core.geometry import Matrix, OrthoMap, SplitVector
from .extract import Cluster

logger = logging.getLogger(__name__)

IntVector = tuple[int, ...]


# =============================================================================
# Result types
# =============================================================================


@dataclass(frozen=True)
class IsometryWitness:
    """Gram-preserving bijection between the rel_points of two clusters."""

    bijection: tuple[int, ...]
    base: tuple[int, ...]
    images: tuple[int, ...]
    map: OrthoMap | None = None

    @property
    def is_identity(self) -> bool:
        return self.bijection == tuple(range(len(self.bijection)))


@dataclass(frozen=True)
class NonSpanning:
    """The cluster spans a proper subspace, so its stabilizer is infinite."""

    rank: int
    dim: int


@dataclass
class GroupResult:
    """All center-fixing isometries of a spanning cluster onto itself."""

    elements: list[IsometryWitness]

    @property
    def order(self) -> int:
        return len(self.elements)

    def maps(self) -> list[OrthoMap]:
        return [w.map for w in self.elements if w.map is not None]


# =============================================================================
# Integer frame
# =============================================================================


class _Frame:
    """Common integer coordinates for a group of clusters sharing one vertical unit."""

    def __init__(self, clusters: Sequence[Cluster]) -> None:
        units = {c.vertical_unit_sq for c in clusters}
        if len(units) != 1:
            raise ParameterError(f"Clusters use different vertical units: {sorted(units)}")
        dims = {c.dim for c in clusters}
        if len(dims) != 1:
            raise ParameterError(f"Clusters have different dimensions: {sorted(dims)}")
        self.dim = dims.pop()
        self.unit_sq = units.pop()

        den = 1
        for cluster in clusters:
            for v in cluster.rel_points:
                for x in v.horiz:
                    den = math.lcm(den, x.denominator)
        self.den = den
        weight = self.unit_sq * den * den
        self.wn, self.wd = weight.numerator, weight.denominator

    def vectors(self, cluster: Cluster) -> list[IntVector]:
        return [
            tuple((x * self.den).numerator for x in v.horiz) + (v.vlevel,)
            for v in cluster.rel_points
        ]

    def ip(self, x: IntVector, y: IntVector) -> int:
        horiz = sum(p * q for p, q in zip(x[:-1], y[:-1]))
        return self.wd * horiz + self.wn * x[-1] * y[-1]


def _independent_base(vectors: Sequence[IntVector], dim: int) -> list[int]:
    """Greedy maximal independent subset, scanning vectors in order."""
    rows: list[tuple[int, list[Fraction]]] = []
    chosen: list[int] = []
    for idx, vec in enumerate(vectors):
        work = [Fraction(x) for x in vec]
        for pivot, row in rows:
            if work[pivot] != 0:
                factor = work[pivot] / row[pivot]
                work = [w - factor * r for w, r in zip(work, row)]
        pivot = next((i for i, w in enumerate(work) if w != 0), None)
        if pivot is None:
            continue
        rows.append((pivot, work))
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse of a nonsingular rational matrix."""
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ParameterError("Singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# =============================================================================
# Search
# =============================================================================


class _Matcher:
    """Precomputed state for matching one source cluster onto one target."""

    def __init__(self, source: Cluster, target: Cluster) -> None:
        self.source = source
        self.target = target
        self.frame = _Frame([source, target])
        self.src = self.frame.vectors(source)
        self.dst = self.frame.vectors(target)
        self.src_norms = [self.frame.ip(v, v) for v in self.src]
        self.dst_norms = [self.frame.ip(v, v) for v in self.dst]

        self.base = _independent_base(self.src, self.frame.dim)
        r = len(self.base)
        self.gram = [
            [self.frame.ip(self.src[i], self.src[j]) for j in self.base] for i in self.base
        ]

        # Coordinates of every source point in the base, scaled to integers.
        self.coords: list[IntVector] = []
        self.coord_den = 1
        if r:
            inv = _inverse(self.gram)
            self.coord_den = math.lcm(*(x.denominator for row in inv for x in row))
            inv_int = [[(x * self.coord_den).numerator for x in row] for row in inv]
            for v in self.src:
                s = [self.frame.ip(self.src[b], v) for b in self.base]
                self.coords.append(tuple(sum(g * x for g, x in zip(row, s)) for row in inv_int))

        self.candidates: dict[int, list[int]] = {}
        for j, norm in enumerate(self.dst_norms):
            self.candidates.setdefault(norm, []).append(j)
        self.lookup = {v: j for j, v in enumerate(self.dst)}

    def compatible(self) -> bool:
        if len(self.src) != len(self.dst):
            return False
        return Counter(self.src_norms) == Counter(self.dst_norms)

    def base_assignments(self) -> Iterator[tuple[int, ...]]:
        r = len(self.base)
        assign: list[int] = []
        used: set[int] = set()

        def dfs(pos: int) -> Iterator[tuple[int, ...]]:
            if pos == r:
                yield tuple(assign)
                return
            for t in self.candidates.get(self.src_norms[self.base[pos]], []):
                if t in used:
                    continue
                if any(
                    self.frame.ip(self.dst[t], self.dst[assign[j]]) != self.gram[pos][j]
                    for j in range(pos)
                ):
                    continue
                assign.append(t)
                used.add(t)
                yield from dfs(pos + 1)
                used.discard(t)
                assign.pop()

        yield from dfs(0)

    def force(self, images: tuple[int, ...]) -> tuple[int, ...] | None:
        """Bijection induced by sending base[i] to images[i], or None."""
        targets = [self.dst[t] for t in images]
        width = self.frame.dim
        bijection = []
        seen: set[int] = set()
        for coef in self.coords:
            scaled = [sum(c * t[k] for c, t in zip(coef, targets)) for k in range(width)]
            if any(x % self.coord_den for x in scaled):
                return None
            j = self.lookup.get(tuple(x // self.coord_den for x in scaled))
            if j is None or j in seen:
                return None
            seen.add(j)
            bijection.append(j)
        return tuple(bijection)

    def witnesses(self) -> Iterator[IsometryWitness]:
        if not self.compatible():
            return
        if not self.src:
            yield IsometryWitness((), (), ())
            return
        for images in self.base_assignments():
            bijection = self.force(images)
            if bijection is not None:
                yield IsometryWitness(bijection, tuple(self.base), images)

    def recover_map(self, witness: IsometryWitness) -> OrthoMap | None:
        """Orthogonal map behind the witness, if the source spans and the map
        keeps the vertical axis; verified on every point."""
        d = self.frame.dim
        if len(witness.base) != d:
            return None

        def as_columns(vs: Sequence[SplitVector]) -> list[list[Fraction]]:
            cols = [[*v.horiz, Fraction(v.vlevel)] for v in vs]
            return [[col[row] for col in cols] for row in range(d)]

        base_mat = as_columns([self.source.rel_points[i] for i in witness.base])
        image_mat = as_columns([self.target.rel_points[j] for j in witness.images])
        inv = _inverse(base_mat)
        product: Matrix = tuple(
            tuple(
                sum((image_mat[i][k] * inv[k][j] for k in range(d)), Fraction(0))
                for j in range(d)
            )
            for i in range(d)
        )
        try:
            ortho = OrthoMap(product)
        except ParameterError as e:
            logger.warning(f"Witness map is not vertical-preserving orthogonal: {e}")
            return None
        if not self._verify_map(ortho, witness.bijection):
            logger.error("Recovered map disagrees with the witness bijection")
            return None
        return ortho

    def _verify_map(self, ortho: OrthoMap, bijection: tuple[int, ...]) -> bool:
        h = self.frame.dim - 1
        block = [row[:h] for row in ortho.matrix[:h]]
        den = math.lcm(1, *(x.denominator for row in block for x in row))
        block_int = [[(x * den).numerator for x in row] for row in block]
        sign = ortho.vertical_sign
        for i, j in enumerate(bijection):
            x, y = self.src[i], self.dst[j]
            if sign * x[-1] != y[-1]:
                return False
            for row, target in zip(block_int, y[:-1]):
                if sum(r * c for r, c in zip(row, x[:-1])) != den * target:
                    return False
        return True


# =============================================================================
# Public operations
# =============================================================================


def clusters_equivalent(
    source: Cluster, target: Cluster, with_map: bool = True
) -> IsometryWitness | None:
    """A witness that some center-fixing isometry maps source onto target, or None."""
    matcher = _Matcher(source, target)
    witness = next(matcher.witnesses(), None)
    if witness is None:
        logger.debug(f"{source} and {target} are not equivalent")
        return None
    if with_map:
        witness = replace(witness, map=matcher.recover_map(witness))
    return witness


def cluster_group(cluster: Cluster, with_maps: bool = True) -> GroupResult | NonSpanning:
    """Every isometry fixing the center and mapping the cluster onto itself."""
    matcher = _Matcher(cluster, cluster)
    rank = len(matcher.base)
    if rank < cluster.dim:
        return NonSpanning(rank=rank, dim=cluster.dim)
    elements = []
    for witness in matcher.witnesses():
        if with_maps:
            witness = replace(witness, map=matcher.recover_map(witness))
        elements.append(witness)
    elements.sort(key=lambda w: (not w.is_identity, w.bijection))
    logger.info(f"Cluster group of {cluster}: order {len(elements)}")
    return GroupResult(elements)


def recover_map(witness: IsometryWitness, source: Cluster, target: Cluster) -> OrthoMap | None:
    return _Matcher(source, target).recover_map(witness)


def cluster_rank(cluster: Cluster) -> int:
    frame = _Frame([cluster])
    return len(_independent_base(frame.vectors(cluster), cluster.dim))


def invert_witness(witness: IsometryWitness) -> IsometryWitness:
    """Witness for target -> source."""
    inverse = [0] * len(witness.bijection)
    for i, j in enumerate(witness.bijection):
        inverse[j] = i
    return IsometryWitness(
        bijection=tuple(inverse),
        base=witness.images,
        images=witness.base,
        map=witness.map.invert() if witness.map is not None else None,
    )


def compose_witnesses(first: IsometryWitness, second: IsometryWitness) -> IsometryWitness:
    """Witness for A -> C given first: A -> B and second: B -> C."""
    if len(first.bijection) != len(second.bijection):
        raise ParameterError("Witnesses relate clusters of different sizes")
    ortho = None
    if first.map is not None and second.map is not None:
        ortho = second.map.compose(first.map)
    return IsometryWitness(
        bijection=tuple(second.bijection[j] for j in first.bijection),
        base=first.base,
        images=tuple(second.bijection[j] for j in first.images),
        map=ortho,
    )


def preserves_gram(witness: IsometryWitness, source: Cluster, target: Cluster) -> bool:
    """Check every pairwise inner product under the bijection (quadratic cost)."""
    frame = _Frame([source, target])
    src, dst = frame.vectors(source), frame.vectors(target)
    if len(witness.bijection) != len(src) or sorted(witness.bijection) != list(range(len(dst))):
        return False
    for i, j in enumerate(witness.bijection):
        for k in range(i, len(src)):
            if frame.ip(src[i], src[k]) != frame.ip(dst[j], dst[witness.bijection[k]]):
                return False
    return True
