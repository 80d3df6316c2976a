"""Split vectors and vertical-axis-preserving orthogonal maps.

A point of R^d is stored as its d-1 horizontal rational coordinates plus an
integer vertical level; the vertical coordinate is vlevel * beta, where only
beta**2 (the vertical unit squared) needs to be rational. Every squared
distance therefore stays in Q even when beta is irrational.
"""

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import ParameterError

# =============================================================================
# Vectors
# =============================================================================


@dataclass(frozen=True, order=True)
class SplitVector:
    """Point with rational horizontal part and integer vertical level."""

    horiz: tuple[Fraction, ...]
    vlevel: int

    @classmethod
    def of(cls, horiz: Iterable[Fraction | int], vlevel: int = 0) -> "SplitVector":
        return cls(tuple(Fraction(h) for h in horiz), int(vlevel))

    @classmethod
    def zero(cls, d: int) -> "SplitVector":
        return cls(tuple(Fraction(0) for _ in range(d - 1)), 0)

    @property
    def dim(self) -> int:
        return len(self.horiz) + 1

    def __add__(self, other: "SplitVector") -> "SplitVector":
        _check_dims(self, other)
        return SplitVector(
            tuple(x + y for x, y in zip(self.horiz, other.horiz)), self.vlevel + other.vlevel
        )

    def __sub__(self, other: "SplitVector") -> "SplitVector":
        _check_dims(self, other)
        return SplitVector(
            tuple(x - y for x, y in zip(self.horiz, other.horiz)), self.vlevel - other.vlevel
        )

    def __neg__(self) -> "SplitVector":
        return SplitVector(tuple(-x for x in self.horiz), -self.vlevel)

    def scaled_horiz(self, factor: Fraction) -> "SplitVector":
        return SplitVector(tuple(factor * x for x in self.horiz), self.vlevel)

    def sq_norm(self, vertical_unit_sq: Fraction) -> Fraction:
        return sum((x * x for x in self.horiz), Fraction(0)) + self.vlevel**2 * vertical_unit_sq

    def is_zero(self) -> bool:
        return self.vlevel == 0 and not any(self.horiz)


def _check_dims(x: SplitVector, y: SplitVector) -> None:
    if len(x.horiz) != len(y.horiz):
        raise ParameterError(f"Dimension mismatch: {x.dim} vs {y.dim}")


def sq_dist(x: SplitVector, y: SplitVector, b_sq: Fraction) -> Fraction:
    """|x.horiz - y.horiz|² + (x.vlevel - y.vlevel)² · b²."""
    _check_dims(x, y)
    horiz = sum(((p - q) ** 2 for p, q in zip(x.horiz, y.horiz)), Fraction(0))
    return horiz + (x.vlevel - y.vlevel) ** 2 * b_sq


def inner(x: SplitVector, y: SplitVector, b_sq: Fraction) -> Fraction:
    _check_dims(x, y)
    horiz = sum((p * q for p, q in zip(x.horiz, y.horiz)), Fraction(0))
    return horiz + x.vlevel * y.vlevel * b_sq


# =============================================================================
# Orthogonal maps
# =============================================================================


Matrix = tuple[tuple[Fraction, ...], ...]


def _identity_rows(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def _matmul(left: Matrix, right: Matrix) -> Matrix:
    size = len(left)
    return tuple(
        tuple(
            sum((left[i][k] * right[k][j] for k in range(size)), Fraction(0))
            for j in range(size)
        )
        for i in range(size)
    )


def _transpose(matrix: Matrix) -> Matrix:
    return tuple(zip(*matrix))


@dataclass(frozen=True)
class OrthoMap:
    """Orthogonal map of R^d that sends the vertical axis to ±itself.

    The last row and column are zero apart from the corner entry, which is
    ±1 and flips the sign of vlevel. The horizontal block is orthogonal.
    """

    matrix: Matrix

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        d = len(rows)
        if d < 2 or any(len(row) != d for row in rows):
            raise ParameterError("OrthoMap needs a square matrix of size >= 2")
        last = d - 1
        if any(rows[last][j] != 0 or rows[j][last] != 0 for j in range(last)):
            raise ParameterError("OrthoMap must keep the vertical axis separate")
        if abs(rows[last][last]) != 1:
            raise ParameterError("OrthoMap vertical entry must be ±1")
        if _matmul(_transpose(rows), rows) != _identity_rows(d):
            raise ParameterError("Matrix is not orthogonal")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, d: int) -> "OrthoMap":
        return cls(_identity_rows(d))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def vertical_sign(self) -> int:
        return int(self.matrix[-1][-1])

    def apply(self, x: SplitVector) -> SplitVector:
        if x.dim != self.dim:
            raise ParameterError(f"Dimension mismatch: map {self.dim} vs vector {x.dim}")
        h = self.dim - 1
        horiz = tuple(
            sum((self.matrix[i][j] * x.horiz[j] for j in range(h)), Fraction(0)) for i in range(h)
        )
        return SplitVector(horiz, self.vertical_sign * x.vlevel)

    def compose(self, other: "OrthoMap") -> "OrthoMap":
        """self ∘ other (apply other first)."""
        return OrthoMap(_matmul(self.matrix, other.matrix))

    def invert(self) -> "OrthoMap":
        return OrthoMap(_transpose(self.matrix))

    def is_identity(self) -> bool:
        return self.matrix == _identity_rows(self.dim)

    def order(self, limit: int = 10_000) -> int:
        power = self
        for n in range(1, limit + 1):
            if power.is_identity():
                return n
            power = self.compose(power)
        raise ParameterError(f"Map order exceeds {limit}")

    def to_strings(self) -> list[list[str]]:
        from .rational import format_rational

        return [[format_rational(x) for x in row] for row in self.matrix]


def signed_permutation(
    d: int, images: Sequence[tuple[int, int]], vertical_sign: int = 1
) -> OrthoMap:
    """Map e_s -> sign * e_target for each horizontal axis s (1-based axes).

    Args:
        d: Dimension
        images: For s = 1..d-1, the pair (target axis, sign)
        vertical_sign: ±1 applied to e_d
    """
    if len(images) != d - 1:
        raise ParameterError(f"Need {d - 1} axis images, got {len(images)}")
    rows = [[Fraction(0)] * d for _ in range(d)]
    for s, (target, sgn) in enumerate(images, start=1):
        rows[target - 1][s - 1] = Fraction(sgn)
    rows[d - 1][d - 1] = Fraction(vertical_sign)
    return OrthoMap(tuple(tuple(row) for row in rows))


def sign_flip(d: int, axis: int) -> OrthoMap:
    """Reflection e_axis -> -e_axis (1-based horizontal axis)."""
    return signed_permutation(
        d, [(s, -1 if s == axis else 1) for s in range(1, d)]
    )


def axis_transposition(d: int, i: int, j: int) -> OrthoMap:
    """Swap horizontal axes i and j (1-based)."""
    swap = {i: j, j: i}
    return signed_permutation(d, [(swap.get(s, s), 1) for s in range(1, d)])


def group_closure(generators: Sequence[OrthoMap], d: int, limit: int = 100_000) -> list[OrthoMap]:
    """All elements of the finite group generated by `generators` (BFS)."""
    identity = OrthoMap.identity(d)
    seen = {identity.matrix: identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            product = gen.compose(current)
            if product.matrix not in seen:
                seen[product.matrix] = product
                if len(seen) > limit:
                    raise ParameterError(f"Group closure exceeds {limit} elements")
                queue.append(product)
    return sorted(seen.values(), key=lambda m: m.matrix)
