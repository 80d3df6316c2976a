"""The shift sequence A = (a_i) driving the layer stacking.

A is stored as one period: an absolute-value pattern |a_1|..|a_{d-1}| that
repeats every d-1 terms, and P signs that repeat every P terms.
"""

from collections.abc import Sequence
from dataclasses import dataclass

from ..core.exceptions import ParameterError


@dataclass(frozen=True)
class ShiftSequence:
    """Periodic sequence of signed axis indices a_i in {±1, ..., ±(d-1)}."""

    d: int
    abs_pattern: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "abs_pattern", tuple(int(x) for x in self.abs_pattern))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if self.d < 2:
            raise ParameterError(f"Dimension must be at least 2, got {self.d}")
        if sorted(self.abs_pattern) != list(range(1, self.d)):
            raise ParameterError(
                f"abs_pattern must be a permutation of 1..{self.d - 1}, got {self.abs_pattern}"
            )
        if not self.signs:
            raise ParameterError("Sequence needs at least one sign")
        if any(s not in (1, -1) for s in self.signs):
            raise ParameterError(f"Signs must be +1 or -1, got {self.signs}")
        if len(self.signs) % (self.d - 1) != 0:
            raise ParameterError(
                f"Period {len(self.signs)} is not a multiple of d-1 = {self.d - 1}"
            )

    # =========================================================================
    # Constructors
    # =========================================================================

    @classmethod
    def periodic(cls, d: int, terms: Sequence[int]) -> "ShiftSequence":
        """Build from one period of explicit signed terms a_1..a_P."""
        terms = [int(t) for t in terms]
        if d < 2:
            raise ParameterError(f"Dimension must be at least 2, got {d}")
        if not terms or len(terms) % (d - 1) != 0:
            raise ParameterError(f"Period {len(terms)} is not a multiple of d-1 = {d - 1}")
        if any(t == 0 or abs(t) > d - 1 for t in terms):
            raise ParameterError(f"Terms must lie in ±1..±{d - 1}, got {terms}")
        pattern = tuple(abs(t) for t in terms[: d - 1])
        for i, t in enumerate(terms):
            if abs(t) != pattern[i % (d - 1)]:
                raise ParameterError(
                    f"|a_{i + 1}| = {abs(t)} breaks the repeating pattern {pattern}"
                )
        return cls(d, pattern, tuple(1 if t > 0 else -1 for t in terms))

    @classmethod
    def tau_regular(cls, initial_terms: Sequence[int], tau: int) -> "ShiftSequence":
        """Sequence with a_{i+d-1} = tau * a_i, seeded by a_1..a_{d-1}."""
        if tau not in (1, -1):
            raise ParameterError(f"tau must be +1 or -1, got {tau}")
        initial = [int(t) for t in initial_terms]
        d = len(initial) + 1
        terms = initial if tau == 1 else initial + [-t for t in initial]
        return cls.periodic(d, terms)

    @classmethod
    def non_regular(cls, d: int) -> "ShiftSequence":
        """Three blocks of 1..d-1 with signs +, +, -."""
        block = list(range(1, d))
        return cls.periodic(d, block + block + [-t for t in block])

    @classmethod
    def all_plus(cls, d: int) -> "ShiftSequence":
        return cls.tau_regular(range(1, d), 1)

    # =========================================================================
    # Terms
    # =========================================================================

    @property
    def period(self) -> int:
        return len(self.signs)

    def term(self, i: int) -> int:
        """a_i for any integer i, extended periodically."""
        magnitude = self.abs_pattern[(i - 1) % (self.d - 1)]
        return magnitude * self.signs[(i - 1) % self.period]

    def terms(self) -> tuple[int, ...]:
        """One period a_1..a_P."""
        return tuple(self.term(i) for i in range(1, self.period + 1))

    def shift_unit(self, i: int) -> tuple[int, ...]:
        """u_i = sign(a_i) e_{|a_i|} as a horizontal integer vector."""
        a_i = self.term(i)
        unit = [0] * (self.d - 1)
        unit[abs(a_i) - 1] = 1 if a_i > 0 else -1
        return tuple(unit)

    def initial_terms(self) -> tuple[int, ...]:
        return tuple(self.term(i) for i in range(1, self.d))

    def __str__(self) -> str:
        body = ",".join(str(t) for t in self.terms())
        return f"({body})^periodic"
