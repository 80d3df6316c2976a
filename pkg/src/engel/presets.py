"""The planar and spatial worked examples."""

from fractions import Fraction

from ..core.exceptions import ParameterError
from .construct import EngelParams
from .sequence import ShiftSequence


def planar_example() -> EngelParams:
    """A = (1, 1, -1) repeated, a = 5, b = 12, delta = 1; type (5, 13)."""
    return EngelParams(
        seq=ShiftSequence.periodic(2, [1, 1, -1]),
        a=Fraction(5),
        b_sq=Fraction(144),
        delta=Fraction(1),
    )


def spatial_example() -> EngelParams:
    """A = (1, 2, -1, 2) repeated, a = 4, b = 7, delta = 1; type (4, 9)."""
    return EngelParams(
        seq=ShiftSequence.periodic(3, [1, 2, -1, 2]),
        a=Fraction(4),
        b_sq=Fraction(49),
        delta=Fraction(1),
    )


EXAMPLES = {
    "planar": planar_example,
    "spatial": spatial_example,
}


def get_example(name: str) -> EngelParams:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise ParameterError(
            f"Unknown example {name!r}; choose from {', '.join(sorted(EXAMPLES))}"
        ) from None
