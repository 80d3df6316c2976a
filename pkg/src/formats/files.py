"""Parameter files and CSV input/output."""

import csv
import io
import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from pathlib import Path

from ..core.exceptions import ParameterError
from ..core.geometry import SplitVector
from ..core.models import EngelParamsFile
from ..core.rational import format_rational, parse_rational, rational_sqrt
from ..engel.construct import EngelParams, LayerWindow
from ..engel.sequence import ShiftSequence

logger = logging.getLogger(__name__)


# =============================================================================
# Parameter files
# =============================================================================


def params_from_file(model: EngelParamsFile) -> EngelParams:
    """Convert a validated parameter file into EngelParams."""
    seq = ShiftSequence(model.d, tuple(model.abs_pattern), tuple(model.signs))
    b_prime_sq = model.b_prime * model.b_prime if model.b_prime is not None else None
    return EngelParams(seq, model.a, model.squared_b, model.delta, b_prime_sq)


def params_to_file(params: EngelParams) -> EngelParamsFile:
    seq = params.seq
    fields: dict[str, object] = {
        "d": seq.d,
        "abs_pattern": list(seq.abs_pattern),
        "period": seq.period,
        "signs": list(seq.signs),
        "a": params.a,
        "delta": params.delta,
    }
    if params.b_prime_sq is not None:
        fields["b"] = rational_sqrt(params.b_sq)
        fields["b_prime"] = rational_sqrt(params.b_prime_sq)
    else:
        fields["b_sq"] = params.b_sq
    return EngelParamsFile.model_validate(fields)


def load_params(path: Path) -> EngelParams:
    """Read and validate a JSON parameter file.

    Raises:
        pydantic.ValidationError: If the file does not match the schema
        ParameterError: If the values violate the construction's constraints
    """
    model = EngelParamsFile.model_validate_json(Path(path).read_text())
    params = params_from_file(model)
    logger.info(f"Loaded parameters from {path}: d={params.d}, sequence {params.seq}")
    return params


def dump_params(params: EngelParams) -> str:
    return params_to_file(params).model_dump_json(indent=2, exclude_none=True)


# =============================================================================
# CSV
# =============================================================================


def write_table_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Render a header and rows as CSV text with "\\n" line endings."""
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return stream.getvalue()


def window_csv(window: LayerWindow) -> str:
    """Window points as CSV: layer, horiz_1..horiz_{d-1}, vlevel.

    An empty window gives the header line only.
    """
    h = window.params.d - 1
    header = ["layer", *(f"horiz_{s}" for s in range(1, h + 1)), "vlevel"]
    rows = (
        [m, *(format_rational(c) for c in x.horiz), x.vlevel] for m, x in window.points
    )
    return write_table_csv(header, rows)


def read_points_csv(text: str, vertical_unit: Fraction = Fraction(1)) -> list[SplitVector]:
    """Read points from CSV text.

    Two layouts are accepted: the window layout (horiz_1.., vlevel; a layer
    column is ignored), or plain coordinates x_1..x_d whose last coordinate is
    vertical and must be an integer multiple of vertical_unit.

    Raises:
        ParameterError: On a malformed header or a coordinate off the vertical grid
    """
    reader = csv.DictReader(io.StringIO(text))
    columns = reader.fieldnames or []
    horiz_cols = sorted(
        (c for c in columns if c.startswith("horiz_")), key=lambda c: int(c.split("_")[1])
    )
    if "vlevel" in columns and horiz_cols:
        return [
            SplitVector(
                tuple(parse_rational(row[c]) for c in horiz_cols), int(row["vlevel"])
            )
            for row in reader
        ]

    coord_cols = sorted(
        (c for c in columns if c.startswith("x_")), key=lambda c: int(c.split("_")[1])
    )
    if len(coord_cols) < 2:
        raise ParameterError(
            f"Expected columns horiz_*/vlevel or x_1..x_d (d >= 2), got {columns}"
        )
    if vertical_unit <= 0:
        raise ParameterError(f"Vertical unit must be positive, got {vertical_unit}")
    points = []
    for line, row in enumerate(reader, start=2):
        coords = [parse_rational(row[c]) for c in coord_cols]
        level = coords[-1] / vertical_unit
        if level.denominator != 1:
            raise ParameterError(
                f"Line {line}: vertical coordinate {coords[-1]} is not a multiple "
                f"of {vertical_unit}"
            )
        points.append(SplitVector(tuple(coords[:-1]), level.numerator))
    return points
