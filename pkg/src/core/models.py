"""Pydantic models for engelset.

These models define the parameter-file contract and the JSON reports the
commands emit. Rationals travel as "p/q" or "n" strings.
"""

from enum import Enum
from fractions import Fraction
from typing import Annotated

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    model_validator,
)

from .rational import format_rational, parse_rational

RationalStr = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


class ExactModel(BaseModel):
    """Base for models carrying Fraction fields."""

    model_config = ConfigDict(arbitrary_types_allowed=True)


# =============================================================================
# Enums
# =============================================================================


class ExampleName(str, Enum):
    """Built-in parameter sets."""

    PLANAR = "planar"
    SPATIAL = "spatial"


class LineSetKind(str, Enum):
    """One-dimensional constructions."""

    AB_SET = "ab"
    COUNTEREXAMPLE = "counterexample"


# =============================================================================
# Input Models
# =============================================================================


class EngelParamsFile(ExactModel):
    """Parameter file: sequence plus a, b (or b²), optional b', delta."""

    d: int = Field(..., ge=2)
    abs_pattern: list[int]
    period: int = Field(..., ge=1)
    signs: list[int]
    a: RationalStr
    b_sq: RationalStr | None = None
    b: RationalStr | None = None
    b_prime: RationalStr | None = None
    delta: RationalStr

    @model_validator(mode="after")
    def validate_shape(self) -> "EngelParamsFile":
        """Exactly one of b / b_sq, and signs matching the declared period."""
        if (self.b is None) == (self.b_sq is None):
            raise ValueError("Give exactly one of b or b_sq")
        if self.b is not None and self.b <= 0:
            raise ValueError("b must be positive")
        if len(self.signs) != self.period:
            raise ValueError(f"period is {self.period} but {len(self.signs)} signs were given")
        if len(self.abs_pattern) != self.d - 1:
            raise ValueError(f"abs_pattern needs {self.d - 1} entries")
        if self.b_prime is not None and self.b is None:
            raise ValueError("Uneven spacing (b_prime) needs b given directly")
        return self

    @property
    def squared_b(self) -> Fraction:
        if self.b_sq is not None:
            return self.b_sq
        assert self.b is not None
        return self.b * self.b


# =============================================================================
# Shared pieces
# =============================================================================


class PointModel(ExactModel):
    """A point in split coordinates (vertical = vlevel * vertical unit)."""

    horiz: list[RationalStr]
    vlevel: int


class RepresentativeModel(ExactModel):
    layer: int
    center: PointModel


class WitnessModel(BaseModel):
    """Equivalence witness between two representatives."""

    source: int
    target: int
    matrix: list[list[str]] | None = None


class HypothesisCheck(BaseModel):
    """One exact inequality with both sides rendered as strings."""

    name: str
    lhs: str
    relation: str
    rhs: str
    holds: bool


# =============================================================================
# Cluster Reports
# =============================================================================


class ClassReport(ExactModel):
    """Equivalence classes of representative clusters (the value N_X(ρ))."""

    rho_sq: str
    representatives: list[RepresentativeModel]
    class_ids: list[int]
    classes: list[list[int]]
    witnesses: list[WitnessModel] = Field(default_factory=list)
    n_classes: int

    @model_validator(mode="after")
    def validate_classes(self) -> "ClassReport":
        if self.n_classes != len(self.classes):
            raise ValueError("n_classes disagrees with classes")
        if len(self.class_ids) != len(self.representatives):
            raise ValueError("Every representative needs a class id")
        return self


class GroupPrediction(BaseModel):
    """Predicted cluster group of a 2kR-cluster: a crosspolytope symmetry group."""

    k: int
    p: int
    axes: list[int]
    predicted_order: int
    generators: list[list[list[str]]]
    applicable: bool
    condition: HypothesisCheck
    sufficient_condition: HypothesisCheck


class GroupElementModel(BaseModel):
    is_identity: bool
    matrix: list[list[str]] | None = None


class GroupReport(ExactModel):
    """Cluster group of one cluster, with the prediction when one applies."""

    rho_sq: str
    layer: int | None
    center: PointModel
    cluster_size: int
    spanning: bool
    rank: int
    order: int | None
    elements: list[GroupElementModel] = Field(default_factory=list)
    prediction: GroupPrediction | None = None
    prediction_matches: bool | None = None


# =============================================================================
# Regularity Reports
# =============================================================================


class RegularityVerdict(BaseModel):
    """Whether the sequence yields a regular system, and its sign tau."""

    is_regular: bool
    tau: int | None = None

    @model_validator(mode="after")
    def validate_tau(self) -> "RegularityVerdict":
        if self.is_regular != (self.tau is not None):
            raise ValueError("tau must be present exactly when the set is regular")
        return self


class HypothesisReport(ExactModel):
    """Exact checks of the single-class hypothesis at radius 2dR - eps."""

    d: int
    eps: RationalStr
    checks: list[HypothesisCheck]
    all_hold: bool
    crucial_holds: bool


class EnregReport(BaseModel):
    """Regular iff N(2dR) = 1, checked on one parameter set."""

    sequence: list[int]
    is_regular: bool
    tau: int | None
    rho_sq: str
    n_classes: int
    consistent: bool


class TwoRegularReport(BaseModel):
    """The tau = +1 and tau = -1 sets built from the same initial terms."""

    initial_terms: list[int]
    plus_sequence: list[int]
    minus_sequence: list[int]
    plus_verdict: RegularityVerdict
    minus_verdict: RegularityVerdict
    kappa_plus: int
    kappa_minus: int
    distinct: bool
    plus_self_equivalent: bool | None = None
    minus_self_equivalent: bool | None = None
    clusters_distinct: bool | None = None


class ParameterChoice(ExactModel):
    """Synthesized parameters and their exact re-verification."""

    d: int
    R_sq: RationalStr
    eps: RationalStr
    a: RationalStr
    b_sq: RationalStr
    delta: RationalStr
    sequence: list[int]
    halvings: int
    a_below_b: bool
    crucial_holds: bool


class LowerBoundWitnessReport(ExactModel):
    """A non-regular set whose (2dR - eps)-clusters are all equivalent."""

    choice: ParameterChoice
    rho_sq: str
    is_regular: bool
    n_classes: int
    holds: bool


class RegularityReport(BaseModel):
    verdict: RegularityVerdict
    enreg: EnregReport | None = None
    hypothesis: HypothesisReport | None = None
    two_regular: TwoRegularReport | None = None


# =============================================================================
# Delone Reports
# =============================================================================


class PackingReport(ExactModel):
    r_sq: RationalStr
    n_points: int
    min_sq_dist: RationalStr | None
    holds: bool
    witness: list[PointModel] | None = None


class CoveringReport(ExactModel):
    R_sq: RationalStr
    n_samples: int
    seed: int
    max_sq_dist: RationalStr | None
    holds: bool
    sharp_horiz: list[RationalStr]
    sharp_vlevel: RationalStr
    sharp_sq_dist: RationalStr
    sharp_expected: RationalStr
    sharp_holds: bool


class DeloneReport(BaseModel):
    packing: PackingReport
    covering: CoveringReport


# =============================================================================
# One-dimensional and discrepancy Reports
# =============================================================================


class LineCheckReport(ExactModel):
    kind: LineSetKind
    points: list[RationalStr]
    rho: RationalStr
    interior: int
    clusters_equal: bool
    regular_window: bool


class DiscrepancyItem(BaseModel):
    """A documented claim next to what exact arithmetic gives."""

    name: str
    documented: str
    computed: str
    agrees: bool
    note: str = ""


class DiscrepancyReport(BaseModel):
    items: list[DiscrepancyItem]
    n_flags: int
