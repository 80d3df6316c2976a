"""Parameter synthesis for sets whose (2dR - eps)-clusters are all equivalent."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from ..clusters.counting import count_classes
from ..core.exceptions import ParameterError
from ..core.models import LowerBoundWitnessReport, ParameterChoice
from ..core.rational import radius_sq_to_str
from ..engel.construct import EngelParams
from ..engel.sequence import ShiftSequence
from .predicates import crucial_holds, is_regular, two_d_r_minus_eps_sq

logger = logging.getLogger(__name__)

MAX_HALVINGS = 200


@dataclass
class SynthesisResult:
    params: EngelParams
    halvings: int


def _initial_a(d: int, cover_sq: Fraction) -> Fraction:
    """R / (2 sqrt d) truncated to three decimals."""
    a0 = Fraction(math.isqrt(math.floor(cover_sq * 10**6 / (4 * d))), 1000)
    return a0 if a0 > 0 else Fraction(1, 1000)


def synthesize(
    d: int, cover_sq: Fraction, eps: Fraction, seq: ShiftSequence | None = None
) -> SynthesisResult:
    """Halve a from about R/(2 sqrt d) until a < b and the crucial bound hold exactly."""
    if d < 2:
        raise ParameterError(f"Dimension must be at least 2, got {d}")
    if cover_sq <= 0:
        raise ParameterError(f"R² must be positive, got {cover_sq}")
    if not 0 < eps or eps * eps >= 4 * d * d * cover_sq:
        raise ParameterError(f"Need 0 < eps < 2dR, got eps={eps}")
    if seq is None:
        seq = ShiftSequence.non_regular(d)
    elif seq.d != d:
        raise ParameterError(f"Sequence dimension {seq.d} does not match {d}")

    a = _initial_a(d, cover_sq)
    for halvings in range(MAX_HALVINGS):
        b_sq = cover_sq - (d - 1) * a * a
        if b_sq > 0 and a * a < b_sq and crucial_holds(d, a, b_sq, eps):
            logger.info(f"Chose a={a}, b²={b_sq} after {halvings} halvings")
            return SynthesisResult(EngelParams(seq, a, b_sq, a / 2), halvings)
        a /= 2
    raise ParameterError(f"No parameters found after {MAX_HALVINGS} halvings")


def choose_parameters(
    d: int, cover_sq: Fraction, eps: Fraction, seq: ShiftSequence | None = None
) -> EngelParams:
    """Parameters (a, b², delta = a/2) with R² = b² + (d-1)a² satisfying the crucial bound."""
    return synthesize(d, cover_sq, eps, seq).params


def parameter_choice(
    d: int, cover_sq: Fraction, eps: Fraction, seq: ShiftSequence | None = None
) -> ParameterChoice:
    """choose_parameters plus an independent re-check of its conditions."""
    return _choice(synthesize(d, cover_sq, eps, seq), cover_sq, eps)


def _choice(result: SynthesisResult, cover_sq: Fraction, eps: Fraction) -> ParameterChoice:
    params = result.params
    d = params.d
    return ParameterChoice(
        d=d,
        R_sq=cover_sq,
        eps=eps,
        a=params.a,
        b_sq=params.b_sq,
        delta=params.delta,
        sequence=list(params.seq.terms()),
        halvings=result.halvings,
        a_below_b=params.a**2 < params.b_sq,
        crucial_holds=crucial_holds(d, params.a, params.b_sq, eps),
    )


def lower_bound_witness(
    d: int,
    cover_sq: Fraction,
    eps: Fraction,
    seq: ShiftSequence | None = None,
    max_points: int | None = None,
) -> LowerBoundWitnessReport:
    """A non-regular set whose (2dR - eps)-clusters form a single class."""
    result = synthesize(d, cover_sq, eps, seq)
    params = result.params
    rho_sq = two_d_r_minus_eps_sq(d, cover_sq, eps)
    verdict = is_regular(params.seq)
    report = count_classes(params, rho_sq, max_points=max_points)
    return LowerBoundWitnessReport(
        choice=_choice(result, cover_sq, eps),
        rho_sq=radius_sq_to_str(rho_sq),
        is_regular=verdict.is_regular,
        n_classes=report.n_classes,
        holds=not verdict.is_regular and report.n_classes == 1,
    )
