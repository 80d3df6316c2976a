"""Regularity predicates and exact hypothesis checks."""

import math
from fractions import Fraction

from ..core.exceptions import ParameterError
from ..core.geometry import OrthoMap, axis_transposition, sign_flip
from ..core.models import GroupPrediction, HypothesisCheck, HypothesisReport, RegularityVerdict
from ..core.rational import QuadRadius, RadiusSq, format_rational
from ..engel.construct import EngelParams, basis_used, delone_type
from ..engel.sequence import ShiftSequence


def is_regular(seq: ShiftSequence) -> RegularityVerdict:
    """Regular iff a_{i+d-1} = tau * a_i over a full period, tau = a_d / a_1."""
    tau = seq.term(seq.d) // seq.term(1)
    regular = all(
        seq.term(i + seq.d - 1) == tau * seq.term(i) for i in range(1, seq.period + 1)
    )
    return RegularityVerdict(is_regular=regular, tau=tau if regular else None)


def kappa(seq: ShiftSequence) -> int:
    """The sign with u_d = kappa * u_1; equals tau for a regular sequence."""
    axis = abs(seq.term(1)) - 1
    return seq.shift_unit(seq.d)[axis] * seq.shift_unit(1)[axis]


def two_d_r_minus_eps(d: int, cover_sq: Fraction, eps: Fraction) -> QuadRadius:
    """The radius 2dR - eps as u + v*sqrt(R²)."""
    return QuadRadius(-Fraction(eps), Fraction(2 * d), Fraction(cover_sq))


def two_d_r_minus_eps_sq(d: int, cover_sq: Fraction, eps: Fraction) -> RadiusSq:
    """(2dR - eps)², rational whenever R is.

    Raises:
        ParameterError: If eps <= 0 or 2dR - eps <= 0
    """
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    rho = two_d_r_minus_eps(d, cover_sq, eps)
    if rho.sign() <= 0:
        raise ParameterError(f"2dR - eps = {rho} is not a positive radius")
    squared = rho.squared()
    return squared.u if squared.is_rational else squared


def crucial_holds(d: int, a: Fraction, b_sq: Fraction, eps: Fraction) -> bool:
    """a² < eps*b / (d(d-1)), checked as a⁴d²(d-1)² < eps²b²."""
    return a**4 * d**2 * (d - 1) ** 2 < eps**2 * b_sq


def onecluster_hypothesis(params: EngelParams, eps: Fraction) -> HypothesisReport:
    """Exact checks behind N_X(2dR - eps) = 1.

    (i) a < b; (ii) 2dR - eps < 2db; (iii) a² <= eps*b/(d(d-1)); plus the strict
    form of (iii) that parameter synthesis relies on.
    """
    if params.uneven:
        raise ParameterError("Hypothesis checks apply to evenly spaced layers only")
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    d, a, b_sq = params.d, params.a, params.b_sq
    _, cover_sq = delone_type(params)

    # (ii): 2dR < 2db + eps  <=>  4d²(d-1)a² - eps² < 4d*eps*b
    lead = 4 * d * d * (d - 1) * a * a - eps * eps
    radius_holds = lead < 0 or lead * lead < 16 * d * d * eps * eps * b_sq

    lhs_iii = a**4 * d**2 * (d - 1) ** 2
    rhs_iii = eps**2 * b_sq
    checks = [
        HypothesisCheck(
            name="a_below_b",
            lhs=f"a^2={format_rational(a * a)}",
            relation="<",
            rhs=f"b^2={format_rational(b_sq)}",
            holds=a * a < b_sq,
        ),
        HypothesisCheck(
            name="radius_below_layer_gap",
            lhs=str(two_d_r_minus_eps(d, cover_sq, eps)),
            relation="<",
            rhs=str(QuadRadius(Fraction(0), Fraction(2 * d), b_sq)),
            holds=radius_holds,
        ),
        HypothesisCheck(
            name="a_sq_bound",
            lhs=f"a^4*d^2*(d-1)^2={format_rational(lhs_iii)}",
            relation="<=",
            rhs=f"eps^2*b^2={format_rational(rhs_iii)}",
            holds=lhs_iii <= rhs_iii,
        ),
        HypothesisCheck(
            name="crucial",
            lhs=f"a^4*d^2*(d-1)^2={format_rational(lhs_iii)}",
            relation="<",
            rhs=f"eps^2*b^2={format_rational(rhs_iii)}",
            holds=lhs_iii < rhs_iii,
        ),
    ]
    return HypothesisReport(
        d=d,
        eps=eps,
        checks=checks,
        all_hold=all(c.holds for c in checks[:3]),
        crucial_holds=checks[3].holds,
    )


def crosspolytope_generators(d: int, axes: list[int]) -> list[OrthoMap]:
    """Sign flips on every axis plus transpositions of consecutive axes."""
    generators = [sign_flip(d, s) for s in axes]
    generators += [axis_transposition(d, s, t) for s, t in zip(axes, axes[1:])]
    return generators


def predict_group(params: EngelParams, k: int, p: int) -> GroupPrediction:
    """Predicted group of the 2kR-cluster at the origin of layer p.

    Applicable when 2kR < 2b(k+1); the prediction is the symmetry group of the
    crosspolytope on the axes not consumed by layers p-k..p+k.
    """
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    if params.uneven:
        raise ParameterError("Group prediction applies to evenly spaced layers only")
    d, a, b_sq = params.d, params.a, params.b_sq
    _, cover_sq = delone_type(params)

    lhs = k * k * cover_sq
    rhs = b_sq * (k + 1) ** 2
    condition = HypothesisCheck(
        name="2kR_below_2b(k+1)",
        lhs=f"k^2*R^2={format_rational(lhs)}",
        relation="<",
        rhs=f"b^2*(k+1)^2={format_rational(rhs)}",
        holds=lhs < rhs,
    )
    suff_lhs = a * a * k * (d - 1)
    sufficient = HypothesisCheck(
        name="a_sq_below_2b_sq_over_k(d-1)",
        lhs=f"a^2*k*(d-1)={format_rational(suff_lhs)}",
        relation="<",
        rhs=f"2*b^2={format_rational(2 * b_sq)}",
        holds=suff_lhs < 2 * b_sq,
    )

    axes = sorted(set(range(1, d)) - set(basis_used(params, p, k)))
    n = len(axes)
    return GroupPrediction(
        k=k,
        p=p,
        axes=axes,
        predicted_order=2**n * math.factorial(n),
        generators=[g.to_strings() for g in crosspolytope_generators(d, axes)],
        applicable=condition.holds,
        condition=condition,
        sufficient_condition=sufficient,
    )
