"""Regular systems: the N(2dR) = 1 criterion and the two tau-regular sets."""

import logging
from fractions import Fraction

from ..clusters.counting import count_classes
from ..clusters.equivalence import clusters_equivalent
from ..clusters.extract import cluster_around
from ..core.models import EnregReport, TwoRegularReport
from ..core.rational import radius_sq_to_str
from ..engel.construct import EngelParams, delone_type
from ..engel.sequence import ShiftSequence
from .predicates import is_regular, kappa

logger = logging.getLogger(__name__)


def two_d_r_sq(params: EngelParams) -> Fraction:
    """(2dR)² = 4d²R²."""
    _, cover_sq = delone_type(params)
    return 4 * params.d**2 * cover_sq


def enreg_check(params: EngelParams, max_points: int | None = None) -> EnregReport:
    """Compare the sequence verdict with N_X(2dR) = 1 computed on the set."""
    verdict = is_regular(params.seq)
    rho_sq = two_d_r_sq(params)
    report = count_classes(params, rho_sq, max_points=max_points)
    consistent = verdict.is_regular == (report.n_classes == 1)
    if not consistent:
        logger.warning(
            f"Sequence {params.seq} is_regular={verdict.is_regular} "
            f"but N(2dR) = {report.n_classes}"
        )
    return EnregReport(
        sequence=list(params.seq.terms()),
        is_regular=verdict.is_regular,
        tau=verdict.tau,
        rho_sq=radius_sq_to_str(rho_sq),
        n_classes=report.n_classes,
        consistent=consistent,
    )


def two_regular_distinct(
    params: EngelParams, cluster_check: bool = True, max_points: int | None = None
) -> TwoRegularReport:
    """Build the tau = +1 and tau = -1 sets from the initial terms of params.

    Both are regular; the sign kappa tells them apart. With cluster_check,
    each set is also confirmed to have a single 2dR-cluster class and the
    2dR-clusters at the two origins are compared.
    """
    initial = params.seq.initial_terms()
    plus = params.with_sequence(ShiftSequence.tau_regular(initial, 1))
    minus = params.with_sequence(ShiftSequence.tau_regular(initial, -1))
    kappa_plus, kappa_minus = kappa(plus.seq), kappa(minus.seq)

    report = TwoRegularReport(
        initial_terms=list(initial),
        plus_sequence=list(plus.seq.terms()),
        minus_sequence=list(minus.seq.terms()),
        plus_verdict=is_regular(plus.seq),
        minus_verdict=is_regular(minus.seq),
        kappa_plus=kappa_plus,
        kappa_minus=kappa_minus,
        distinct=kappa_plus != kappa_minus,
    )
    if not cluster_check:
        return report

    rho_sq = two_d_r_sq(params)
    report.plus_self_equivalent = count_classes(plus, rho_sq, max_points=max_points).n_classes == 1
    report.minus_self_equivalent = (
        count_classes(minus, rho_sq, max_points=max_points).n_classes == 1
    )
    witness = clusters_equivalent(
        cluster_around(plus, 0, rho_sq, max_points=max_points),
        cluster_around(minus, 0, rho_sq, max_points=max_points),
        with_map=False,
    )
    report.clusters_distinct = witness is None
    logger.info(
        f"tau=+1 vs tau=-1 from {list(initial)}: kappa {kappa_plus}/{kappa_minus}, "
        f"2dR-clusters distinct={report.clusters_distinct}"
    )
    return report
