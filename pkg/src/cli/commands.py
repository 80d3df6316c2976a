"""Subcommand handlers.

Each handler takes the parsed arguments and returns the text to emit:
JSON for reports, CSV for tables and windows, SVG for figures. `count`
also writes a one-line human summary to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path

from pydantic import BaseModel

from ..clusters.counting import count_classes
from ..clusters.equivalence import NonSpanning, cluster_group, cluster_rank
from ..clusters.extract import Cluster, cluster_around, extract_cluster_from_points
from ..core.config import get_settings
from ..core.exceptions import ParameterError
from ..core.models import (
    DeloneReport,
    GroupElementModel,
    GroupReport,
    LineSetKind,
    PointModel,
    RegularityReport,
)
from ..core.rational import RadiusSq, parse_rational, radius_sq_to_str
from ..engel.construct import EngelParams, LayerWindow, delone_type, generate_window
from ..engel.presets import get_example
from ..formats.files import load_params, read_points_csv, window_csv
from ..formats.svg import render_window_svg
from ..onedim.lineset import check_line, make_1d_counterexample, make_ab_set
from ..pipeline.reproduction import reproduce_table, run_discrepancy_checks
from ..regularity.delone import verify_covering, verify_packing
from ..regularity.predicates import (
    is_regular,
    onecluster_hypothesis,
    predict_group,
    two_d_r_minus_eps_sq,
)
from ..regularity.synthesis import lower_bound_witness, parameter_choice
from ..regularity.systems import enreg_check, two_regular_distinct

logger = logging.getLogger(__name__)


def _json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


# =============================================================================
# Argument helpers
# =============================================================================


def resolve_params(args: argparse.Namespace) -> EngelParams:
    """Parameters from --params FILE or --example NAME."""
    if getattr(args, "params", None):
        return load_params(Path(args.params))
    if getattr(args, "example", None):
        return get_example(args.example)
    raise ParameterError("Give --params FILE or --example planar|spatial")


def resolve_radius(args: argparse.Namespace, params: EngelParams | None) -> RadiusSq:
    """ρ² from --rho-sq, a numeric --rho, or the symbolic --rho 2dR / 2dR-eps.

    Raises:
        ParameterError: If no radius is given or the symbolic form lacks parameters
    """
    if args.rho_sq is not None:
        return parse_rational(args.rho_sq)
    if args.rho is None:
        raise ParameterError("Give --rho or --rho-sq")
    return radius_from_text(args.rho, args.eps, params)


def radius_from_text(raw: str, eps: str | None, params: EngelParams | None) -> RadiusSq:
    """ρ² from one --rho value: an exact number, "2dR" or "2dR-eps"."""
    text = raw.replace(" ", "")
    if text in ("2dR", "2dR-eps"):
        if params is None:
            raise ParameterError(f"--rho {text} needs --params or --example")
        _, cover_sq = delone_type(params)
        if text == "2dR":
            return 4 * params.d**2 * cover_sq
        if eps is None:
            raise ParameterError("--rho 2dR-eps needs --eps")
        return two_d_r_minus_eps_sq(params.d, cover_sq, parse_rational(eps))
    rho = parse_rational(text)
    if rho < 0:
        raise ParameterError(f"ρ must be non-negative, got {rho}")
    return rho * rho


def _window(args: argparse.Namespace, params: EngelParams) -> LayerWindow:
    m_min, m_max = args.layers
    return generate_window(params, (m_min, m_max), args.lattice_radius, args.max_points)


# =============================================================================
# Commands
# =============================================================================


def cmd_generate(args: argparse.Namespace) -> str:
    """Window points as CSV."""
    params = resolve_params(args)
    return window_csv(_window(args, params))


def cmd_count(args: argparse.Namespace) -> str:
    """N_X(ρ) over the layer representatives."""
    params = resolve_params(args)
    rho_sq = resolve_radius(args, params)
    report = count_classes(params, rho_sq, padding=args.padding, max_points=args.max_points)
    print(
        f"N_X(ρ) = {report.n_classes} for ρ² = {report.rho_sq} "
        f"over {len(report.representatives)} layer representatives",
        file=sys.stderr,
    )
    return _json(report)


def _group_report(
    cluster: Cluster, layer: int | None, params: EngelParams | None, k: int | None
) -> GroupReport:
    result = cluster_group(cluster)
    center = PointModel(horiz=list(cluster.center.horiz), vlevel=cluster.center.vlevel)
    if isinstance(result, NonSpanning):
        return GroupReport(
            rho_sq=radius_sq_to_str(cluster.rho_sq),
            layer=layer,
            center=center,
            cluster_size=cluster.size,
            spanning=False,
            rank=result.rank,
            order=None,
        )

    prediction = None
    matches = None
    if k is not None and params is not None and layer is not None:
        prediction = predict_group(params, k, layer)
        if prediction.applicable:
            matches = prediction.predicted_order == result.order
    return GroupReport(
        rho_sq=radius_sq_to_str(cluster.rho_sq),
        layer=layer,
        center=center,
        cluster_size=cluster.size,
        spanning=True,
        rank=cluster_rank(cluster),
        order=result.order,
        elements=[
            GroupElementModel(
                is_identity=w.is_identity,
                matrix=w.map.to_strings() if w.map is not None else None,
            )
            for w in result.elements
        ],
        prediction=prediction,
        prediction_matches=matches,
    )


def cmd_group(args: argparse.Namespace) -> str:
    """Cluster group of one cluster, from the set or from a CSV of points."""
    if args.points:
        unit = parse_rational(args.vertical_unit)
        points = read_points_csv(Path(args.points).read_text(), unit)
        if not 0 <= args.center_row < len(points):
            raise ParameterError(f"--center-row {args.center_row} is outside the point list")
        rho_sq = resolve_radius(args, None)
        center = points[args.center_row]
        cluster = extract_cluster_from_points(points, center, rho_sq, unit * unit)
        return _json(_group_report(cluster, None, None, None))

    params = resolve_params(args)
    rho_sq = resolve_radius(args, params)
    cluster = cluster_around(params, args.layer, rho_sq, max_points=args.max_points)
    return _json(_group_report(cluster, args.layer, params, args.predict_k))


def cmd_regularity(args: argparse.Namespace) -> str:
    """Sequence verdict, optionally with hypothesis, N(2dR) and tau-pair checks."""
    params = resolve_params(args)
    report = RegularityReport(verdict=is_regular(params.seq))
    if args.eps is not None:
        report.hypothesis = onecluster_hypothesis(params, parse_rational(args.eps))
    if args.enreg:
        report.enreg = enreg_check(params, max_points=args.max_points)
    if args.two_regular:
        report.two_regular = two_regular_distinct(
            params, cluster_check=not args.no_cluster_check, max_points=args.max_points
        )
    return _json(report)


def cmd_choose_params(args: argparse.Namespace) -> str:
    """Synthesize parameters; with --witness also count classes at 2dR - eps."""
    cover_sq = parse_rational(args.cover_sq)
    eps = parse_rational(args.eps)
    if args.witness:
        return _json(lower_bound_witness(args.d, cover_sq, eps, max_points=args.max_points))
    return _json(parameter_choice(args.d, cover_sq, eps))


def cmd_verify_delone(args: argparse.Namespace) -> str:
    """Packing and covering checks on a window."""
    params = resolve_params(args)
    window = _window(args, params)
    r, cover_sq = delone_type(params)
    samples = args.samples if args.samples is not None else get_settings().covering_samples
    report = DeloneReport(
        packing=verify_packing(window, r * r),
        covering=verify_covering(window, cover_sq, samples, args.seed),
    )
    return _json(report)


def cmd_onedim(args: argparse.Namespace) -> str:
    """Build a line set and check its clusters."""
    kind = LineSetKind(args.kind)
    if kind is LineSetKind.AB_SET:
        a, b = parse_rational(args.a), parse_rational(args.b)
        line = make_ab_set(a, b, args.n)
        default_rho = b
    else:
        rho, cover = parse_rational(args.rho), parse_rational(args.cover)
        line = make_1d_counterexample(rho, cover, args.n)
        default_rho = rho
    check_rho = parse_rational(args.check_rho) if args.check_rho is not None else default_rho
    return _json(check_line(kind, line, check_rho))


def cmd_svg(args: argparse.Namespace) -> str:
    """Window scatter with one ρ-circle family per --rho."""
    params = resolve_params(args)
    radii = [radius_from_text(raw, args.eps, params) for raw in args.rho]
    return render_window_svg(_window(args, params), radii)


def cmd_reproduce_table(args: argparse.Namespace) -> str:
    return reproduce_table(args.kind)


def cmd_discrepancies(args: argparse.Namespace) -> str:
    return _json(run_discrepancy_checks())


COMMANDS = {
    "generate": cmd_generate,
    "count": cmd_count,
    "group": cmd_group,
    "regularity": cmd_regularity,
    "choose-params": cmd_choose_params,
    "verify-delone": cmd_verify_delone,
    "onedim": cmd_onedim,
    "svg": cmd_svg,
    "reproduce-table": cmd_reproduce_table,
    "discrepancies": cmd_discrepancies,
}
