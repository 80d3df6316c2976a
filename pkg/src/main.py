"""Command-line entry point for engelset."""

import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from .cli.commands import COMMANDS
from .core.config import get_settings, override_settings
from .core.exceptions import (
    EngelSetError,
    InsufficientWindowError,
    ParameterError,
    ResourceCapError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_WINDOW = 3

EXAMPLES = """examples:
  engelset reproduce-table planar
  engelset count --example planar --rho 48
  engelset count --example spatial --rho 2dR-eps --eps 14
  engelset group --example spatial --rho 18 --layer 0
  engelset choose-params --d 3 --cover-sq 81 --eps 14 --witness
  engelset onedim counterexample --rho 1 --cover 1 --n 8 --check-rho 2
"""


# =============================================================================
# Parser
# =============================================================================


def _add_params(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--example", choices=["planar", "spatial"], help="built-in parameter set")
    source.add_argument("--params", metavar="FILE", help="JSON parameter file")


def _add_radius(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--rho", help='cluster radius: exact decimal or p/q, or "2dR" / "2dR-eps"'
    )
    parser.add_argument("--rho-sq", dest="rho_sq", help="squared cluster radius, exact")
    parser.add_argument("--eps", help="eps for --rho 2dR-eps")


def _add_window(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--layers",
        nargs=2,
        type=int,
        metavar=("M_MIN", "M_MAX"),
        default=[-6, 6],
        help="layer range (default -6 6)",
    )
    parser.add_argument(
        "--lattice-radius",
        dest="lattice_radius",
        type=int,
        default=2,
        help="lattice indices |n_s| <= L per layer (default 2)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engelset",
        description="Exact construction and cluster analysis of Engel-type Delone sets",
        epilog=EXAMPLES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--max-points",
        dest="max_points",
        type=int,
        default=None,
        help="cap on materialized window points (overrides ENGELSET_MAX_POINTS)",
    )
    parser.add_argument("-o", "--output", help="write to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="window points as CSV")
    _add_params(p)
    _add_window(p)

    p = sub.add_parser("count", help="number of cluster classes N_X(rho)")
    _add_params(p)
    _add_radius(p)
    p.add_argument("--padding", type=int, default=0, help="extra lattice radius per window")

    p = sub.add_parser("group", help="cluster group of one cluster")
    _add_params(p)
    _add_radius(p)
    p.add_argument("--layer", type=int, default=0, help="center at the origin of this layer")
    p.add_argument("--predict-k", dest="predict_k", type=int, help="attach the 2kR prediction")
    p.add_argument("--points", metavar="CSV", help="use an arbitrary point set instead")
    p.add_argument("--center-row", dest="center_row", type=int, default=0)
    p.add_argument(
        "--vertical-unit",
        dest="vertical_unit",
        default="1",
        help="vertical unit of the CSV coordinates (default 1)",
    )

    p = sub.add_parser("regularity", help="regularity verdict and hypothesis checks")
    _add_params(p)
    p.add_argument("--eps", help="check the single-class hypothesis at 2dR - eps")
    p.add_argument("--enreg", action="store_true", help="compare with N_X(2dR) = 1")
    p.add_argument("--two-regular", dest="two_regular", action="store_true")
    p.add_argument("--no-cluster-check", dest="no_cluster_check", action="store_true")

    p = sub.add_parser("choose-params", help="synthesize parameters for 2dR - eps")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cover-sq", dest="cover_sq", required=True, help="R², exact")
    p.add_argument("--eps", required=True)
    p.add_argument("--witness", action="store_true", help="also count classes at 2dR - eps")

    p = sub.add_parser("verify-delone", help="packing and covering checks")
    _add_params(p)
    _add_window(p)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("onedim", help="one-dimensional constructions")
    p.add_argument("kind", choices=["ab", "counterexample"])
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="3")
    p.add_argument("--rho", default="1")
    p.add_argument("--cover", default="1", help="R of the counterexample")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--check-rho", dest="check_rho", help="radius to check (default: natural)")

    p = sub.add_parser("svg", help="window figure (d <= 3)")
    _add_params(p)
    _add_window(p)
    p.add_argument(
        "--rho",
        action="append",
        default=[],
        help="draw a ρ-circle family around the layer representatives (repeatable)",
    )
    p.add_argument("--eps", help="eps for --rho 2dR-eps")

    p = sub.add_parser("reproduce-table", help="layer table of a worked example")
    p.add_argument("kind", choices=["planar", "spatial"])

    sub.add_parser("discrepancies", help="report-only checks of documented claims")
    return parser


# =============================================================================
# Entry point
# =============================================================================


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings().with_max_points(args.max_points)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    override_settings(settings)

    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        text = COMMANDS[args.command](args)
    except (ParameterError, ValidationError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_INVALID
    except (InsufficientWindowError, ResourceCapError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_WINDOW
    except EngelSetError as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_INVALID
    _emit(text, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
