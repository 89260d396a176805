"""
mrdkit - Main Entry Point
Command-line front end for self-dual MRD codes and Gabidulin codes

Exit codes: 0 all checks pass, 1 a check failed or the request is
mathematically impossible, 2 bad arguments or unreadable files, 3 a
resource cap was hit.
"""
import argparse
import logging
import os
import sys
from pathlib import Path

# Add parent directory to path
sys.path.append(str(Path(__file__).resolve().parent.parent))

from config.settings import DEFAULT_FORMAT, EXIT_CODES, MAX_WORK_ENV

from mrdkit.commands import automorphisms, codes, construct, selfdualize, verify_theorems
from mrdkit.utils.errors import InvariantError, MrdkitError, TooLarge

logger = logging.getLogger("mrdkit")

COMMANDS = (construct, codes, automorphisms, selfdualize, verify_theorems)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mrdkit",
        description="Construct and verify Gabidulin and self-dual MRD codes over finite fields.",
    )
    parser.add_argument("--format", choices=("text", "json"), default=DEFAULT_FORMAT)
    parser.add_argument("--canonical", action="store_true",
                        help="omit timings so identical runs print identical output")
    parser.add_argument("--max-work", type=int, default=None,
                        help="bound on exhaustive enumeration work (env MRDKIT_MAX_WORK)")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug logging")

    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def setup_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def resolve_max_work(args):
    """
    Fill args.max_work from the environment when --max-work is absent

    Raises:
        ValueError: non-integer or negative work bound
    """
    if args.max_work is None:
        raw = os.environ.get(MAX_WORK_ENV)
        if raw is None:
            return
        try:
            args.max_work = int(raw)
        except ValueError:
            raise ValueError(f"{MAX_WORK_ENV} must be an integer, got {raw!r}") from None
    if args.max_work < 0:
        raise ValueError(f"work bound must be non-negative, got {args.max_work}")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CODES["usage"] if e.code else EXIT_CODES["pass"]
    setup_logging(args.verbose)

    try:
        resolve_max_work(args)
        report, code = args.handler(args)
    except TooLarge as e:
        logger.error("Resource cap hit: %s", e)
        return EXIT_CODES["cap"]
    except InvariantError as e:
        logger.error("Invariant violated: %s", e)
        return EXIT_CODES["fail"]
    except (MrdkitError, OSError, ValueError, KeyError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_CODES["usage"]

    print(report.render(args.format, args.canonical))
    return code


if __name__ == "__main__":
    sys.exit(main())
