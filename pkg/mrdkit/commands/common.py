"""
Shared argument handling for mrdkit commands
"""
import sys
from pathlib import Path

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import DATA_DIR, EXIT_CODES, MAX_WORK, SYMMETRY_SCAN_CAP

from mrdkit.components.report import FAIL, SKIPPED
from mrdkit.utils.ffield import field_ctx_new, parse_prime_power


def _poly(text):
    """'1,0,1' -> (1, 0, 1), constant term first"""
    return tuple(int(c) for c in text.split(","))


def add_field_args(parser, n_required=True):
    parser.add_argument("--q", type=int, required=True, help="base field order (prime power)")
    if n_required:
        parser.add_argument("--n", type=int, required=True, help="extension degree / matrix size")
    parser.add_argument("--ext-poly", type=_poly, default=None,
                        help="defining polynomial of F_{q^n} over F_q, constant term first")
    parser.add_argument("--base-poly", type=_poly, default=None,
                        help="defining polynomial of F_q over F_p, constant term first")


def add_out_arg(parser):
    parser.add_argument("--out", type=Path, default=None, help=f"output file (default under {DATA_DIR})")


def field_from_args(args, n=None):
    p, e = parse_prime_power(args.q)
    return field_ctx_new(
        p, e, args.n if n is None else n,
        base_poly=args.base_poly, ext_poly=args.ext_poly,
    )


def context_summary(ctx):
    summary = ctx.describe()
    summary["ext_poly"] = list(ctx.ext_poly)
    return summary


def _explicit_work(args):
    return getattr(args, "max_work", None)


def max_work(args):
    """Work bound for distance, equivalence and isometry enumeration"""
    explicit = _explicit_work(args)
    return MAX_WORK if explicit is None else explicit


def scan_cap(args):
    """Bound on the (i, h, j) scan; an explicit --max-work replaces the default"""
    explicit = _explicit_work(args)
    return SYMMETRY_SCAN_CAP if explicit is None else explicit


def output_path(args, default_name):
    return args.out if args.out else DATA_DIR / default_name


def single_check_exit(report):
    """1 on any failure, 3 when a check was skipped for hitting a cap, else 0"""
    if any(entry.status == FAIL for entry in report.entries):
        return EXIT_CODES["fail"]
    if any(entry.status == SKIPPED and entry.reason.startswith("TooLarge") for entry in report.entries):
        return EXIT_CODES["cap"]
    return EXIT_CODES["pass"]
