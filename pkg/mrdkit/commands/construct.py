"""
construct: write the Gabidulin code G_{l,Gamma} to a code file
"""
import logging

from mrdkit.commands.common import (
    add_field_args, add_out_arg, context_summary, field_from_args, max_work,
    output_path,
)
from mrdkit.components.report import Report
from mrdkit.utils import gabidulin, rankcode
from mrdkit.utils.data_loader import save_code

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("construct", help="build a Gabidulin code and write it to a file")
    add_field_args(parser)
    parser.add_argument("--ell", type=int, default=None, help="code parameter l (default max(1, n // 2))")
    add_out_arg(parser)
    parser.set_defaults(handler=run)


def run(args):
    ctx = field_from_args(args)
    ell = args.ell if args.ell is not None else max(1, ctx.n // 2)
    gctx = gabidulin.gab_ctx_new(ctx)
    code = gabidulin.gab_code(gctx, ell)
    logger.info("Built G_%d for q=%d n=%d, dimension %d", ell, ctx.q, ctx.n, code.dim)

    path = output_path(args, f"gabidulin_q{ctx.q}_n{ctx.n}_l{ell}.json")
    save_code(code, path)

    report = Report(f"construct --q {args.q} --n {args.n} --ell {ell}", context_summary(ctx))
    report.results.update({"ell": ell, "dimension": code.dim, "file": str(path)})
    report.results.update(gctx.describe())
    report.check(
        "min-distance",
        "minimum rank of a nonzero codeword equals n - l + 1",
        lambda: _distance(code, ell, max_work(args), report),
    )
    return report, report.exit_code()


def _distance(code, ell, cap, report):
    d = rankcode.min_distance(code, cap)
    report.results["min_distance"] = d
    return d == code.n - ell + 1, {"d": d}
