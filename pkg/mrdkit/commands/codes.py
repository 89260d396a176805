"""
Commands acting on code files: dual, distance, is-mrd, is-selfdual
"""
from pathlib import Path

from mrdkit.commands.common import (
    add_out_arg, context_summary, max_work, output_path, single_check_exit,
)
from mrdkit.components.report import Report
from mrdkit.utils import rankcode
from mrdkit.utils.data_loader import load_code, save_code


def register(subparsers):
    dual = subparsers.add_parser("dual", help="write the dual of a code file")
    dual.add_argument("--in", dest="infile", type=Path, required=True)
    add_out_arg(dual)
    dual.set_defaults(handler=run_dual)

    for name, handler, text in (
        ("distance", run_distance, "minimum rank distance of a code file"),
        ("is-mrd", run_is_mrd, "check whether a code file is MRD"),
        ("is-selfdual", run_is_selfdual, "check whether a code file is self-dual"),
    ):
        parser = subparsers.add_parser(name, help=text)
        parser.add_argument("--in", dest="infile", type=Path, required=True)
        parser.set_defaults(handler=handler)


def _report(name, args, code):
    report = Report(f"{name} --in {args.infile}", context_summary(code.ctx))
    report.results.update({"m": code.m, "n": code.n, "dimension": code.dim})
    return report


def run_dual(args):
    code = load_code(args.infile)
    result = rankcode.dual(code)
    path = output_path(args, f"{Path(args.infile).stem}_dual.json")
    save_code(result, path)

    report = _report("dual", args, code)
    report.results.update({"dual_dimension": result.dim, "file": str(path)})
    report.check(
        "dual-dimension",
        "dim(C) + dim(C^perp) = mn",
        lambda: code.dim + result.dim == code.m * code.n,
    )
    return report, single_check_exit(report)


def run_distance(args):
    code = load_code(args.infile)
    report = _report("distance", args, code)

    def compute():
        d = rankcode.min_distance(code, max_work(args))
        report.results["min_distance"] = d
        return code.dim <= code.m * (code.n - d + 1), {"d": d}

    report.check("delsarte-bound", "dim(C) <= m (n - d + 1)", compute)
    return report, single_check_exit(report)


def run_is_mrd(args):
    code = load_code(args.infile)
    report = _report("is-mrd", args, code)
    report.check(
        "is-mrd",
        "dim(C) = m (n - d + 1)",
        lambda: rankcode.is_mrd(code, max_work(args)),
    )
    return report, single_check_exit(report)


def run_is_selfdual(args):
    code = load_code(args.infile)
    report = _report("is-selfdual", args, code)
    report.check("is-selfdual", "C = C^perp", lambda: rankcode.is_self_dual(code))
    return report, single_check_exit(report)
