"""
Self-duality commands: selfdualize, classify2x2, verify-certificate
"""
import logging
import sys
from pathlib import Path

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import EXIT_CODES

from mrdkit.commands.common import (
    add_field_args, add_out_arg, context_summary, field_from_args, max_work,
    output_path, scan_cap, single_check_exit,
)
from mrdkit.components.report import Report
from mrdkit.utils import gabidulin, matfq, rankcode, selfdual
from mrdkit.utils.data_loader import load_certificate, save_certificate
from mrdkit.utils.errors import OddN

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("selfdualize", help="transport G_{n/2} to a self-dual MRD code")
    add_field_args(parser)
    parser.add_argument("--case", choices=("a", "b"), default="a",
                        help="a: (i, h, j) = (q^(n/2)+1, 1, 0); b: (1, q^(n/2)+1, n/2)")
    parser.add_argument("--emit-certificate", action="store_true", help="write the certificate file")
    add_out_arg(parser)
    parser.set_defaults(handler=run_selfdualize)

    parser = subparsers.add_parser("classify2x2", help="all self-dual MRD codes in F_q^{2x2}")
    add_field_args(parser, n_required=False)
    parser.add_argument("--no-equivalence", action="store_true",
                        help="skip the pairwise equivalence search")
    parser.set_defaults(handler=run_classify)

    parser = subparsers.add_parser("verify-certificate", help="re-check a self-dual certificate file")
    parser.add_argument("--in", dest="infile", type=Path, required=True)
    parser.set_defaults(handler=run_verify_certificate)


def _certificate_checks(report, cert, relations, cap):
    for name, ok in relations.items():
        report.add(name, f"certificate relation {name}", "pass" if ok else "fail", location="Theorem eqsd")
    n = cert.code.n
    report.check(
        "certificate-mrd",
        "transported code has minimum distance n/2 + 1",
        lambda: _half_distance(cert.code, n, cap),
        location="Theorem gabisd",
    )


def _half_distance(code, n, cap):
    d = rankcode.min_distance(code, cap)
    return d == n // 2 + 1 and rankcode.is_mrd(code, distance=d), {"d": d}


def run_selfdualize(args):
    ctx = field_from_args(args)
    report = Report(f"selfdualize --q {args.q} --n {args.n} --case {args.case}", context_summary(ctx))
    if ctx.n % 2:
        report.results["impossible"] = str(OddN(f"n = {ctx.n} is odd, so no code in k^(n x n) is self-dual"))
        return report, EXIT_CODES["impossible"]

    gctx = gabidulin.gab_ctx_new(ctx)
    outcome = selfdual.gabisd_selfdualize(gctx, args.case, cap=scan_cap(args))
    if isinstance(outcome, selfdual.Impossible):
        report.results["impossible"] = outcome.reason
        report.results["evidence"] = outcome.evidence
        logger.info("No self-dual code for q=%d n=%d: %s", ctx.q, ctx.n, outcome.reason)
        return report, EXIT_CODES["impossible"]

    report.results["params"] = outcome.params
    report.results["A_sym"] = matfq.to_ints(outcome.A_sym)
    report.results["B_sym"] = matfq.to_ints(outcome.B_sym)
    _certificate_checks(report, outcome, outcome.relations, max_work(args))
    if args.emit_certificate:
        path = output_path(args, f"certificate_q{ctx.q}_n{ctx.n}_{args.case}.json")
        save_certificate(outcome, path)
        report.results["file"] = str(path)
    return report, report.exit_code()


def run_classify(args):
    ctx = field_from_args(args, n=2)
    report = Report(f"classify2x2 --q {args.q}", context_summary(ctx))
    solutions = selfdual.two_by_two_solutions(ctx.field)
    codes = []

    def classify():
        codes.extend(selfdual.classify_2x2(
            ctx, check_equivalence=not args.no_equivalence, cap=max_work(args),
        ))
        expected = 2 * len(solutions) if ctx.q % 4 == 3 else 0
        return len(codes) == expected, {"count": len(codes), "solutions": len(solutions)}

    report.check(
        "classify-2x2",
        "self-dual MRD 2x2 codes: 2 per solution of a^2 + b^2 = -1 when q = 3 (mod 4), none otherwise",
        classify,
        location="Proposition dim2",
    )
    report.results["codes"] = [[matfq.to_ints(G) for G in code.gens] for code in codes]
    return report, single_check_exit(report)


def run_verify_certificate(args):
    cert = load_certificate(args.infile)
    report = Report(f"verify-certificate --in {args.infile}", context_summary(cert.ctx))
    report.results["params"] = cert.params
    _certificate_checks(report, cert, selfdual.verify_certificate(cert), max_work(args))
    return report, single_check_exit(report)
