"""
automorphisms: generators and order of Aut(G_{l,Gamma})
"""
from mrdkit.commands.common import (
    add_field_args, context_summary, field_from_args, max_work, single_check_exit,
)
from mrdkit.components.report import Report
from mrdkit.utils import gabidulin, matfq, rankcode


def register(subparsers):
    parser = subparsers.add_parser("automorphisms", help="automorphism group of a Gabidulin code")
    add_field_args(parser)
    parser.add_argument("--ell", type=int, default=1)
    parser.add_argument("--exhaustive", action="store_true",
                        help="also count every equivalence of the code onto itself")
    parser.set_defaults(handler=run)


def map_to_dict(equiv):
    return {"kind": equiv.kind, "X": matfq.to_ints(equiv.X), "Y": matfq.to_ints(equiv.Y)}


def run(args):
    ctx = field_from_args(args)
    gctx = gabidulin.gab_ctx_new(ctx)
    report = Report(f"automorphisms --q {args.q} --n {args.n} --ell {args.ell}", context_summary(ctx))

    order = gabidulin.aut_order(gctx, args.ell)
    gens = gabidulin.aut_generators(gctx, args.ell)
    report.results["order"] = order
    report.results["generators"] = [map_to_dict(g) for g in gens]

    code = gabidulin.gab_code(gctx, args.ell)
    report.check(
        "generators-fix-code",
        "kappa_{S,I}, kappa_{I,S}, kappa_{A,A^-1} and tau_{T^-1,T A^(l-1)} fix G_l",
        lambda: all(rankcode.apply(g, code) == code for g in gens),
        location="Theorem properaut; Corollary fullaut",
    )
    report.check(
        "improper-swap",
        "tau_{T^-1,T A^(l-1)} maps KK A^j onto KK A^(l-1-j)",
        lambda: gabidulin.verify_improper_swap(gctx, args.ell),
        location="Corollary fullaut, proof",
    )
    if args.exhaustive:
        report.check(
            "aut-order-exhaustive",
            "number of self-equivalences up to scalars equals 2n(q^n-1)^2/(q-1)",
            lambda: exhaustive_count(code, order, max_work(args)),
            location="Corollary fullaut",
        )
    return report, single_check_exit(report)


def exhaustive_count(code, order, cap):
    maps = rankcode.brute_equivalences(code, code, improper_too=True, cap=cap)
    improper = sum(1 for g in maps if g.kind == rankcode.IMPROPER)
    return len(maps) == order, {"count": len(maps), "improper": improper, "formula": order}
