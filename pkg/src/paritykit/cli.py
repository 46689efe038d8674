"""Command-line front end.

Exit codes: 0 success (relation holds or nothing to report), 1 relation
violated or congruence Failed, 2 usage error, 3 computational limit exceeded.
Diagnostics go to stderr; reports go to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from .arith import is_prime
from .congruence import CongruenceStatus, check_congruence
from .errors import ComputationLimitError
from .family import member
from .io import emit_report, parse_curve_file, report_object
from .local import bad_reduction_data, conductor, is_supersingular, tate_local
from .parity import deduce_rank, parity_relation
from .weierstrass import minimal_model, parse_curve

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _odd_prime(value: int) -> int:
    if value < 3 or value % 2 == 0 or not is_prime(value):
        raise ValueError("p must be an odd prime, got %d" % value)
    return value


def _match_rank(records, curve):
    for rec in records:
        if rec.curve == curve:
            return rec
    target = minimal_model(curve)[0]
    for rec in records:
        if minimal_model(rec.curve)[0] == target:
            return rec
    return None


def _fmt_set(values) -> str:
    return "{%s}" % ", ".join(str(v) for v in sorted(values))


def _print_text_report(report, out) -> None:
    c1, c2 = report.curves
    out.write("E1 = %s  (%s, N = %d)\n" % (c1, report.labels[0], conductor(c1)))
    out.write("E2 = %s  (%s, N = %d)\n" % (c2, report.labels[1], conductor(c2)))
    out.write("p = %d\n" % report.p)
    v = report.congruence
    if v is not None:
        out.write(
            "congruence: %s (level %s, Sturm bound %s, %d primes compared)\n"
            % (v.status, v.level, v.bound, v.checked_primes)
        )
        if v.witness is not None:
            out.write("  witness: ell = %d, traces %d vs %d\n" % v.witness)
    else:
        out.write("congruence: assumed by caller\n")
    out.write("sigma  = %s\n" % _fmt_set(report.sigma_data.sigma))
    out.write("sigma0 = %s\n" % _fmt_set(report.sigma_data.sigma0))
    for ell in report.sigma_data.sigma0:
        ev = report.sigma_data.evidence[ell]
        for tag, reasons in (("E1", ev.e1_reasons), ("E2", ev.e2_reasons)):
            for reason in reasons:
                out.write("  %d drops for %s: %s\n" % (ell, tag, reason))
    for ell, ev in report.sigma_data.evidence.items():
        for warning in ev.warnings:
            out.write("  warning at %d: %s\n" % (ell, warning))
        if ev.undetermined:
            out.write("  %d: sigma0 membership undetermined (additive at p = 3)\n" % ell)
    out.write("S1 = %s, S2 = %s\n" % (_fmt_set(report.s1), _fmt_set(report.s2)))
    r1, r2 = report.ranks
    out.write(
        "ranks: E1 %s, E2 %s\n"
        % tuple("unknown" if r is None else str(r) for r in (r1, r2))
    )
    if report.relation_holds is not None:
        out.write(
            "relation: r1 + |S1| = %d, r2 + |S2| = %d (mod 2) -> %s\n"
            % (
                (r1 + len(report.s1)) % 2,
                (r2 + len(report.s2)) % 2,
                "holds" if report.relation_holds else "VIOLATED",
            )
        )
    if report.deduced is not None:
        d = report.deduced
        out.write("deduced rank of %s: parity %s" % (d.curve, d.parity))
        if d.exact is not None:
            out.write(", exact value %d" % d.exact)
        elif d.candidates is not None:
            out.write(", candidates %s" % _fmt_set(d.candidates))
        out.write("\n")
    for h in report.hypotheses:
        out.write("hypothesis [%s]: %s\n" % (h.id, h.detail))


def _cmd_analyze(args) -> int:
    p = _odd_prime(args.p)
    c1, c2 = parse_curve(args.e1), parse_curve(args.e2)
    rank1, rank2 = args.rank1, args.rank2
    labels = ["E1", "E2"]
    if args.ranks_file:
        with open(args.ranks_file, encoding="utf-8") as fh:
            records = parse_curve_file(fh)
        for i, c in enumerate((c1, c2)):
            rec = _match_rank(records, c)
            if rec is not None:
                labels[i] = rec.label
                if (rank1, rank2)[i] is None:
                    if i == 0:
                        rank1 = rec.rank
                    else:
                        rank2 = rec.rank
    if args.rank2_bound is not None and rank2 is not None:
        raise ValueError("--rank2-bound only applies when the rank of E2 is unknown")
    verdict = check_congruence(c1, c2, p)
    print("congruence verdict: %s" % verdict.caveat, file=sys.stderr)
    if verdict.status is not CongruenceStatus.VERIFIED and not args.assume_congruent:
        if verdict.witness is not None:
            print(
                "congruence Failed: a_%d = %d vs %d (mod %d)"
                % (verdict.witness[0], verdict.witness[1], verdict.witness[2], p),
                file=sys.stderr,
            )
            return EXIT_VIOLATED
        print("congruence Inconclusive; rerun with --assume-congruent to proceed", file=sys.stderr)
        return EXIT_LIMIT
    report = parity_relation(
        c1,
        c2,
        p,
        rank1=rank1,
        rank2=rank2,
        verdict=verdict,
        assume_congruent=args.assume_congruent,
        labels=tuple(labels),
    )
    if (rank1 is None) != (rank2 is None):
        known = rank1 if rank1 is not None else rank2
        bound = args.rank2_bound if rank2 is None else None
        try:
            deduced = deduce_rank(known, len(report.s1), len(report.s2), bound)
        except ValueError as exc:
            print("rank deduction: %s" % exc, file=sys.stderr)
            return EXIT_VIOLATED
        report.deduced = replace(deduced, curve="e2" if rank2 is None else "e1")
    if args.json:
        sys.stdout.write(emit_report(report))
    else:
        _print_text_report(report, sys.stdout)
    return EXIT_VIOLATED if report.relation_holds is False else EXIT_OK


def _cmd_congruent(args) -> int:
    p = _odd_prime(args.p)
    c1, c2 = parse_curve(args.e1), parse_curve(args.e2)
    verdict = check_congruence(c1, c2, p)
    if args.json:
        obj = {
            "status": str(verdict.status),
            "level": verdict.level,
            "bound": verdict.bound,
            "checked_primes": verdict.checked_primes,
            "witness": list(verdict.witness) if verdict.witness else None,
            "caveat": verdict.caveat,
        }
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(
            "%s (level %s, Sturm bound %s, %d primes compared)\n"
            % (verdict.status, verdict.level, verdict.bound, verdict.checked_primes)
        )
        if verdict.witness is not None:
            sys.stdout.write("witness: ell = %d, traces %d vs %d\n" % verdict.witness)
        sys.stdout.write("%s\n" % verdict.caveat)
    if verdict.status is CongruenceStatus.VERIFIED:
        return EXIT_OK
    if verdict.status is CongruenceStatus.FAILED:
        return EXIT_VIOLATED
    return EXIT_LIMIT


def _local_row(d) -> dict:
    return {
        "ell": d.ell,
        "type": str(d.red_type),
        "cond_exp": d.cond_exp,
        "v_disc": d.v_disc,
        "trace": d.trace,
        "kodaira": d.kodaira,
    }


def _cmd_local_info(args) -> int:
    c = parse_curve(args.curve)
    if args.ell is not None:
        rows = [tate_local(c, args.ell)]
        n = None
    else:
        rows = bad_reduction_data(c)
        n = conductor(c)
    if args.json:
        obj = {"curve": c.coefficients(), "conductor": n, "local": [_local_row(d) for d in rows]}
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_OK
    if n is not None:
        sys.stdout.write("conductor %d\n" % n)
    for d in rows:
        sys.stdout.write(
            "ell %d: %s, cond_exp %d, v_disc %d, trace %d, kodaira %s\n"
            % (d.ell, d.red_type, d.cond_exp, d.v_disc, d.trace, d.kodaira)
        )
    return EXIT_OK


def _cmd_family(args) -> int:
    c = member(args.D, args.t)
    if args.json:
        json.dump({"D": args.D, "t": args.t, "coefficients": [str(a) for a in c.coefficients()]}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write("%s\n" % c)
    return EXIT_OK


def _cmd_scan(args) -> int:
    p = _odd_prime(args.p)
    with open(args.file, encoding="utf-8") as fh:
        records = parse_curve_file(fh)
    eligible = []
    for rec in records:
        try:
            ok = is_supersingular(rec.curve, p)
        except ValueError as exc:
            print("skipping %s: %s" % (rec.label, exc), file=sys.stderr)
            continue
        if ok:
            eligible.append(rec)
        else:
            print("skipping %s: not supersingular at %d" % (rec.label, p), file=sys.stderr)
    pairs = [(a, b) for i, a in enumerate(eligible) for b in eligible[i + 1 :]]

    def work(pair):
        a, b = pair
        try:
            verdict = check_congruence(a.curve, b.curve, p)
            if verdict.status is not CongruenceStatus.VERIFIED:
                return ("skip", a, b, verdict, None)
            report = parity_relation(
                a.curve,
                b.curve,
                p,
                rank1=a.rank,
                rank2=b.rank,
                verdict=verdict,
                labels=(a.label, b.label),
            )
            if (a.rank is None) != (b.rank is None):
                known = a.rank if a.rank is not None else b.rank
                deduced = deduce_rank(known, len(report.s1), len(report.s2))
                report.deduced = replace(deduced, curve="e2" if b.rank is None else "e1")
            return ("report", a, b, verdict, report)
        except (ComputationLimitError, ValueError) as exc:
            return ("error", a, b, exc, None)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(work, pairs))
    else:
        results = [work(pair) for pair in pairs]
    code = EXIT_OK
    emitted = []
    for kind, a, b, info, report in results:
        if kind == "skip":
            print("%s / %s: congruence %s" % (a.label, b.label, info.status), file=sys.stderr)
        elif kind == "error":
            print("%s / %s: %s" % (a.label, b.label, info), file=sys.stderr)
        else:
            emitted.append(report)
            if report.relation_holds is False:
                code = EXIT_VIOLATED
    if args.json:
        from .io import _clamp

        json.dump([_clamp(report_object(r)) for r in emitted], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for i, report in enumerate(emitted):
            if i:
                sys.stdout.write("\n")
            _print_text_report(report, sys.stdout)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritykit",
        description="Congruence and rank-parity analysis for elliptic curves "
        "supersingular at an odd prime.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="full pipeline for one pair of curves")
    an.add_argument("--e1", required=True, help="curve literal [a1,a2,a3,a4,a6]")
    an.add_argument("--e2", required=True, help="curve literal [a1,a2,a3,a4,a6]")
    an.add_argument("-p", type=int, required=True, dest="p", help="odd supersingular prime")
    an.add_argument("--rank1", type=int, default=None)
    an.add_argument("--rank2", type=int, default=None)
    an.add_argument("--rank2-bound", type=int, default=None, dest="rank2_bound")
    an.add_argument("--assume-congruent", action="store_true")
    an.add_argument("--ranks-file", default=None)
    an.add_argument("--json", action="store_true")
    an.set_defaults(func=_cmd_analyze)

    co = sub.add_parser("congruent", help="congruence check only")
    co.add_argument("--e1", required=True)
    co.add_argument("--e2", required=True)
    co.add_argument("-p", type=int, required=True, dest="p")
    co.add_argument("--json", action="store_true")
    co.set_defaults(func=_cmd_congruent)

    li = sub.add_parser("local-info", help="reduction data for one curve")
    li.add_argument("--curve", required=True)
    li.add_argument("--ell", type=int, default=None)
    li.add_argument("--json", action="store_true")
    li.set_defaults(func=_cmd_local_info)

    fa = sub.add_parser("family", help="print a family member")
    fa.add_argument("--D", type=int, required=True)
    fa.add_argument("--t", type=int, required=True)
    fa.add_argument("--json", action="store_true")
    fa.set_defaults(func=_cmd_family)

    sc = sub.add_parser("scan", help="all-pairs congruence scan over a curve file")
    sc.add_argument("--file", required=True)
    sc.add_argument("-p", type=int, required=True, dest="p")
    sc.add_argument("--jobs", type=int, default=1)
    sc.add_argument("--json", action="store_true")
    sc.set_defaults(func=_cmd_scan)
    return parser


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ComputationLimitError as exc:
        print("computational limit: %s" % exc, file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
