"""Command line front end.

Exit codes: 0 success, 2 usage error, 3 infeasible (not enough shares,
rates outside the region, entropy beyond the secrecy rate; nothing is
written), 4 verification failure (a leak or inconsistent shares),
5 unreadable or malformed files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import (BudgetExceededError, DecodeFailureError,
                     InsufficientSharesError, ParameterError,
                     RegionViolationError, ShareFormatError, SmdcError)
from .fields import FieldSpec, _is_prime, binary8_field, prime_field
from .multilevel import SmdcParams, plan as multilevel_plan
from .region import (corner_points, min_sum_rate, region,
                     smdc_min_sum_rate, superposition_region,
                     vertices_brute_force, violated_subsets)
from .shareio import (join_files, read_share, split_files, symbols_per_byte,
                      write_share, _atomic_write)
from .single_level import SsdcParams, symmetric_layout
from .verify import (VerifierBudget, code_for_layout, code_for_multilevel,
                     verification_report)
from .wiretap import (WiretapNetwork, achievable_secrecy_rate,
                      admissible_by_separation, export_edge_list,
                      mincut_to_user, mincut_to_wiretap)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY_FAILED = 4
EXIT_IO = 5


def _parse_field(text: str) -> FieldSpec:
    if text in ("gf256", "binary8"):
        return binary8_field()
    try:
        p = int(text)
    except ValueError:
        raise ParameterError(
            f"field must be 'gf256' or a prime up to 251, got {text!r}")
    if not (_is_prime(p) and p <= 251):
        raise ParameterError(
            f"prime share fields must satisfy p <= 251, got {p}")
    return prime_field(p)


def _parse_fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"cannot read {text!r} as a list of rationals")


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParameterError(f"cannot read {text!r} as a list of integers")


def _smallest_prime_above(n: int) -> int:
    p = max(2, n + 1)
    while not _is_prime(p):
        p += 1
    return p


def _refuse_existing(paths) -> None:
    for path in paths:
        if os.path.exists(path):
            raise ParameterError(
                f"{path} already exists; refusing to overwrite")


def _pair(v: Fraction) -> list[int]:
    """Exact rational as [numerator, denominator] for JSON reports."""
    v = Fraction(v)
    return [v.numerator, v.denominator]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smdc",
        description="Split files into shares that survive erasures and "
                    "reveal nothing to a bounded set of taps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_split = sub.add_parser(
        "split", help="encode source files into one share per encoder")
    p_split.add_argument("--length", "--L", type=int, required=True,
                         help="number of encoders L")
    p_split.add_argument("--wiretap", "--N", type=int, required=True,
                         help="tap tolerance N; expects L-N source files")
    p_split.add_argument("--field", default="gf256",
                         help="gf256 (default) or a prime up to 251")
    p_split.add_argument("--seed", type=int, default=None,
                         help="fix the key stream; ONLY for reproducible "
                              "tests, deterministic keys void all secrecy")
    p_split.add_argument("--out-dir", default=".",
                         help="where share files go")
    p_split.add_argument("sources", nargs="+",
                         help="source files, most important first")

    p_join = sub.add_parser(
        "join", help="recover the leading sources from share files")
    p_join.add_argument("--out-dir", default=".",
                        help="where recovered files go")
    p_join.add_argument("shares", nargs="+", help="share files")

    p_region = sub.add_parser(
        "region", help="admissible rate region as a JSON report")
    p_region.add_argument("--length", "--L", type=int, required=True)
    p_region.add_argument("--wiretap", "--N", type=int, required=True)
    p_region.add_argument("--threshold", "--m", type=int, default=None,
                          help="single level: outputs needed to reconstruct; "
                               "omit for the combined multi-source region")
    p_region.add_argument("--entropies", "--entropy", default=None,
                          help="comma separated source entropies (rationals); "
                               "one value with --threshold (default 1), "
                               "L - N values without")
    p_region.add_argument("--rates", default=None,
                          help="comma separated rates to test for membership")
    p_region.add_argument("--corners", action="store_true",
                          help="enumerate extreme points in the combined "
                               "region (single level reports them always)")

    p_wn = sub.add_parser(
        "wn", help="cut and secrecy analysis of the induced network, as JSON")
    p_wn.add_argument("--length", "--L", type=int, required=True)
    p_wn.add_argument("--wiretap", "--N", type=int, required=True)
    p_wn.add_argument("--threshold", "--m", type=int, required=True)
    p_wn.add_argument("--rates", required=True,
                      help="comma separated edge rates")
    p_wn.add_argument("--entropy", default=None,
                      help="test whether this source entropy is supportable")
    p_wn.add_argument("--flow", action="store_true",
                      help="cross-check every cut with an explicit max flow")
    p_wn.add_argument("--edges", action="store_true",
                      help="include the edge list")

    p_verify = sub.add_parser(
        "verify", help="exhaustively verify a small instance end to end")
    p_verify.add_argument("--length", "--L", type=int, required=True)
    p_verify.add_argument("--wiretap", "--N", type=int, required=True)
    p_verify.add_argument("--source-lengths", default=None,
                          help="comma separated symbol counts, one per source")
    p_verify.add_argument("--threshold", "--m", type=int, default=None,
                          help="verify one single-level code instead; the "
                               "message is threshold - wiretap symbols")
    p_verify.add_argument("--field", default=None,
                          help="field order; default: smallest prime above L")
    p_verify.add_argument("--budget", type=int, default=250_000,
                          help="largest outcome count to enumerate")

    return parser


# --- commands ------------------------------------------------------------------


def _cmd_split(args) -> int:
    field = _parse_field(args.field)
    datas = []
    for path in args.sources:
        with open(path, "rb") as fh:
            datas.append(fh.read())
    shares = split_files(field, args.length, args.wiretap, datas,
                         source=args.seed)
    paths = [os.path.join(args.out_dir, f"share_{s.encoder}.smdc")
             for s in shares]
    _refuse_existing(paths)
    os.makedirs(args.out_dir, exist_ok=True)
    for path, share in zip(paths, shares):
        write_share(path, share)
        print(f"wrote {path} ({sum(len(p) for p in share.payloads)} symbols)")
    t = symbols_per_byte(field)
    if t > 1:
        print(f"note: GF({field.order}) stores {t} symbols per byte")
    return EXIT_OK


def _cmd_join(args) -> int:
    shares = [read_share(path) for path in args.shares]
    recovered = join_files(shares)
    paths = [os.path.join(args.out_dir, f"source_{k + 1}.bin")
             for k in range(len(recovered))]
    _refuse_existing(paths)
    os.makedirs(args.out_dir, exist_ok=True)
    for path, data in zip(paths, recovered):
        _atomic_write(path, data)
        print(f"recovered {path} ({len(data)} bytes)")
    skipped = (shares[0].length - shares[0].wiretap) - len(recovered)
    if skipped:
        print(f"{skipped} lower priority source(s) need more shares")
    return EXIT_OK


def _cmd_region(args) -> int:
    params: dict = {"length": args.length, "wiretap": args.wiretap}
    if args.threshold is not None:
        k = args.threshold - args.wiretap
        if k < 1:
            raise ParameterError("need threshold > wiretap")
        hs = _parse_fractions(args.entropies or "1")
        if len(hs) != 1:
            raise ParameterError("a single level takes one entropy")
        system = region(args.length, k, hs[0]).canonical()
        params["threshold"] = args.threshold
        params["entropy"] = _pair(hs[0])
        corners = corner_points(args.length, k, hs[0])
        total = min_sum_rate(args.length, k, hs[0])
    else:
        count = args.length - args.wiretap
        if args.entropies is None:
            raise ParameterError(
                f"the combined region needs --entropies with {count} values")
        hs = _parse_fractions(args.entropies)
        if len(hs) != count:
            raise ParameterError(f"need {count} entropies, got {len(hs)}")
        system = superposition_region(args.length, args.wiretap, hs)
        params["entropies"] = [_pair(h) for h in hs]
        corners = vertices_brute_force(system) if args.corners else None
        total = smdc_min_sum_rate(args.length, args.wiretap, hs)

    report = {
        "parameters": params,
        "variables": list(system.var_names),
        "inequalities": system.render().splitlines(),
        "system": system.to_json_dict(),
        "min_sum_rate": _pair(total),
        "corner_points": None if corners is None else
            [[_pair(v) for v in point] for point in corners],
    }
    outside = False
    if args.rates is not None:
        rates = _parse_fractions(args.rates)
        if len(rates) != args.length:
            raise ParameterError(f"need {args.length} rates")
        bad = violated_subsets(system, rates)
        outside = bool(bad)
        report["membership"] = {
            "rates": [_pair(r) for r in rates],
            "inside": not bad,
            "violated_subsets": [list(s) for s in bad],
        }
    print(json.dumps(report, indent=2))
    return EXIT_INFEASIBLE if outside else EXIT_OK


def _cmd_wn(args) -> int:
    rates = _parse_fractions(args.rates)
    if len(rates) != args.length:
        raise ParameterError(f"need {args.length} rates")
    net = WiretapNetwork(args.length, args.wiretap, args.threshold,
                         tuple(rates))

    def cut(fn, subset) -> Fraction:
        value = fn(net, subset)
        if args.flow and fn(net, subset, via_flow=True) != value:
            raise SmdcError(f"flow disagrees with the cut at {subset}")
        return value

    user_cuts = {u: cut(mincut_to_user, u) for u in net.users()}
    tap_cuts = {a: cut(mincut_to_wiretap, a) for a in net.wiretap_sets()}
    secrecy = achievable_secrecy_rate(net)
    report = {
        "parameters": {"length": args.length, "wiretap": args.wiretap,
                       "threshold": args.threshold,
                       "rates": [_pair(r) for r in rates]},
        "user_cuts": {",".join(map(str, u)): _pair(v)
                      for u, v in user_cuts.items()},
        "wiretap_cuts": {",".join(map(str, a)): _pair(v)
                         for a, v in tap_cuts.items()},
        "weakest_user_cut": _pair(min(user_cuts.values())),
        "strongest_wiretap_cut": _pair(max(tap_cuts.values())
                                       if tap_cuts else Fraction(0)),
        "secrecy_rate": _pair(secrecy),
    }
    code = EXIT_OK
    if args.entropy is not None:
        entropy = Fraction(args.entropy)
        supported = admissible_by_separation(net, entropy)
        report["supports_entropy"] = {"entropy": _pair(entropy),
                                      "ok": supported}
        if not supported:
            code = EXIT_INFEASIBLE
    if args.edges:
        report["edges"] = export_edge_list(net).splitlines()
    print(json.dumps(report, indent=2))
    return code


def _cmd_verify(args) -> int:
    if (args.threshold is None) == (args.source_lengths is None):
        raise ParameterError(
            "give either --source-lengths or --threshold, not both")
    if args.field is None:
        field = prime_field(_smallest_prime_above(args.length))
    else:
        field = _parse_field(args.field)
    if args.threshold is not None:
        k = args.threshold - args.wiretap
        if k < 1:
            raise ParameterError("need threshold > wiretap")
        layout = symmetric_layout(
            SsdcParams(field, args.length, args.wiretap, args.threshold), k)
        code = code_for_layout(layout)
    else:
        lengths = _parse_ints(args.source_lengths)
        params = SmdcParams(field, args.length, args.wiretap, tuple(lengths))
        code = code_for_multilevel(multilevel_plan(params))
    report = verification_report(code, VerifierBudget(args.budget))
    print(json.dumps(report, indent=2))
    return EXIT_OK if report["ok"] else EXIT_VERIFY_FAILED


def entry(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "split": _cmd_split,
        "join": _cmd_join,
        "region": _cmd_region,
        "wn": _cmd_wn,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (InsufficientSharesError, RegionViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DecodeFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (ShareFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SmdcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(entry())


if __name__ == "__main__":
    main()
