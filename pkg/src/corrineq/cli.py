"""Command line entry point.

Exit codes: 0 completed with no anomalies, 1 counterexample certificate
emitted (search-fkg), 2 invalid input, 3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .algebra import format_rational, parse_rational
from .coefficients import b_check, base_case_certificates, f_check, verify_e200
from .errors import ConfigurationError, ContractError, DomainError
from .explorer import SearchConfig, corollary_batch, search_fkg, verify_lemma_batch
from .functional import e_delta, e_lambda_table, e_n
from .instances import dumps, instance_from_json, load, series_from_json
from .partitions import shape_table
from .series import check_nonnegativity, corollary_direct, corollary_via_en
from .spaces import ChainSpace, random_chain_space

EXIT_OK, EXIT_FOUND, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


def _emit(args, report: dict) -> None:
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    if path is None:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def cmd_partitions(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["n", "shape", "length", "count", "c_lambda"])
    for n in range(1, args.n + 1):
        for row in shape_table(n):
            w.writerow([n, row["shape"], row["length"], row["count"],
                        format_rational(row["c_lambda"])])
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_eval(args) -> int:
    inst = instance_from_json(load(args.instance))
    n = inst.n
    deltas = {}
    for mask in range(1, 1 << n):
        delta = [i + 1 for i in range(n) if mask >> i & 1]
        deltas["{" + ",".join(map(str, delta)) + "}"] = format_rational(e_delta(inst, delta))
    lambdas = {str(lam): format_rational(v) for lam, v in e_lambda_table(inst)}
    value = e_n(inst)
    report = {"n": n, "space": inst.space.kind, "E_delta": deltas, "E_lambda": lambdas,
              "E_n": format_rational(value),
              "zero_mass_points": inst.space.zero_mass_points()}
    _emit(args, report)
    _write_csv(args.csv, ["quantity", "value"],
               [[f"E_{k}", v] for k, v in deltas.items()]
               + [[f"E_{k}", v] for k, v in lambdas.items()] + [["E_n", report["E_n"]]])
    return EXIT_OK


def _parse_mu(text: str) -> tuple:
    return tuple(parse_rational(s) for s in text.split(","))


def cmd_coeffs(args) -> int:
    if args.mu:
        space = ChainSpace(_parse_mu(args.mu))
        if space.N != args.N:
            raise DomainError(f"--mu has {space.N} entries but --N is {args.N}")
    else:
        space = random_chain_space(args.N, args.seed)
    if args.mode == "F-check":
        body = f_check(space, args.n)
        ok = all(r["match"] for r in body.values())
    elif args.mode == "B-check":
        body = b_check(space, args.n)
        ok = all(r["match"] and r["nonnegative"] for r in body.values())
    else:
        rep = verify_e200(space, args.n)
        body = rep.to_json()
        ok = rep.match and rep.nonnegative
    report = {"mode": args.mode, "N": args.N, "n": args.n,
              "mu": [format_rational(m) for m in space.mu], "report": body,
              "base_case": base_case_certificates(space.mu)}
    _emit(args, report)
    if args.mode != "e200":
        _write_csv(args.csv, ["composition", "formula", "oracle", "match", "nonnegative"],
                   [[k, r["formula"], r["oracle"], r["match"], r["nonnegative"]]
                    for k, r in body.items()])
    else:
        _write_csv(args.csv, ["N", "n", "monomials", "match", "nonnegative"],
                   [[args.N, args.n, body["monomials"], body["match"], body["nonnegative"]]])
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_series(args) -> int:
    p = series_from_json(load(args.instance))
    T = args.T if args.T is not None else p.T
    out: dict = {"T": T}
    direct = via = None
    if args.route in ("direct", "both"):
        direct = corollary_direct(p, T)
        out["direct"] = direct.to_json()
    if args.route in ("en", "both"):
        via = corollary_via_en(p, T)
        out["via_en"] = via.to_json()
    s = direct if direct is not None else via
    verdict = check_nonnegativity(s)
    out["nonnegative"] = verdict.ok
    if not verdict.ok:
        out["first_negative"] = {"index": verdict.first_negative,
                                 "value": format_rational(verdict.value)}
    code = EXIT_OK
    if direct is not None and via is not None:
        out["routes_agree"] = direct == via
        if direct != via:
            code = EXIT_INCONSISTENT
    _emit(args, out)
    _write_csv(args.csv, ["k", "coefficient"], [[k, c] for k, c in enumerate(s.to_json())])
    return code


def _config(args, **kw) -> SearchConfig:
    cfg = SearchConfig(master_seed=args.seed, instance_count=args.count,
                       max_denominator=args.max_den,
                       time_budget_seconds=args.time_budget, **kw)
    return cfg


def cmd_verify_lemma(args) -> int:
    cfg = _config(args, n_range=(args.n_min, args.n_max), N_range=(args.N_min, args.N_max))
    if args.point_mass is not None:
        cfg.measure_mix = {"random": 1 - args.point_mass, "point_mass": args.point_mass}
    report = verify_lemma_batch(cfg)
    _emit(args, report)
    _write_csv(args.csv, ["n", "count", "min"],
               [[n, s["count"], s["min"]] for n, s in report["by_n"].items()])
    return EXIT_INCONSISTENT if report["violations"] else EXIT_OK


def cmd_search_fkg(args) -> int:
    cfg = _config(args, n_range=(args.n, args.n),
                  ground_size_range=(args.ground_min, args.ground_max),
                  include_n2=not args.no_n2)
    report = search_fkg(cfg)
    _emit(args, report)
    _write_csv(args.csv, ["rank", "index", "value"],
               [[r, c["provenance"]["index"], c["value"]]
                for r, c in enumerate(report["smallest"], start=1)])
    if report["n2_sanity"]["negatives"] or report["reduction_checks"]["mismatches"]:
        return EXIT_INCONSISTENT
    return EXIT_FOUND if report["violations"] else EXIT_OK


def cmd_corollary(args) -> int:
    cfg = _config(args, N_range=(1, args.N_max), ground_size_range=(1, args.ground_max),
                  T=args.T, lattice_count=args.lattice_count)
    report = corollary_batch(cfg)
    _emit(args, report)
    _write_csv(args.csv, ["population", "checked"],
               [[k, v] for k, v in report["checked"].items()])
    return EXIT_INCONSISTENT if report["status"] != "ok" else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--count", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="JSON report path")
    common.add_argument("--csv", default=argparse.SUPPRESS, help="CSV summary path")

    parser = argparse.ArgumentParser(prog="corrineq", parents=[common],
                                     description="Exact evaluation of the E_n correlation functional.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", parents=[common], help="shape/count/c_lambda table as CSV")
    p.add_argument("--n", type=int, default=5)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("eval", parents=[common], help="E_delta, E_lambda and E_n of an instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", parents=[common], help="coefficient formulas against brute force")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", help="comma-separated rationals; random when omitted")
    p.add_argument("--mode", choices=["F-check", "B-check", "e200"], default="e200")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("series", parents=[common], help="expand 1 - prod (1 - p)^mu")
    p.add_argument("instance")
    p.add_argument("--T", type=int)
    p.add_argument("--route", choices=["direct", "en", "both"], default="both")
    p.set_defaults(func=cmd_series)

    for name, func in (("verify-lemma", cmd_verify_lemma), ("search-fkg", cmd_search_fkg),
                       ("corollary", cmd_corollary)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--max-den", type=int, default=64)
        p.add_argument("--time-budget", type=int, default=0, help="seconds; 0 disables")
        p.set_defaults(func=func)
        if name == "verify-lemma":
            p.add_argument("--n-min", type=int, default=2)
            p.add_argument("--n-max", type=int, default=5)
            p.add_argument("--N-min", type=int, default=1)
            p.add_argument("--N-max", type=int, default=5)
            p.add_argument("--point-mass", type=float, help="fraction of point-mass measures")
        elif name == "search-fkg":
            p.add_argument("--n", type=int, default=3)
            p.add_argument("--ground-min", type=int, default=3)
            p.add_argument("--ground-max", type=int, default=3)
            p.add_argument("--no-n2", action="store_true", help="skip the n=2 sanity population")
        else:
            p.add_argument("--T", type=int, default=6)
            p.add_argument("--N-max", type=int, default=4)
            p.add_argument("--ground-max", type=int, default=3)
            p.add_argument("--lattice-count", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", 0), ("count", 100), ("out", None), ("csv", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (DomainError, ConfigurationError, ContractError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
