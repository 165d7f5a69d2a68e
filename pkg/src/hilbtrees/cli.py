"""Command line entry point: ``hilbtrees <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import HilbtreesError, ReplayDivergence, SearchExhausted
from .exactfield import DEFAULT_PRIME
from .experiments import (ExperimentReport, WitnessCertificate, check_assertion_H,
                          check_assertion_R, load_certificate, oracle_check,
                          question_qbe2_evidence, verify_prop_be1, verify_prop_fe1,
                          verify_prop_fe2_genus0, verify_theorem_be2, verify_theorem_eb1)

OK_OUTCOMES = {"witness found", "exception table reproduced", "defect reproduced",
               "claims hold", "match"}


def _primes(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--attempts", type=int, default=100)
    sp.add_argument("--out", type=Path)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--t-min", type=int, default=None)
    sp.add_argument("--t-max", type=int, default=None)
    sp.add_argument("--primes", type=_primes, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hilbtrees", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("be2", help="witness search for trees on a cubic surface")
    sp.add_argument("--d-min", type=int, default=1)
    sp.add_argument("--d-max", type=int, default=12)
    sp.add_argument("--families", default="bamboo,gallery,random")
    _common(sp)

    sp = sub.add_parser("qbe2", help="bamboo-only evidence mode")
    sp.add_argument("--d-min", type=int, default=1)
    sp.add_argument("--d-max", type=int, default=10)
    _common(sp)

    sp = sub.add_parser("eb1", help="bamboo witness on a quadric of given rank")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    _common(sp)

    sp = sub.add_parser("assert-r", help="critical-degree bamboo on a smooth quadric")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--allow-n3", action="store_true")
    _common(sp)

    sp = sub.add_parser("assert-h", help="critical-degree tree on a cubic surface")
    sp.add_argument("--t", type=int, required=True)
    _common(sp)

    sp = sub.add_parser("be1-bigraded", help="bidegree sweep on the Segre quadric")
    sp.add_argument("--a-max", type=int, default=4)
    sp.add_argument("--b-max", type=int, default=4)
    sp.add_argument("--d-max", type=int, default=12)
    sp.add_argument("--types", type=int, default=5)
    _common(sp)

    sp = sub.add_parser("fe1", help="range checks for trees and a degree k hypersurface")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--modes", default="random,multiple")
    _common(sp)

    sp = sub.add_parser("fe2-g0", help="range checks for rational curves")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--samples", type=int, default=10)
    _common(sp)

    sp = sub.add_parser("replay", help="recompute a stored certificate")
    sp.add_argument("path", type=Path)
    _common(sp)

    sp = sub.add_parser("oracle-check", help="divisor computation against point evaluation")
    sp.add_argument("--count", type=int, default=100)
    _common(sp)
    return ap


def _certificate_csv(cert: WitnessCertificate) -> str:
    out = io.StringIO()
    rows = cert.profile.to_dict()["rows"]
    w = csv.DictWriter(out, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    return out.getvalue()


def _emit(obj, args) -> None:
    if isinstance(obj, WitnessCertificate):
        text = obj.to_json() if args.format == "json" else _certificate_csv(obj)
    else:
        text = obj.to_json() if args.format == "json" else obj.to_csv()
    if args.out:
        args.out.write_text(text)
        if isinstance(obj, ExperimentReport) and args.format == "json":
            print(json.dumps(obj.summary()))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _tspan(args, default_min=1):
    return (args.t_min if args.t_min is not None else default_min), args.t_max


def run(args) -> object:
    c = args.command
    t_min, t_max = _tspan(args)
    if c == "be2":
        return verify_theorem_be2(range(args.d_min, args.d_max + 1), args.attempts, args.seed,
                                  args.prime, args.primes, tuple(args.families.split(",")),
                                  t_min, t_max)
    if c == "qbe2":
        return question_qbe2_evidence(range(args.d_min, args.d_max + 1), args.attempts,
                                      args.seed, args.prime, args.primes, t_min, t_max)
    if c == "eb1":
        return verify_theorem_eb1(args.n, args.rank, args.d, args.attempts, args.seed,
                                  args.prime, t_min, t_max)
    if c == "assert-r":
        return check_assertion_R(args.n, args.t, args.attempts, args.seed, args.prime,
                                 allow_n3=args.allow_n3)
    if c == "assert-h":
        return check_assertion_H(args.t, args.attempts, args.seed, args.prime)
    if c == "be1-bigraded":
        return verify_prop_be1(args.a_max, args.b_max, args.d_max, args.attempts, args.seed,
                               args.prime, args.types)
    if c == "fe1":
        hi = t_max if t_max is not None else 6
        return verify_prop_fe1(args.n, args.k, range(t_min, hi + 1), args.samples, args.seed,
                               args.prime, tuple(args.modes.split(",")))
    if c == "fe2-g0":
        hi = t_max if t_max is not None else t_min
        report = ExperimentReport("prop-fe2-genus0", {"n": args.n, "k": args.k, "d": args.d})
        for t in range(t_min, hi + 1):
            part = verify_prop_fe2_genus0(args.n, args.k, args.d, t, args.samples, args.seed,
                                          args.prime)
            report.cells.extend(part.cells)
        return report
    if c == "replay":
        cert = load_certificate(args.path)
        verdict = cert.replay()
        return ExperimentReport("replay", {"path": str(args.path)},
                                [{"outcome": "replayed", "verdict": verdict,
                                  "rows": cert.profile.to_dict()["rows"]}])
    if c == "oracle-check":
        return oracle_check(args.count, args.seed, args.prime)
    raise ValueError(c)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = run(args)
    except ReplayDivergence as exc:
        print(f"replay diverged: {exc}", file=sys.stderr)
        return 3
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return 1
    except (HilbtreesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(result, args)
    if isinstance(result, ExperimentReport):
        bad = [cell for cell in result.cells
               if cell.get("outcome") not in OK_OUTCOMES | {"replayed"}]
        return 1 if bad else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
