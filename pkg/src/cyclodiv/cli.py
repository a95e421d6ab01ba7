"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 inconclusive or budget exhausted, 5 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__, cyclotomic as cyc, galois_probe, verifier, zsigmondy
from .errors import BudgetExhausted, InvariantViolation, PolySyntaxError, PreconditionError
from .numtheory import primes_between
from .parser import parse_coeffs, parse_poly, render

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONCLUSIVE, EXIT_INVARIANT = 0, 2, 3, 4, 5
SCHEMA_VERSION = 1


class _Result:
    """What a subcommand hands back: a JSON document, text lines, an exit code."""

    def __init__(self, doc: dict, lines: list[str], code: int = EXIT_OK, rows=None):
        self.doc = doc
        self.lines = lines
        self.code = code
        self.rows = rows


def _poly(args, text: str):
    return parse_coeffs(text) if args.coeffs else parse_poly(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise PolySyntaxError(f"bad integer list {text!r}", 0, text) from None


# -- subcommands ------------------------------------------------------------


def cmd_cyclotomic(args) -> _Result:
    f = cyc.cyclotomic(args.d)
    doc = {"d": args.d, "polynomial": render(f), "degree": f.degree, "coeffs": [str(c) for c in f.coeffs]}
    return _Result(doc, [f"Phi_{args.d}(x) = {render(f)}"])


def cmd_classify(args) -> _Result:
    f = _poly(args, args.poly)
    c = cyc.classify(f)
    doc = {
        "polynomial": render(f),
        "in_family": c.in_family,
        "e0": c.e0,
        "factors": [[d, e] for d, e in c.factors],
        "residual": render(c.residual),
    }
    if c.in_family:
        parts = ([f"x^{c.e0}"] if c.e0 else []) + [
            f"Phi_{d}" + (f"^{e}" if e > 1 else "") for d, e in c.factors
        ]
        lines = [f"{render(f)} = {' * '.join(parts) or '1'}"]
    else:
        lines = [f"{render(f)}: not in family", f"residual after removing cyclotomic factors: {render(c.residual)}"]
    return _Result(doc, lines)


def _verify_rows(f, report) -> list[list]:
    failed = set(report.failures)
    lo, hi = report.prime_range
    return [[p, p not in failed, f"f(p)={f(p)}"] for p in primes_between(lo, hi)]


def _report_lines(r) -> list[str]:
    return [
        f"polynomial: {render(r.polynomial)}",
        f"primes in [{r.prime_range[0]}, {r.prime_range[1]}]: {r.passes_count} pass, {len(r.failures)} fail",
        f"failures: {r.failures}",
        f"candidate N (empirical): {r.candidate_N}",
        f"theory N: {r.theory_N if r.theory_N is not None else 'n/a (not a cyclotomic product)'}",
    ]


def _scan_or_inconsistent(f, lo, hi, threads):
    try:
        return verifier.scan(f, lo, hi, threads=threads), EXIT_OK
    except InvariantViolation as err:
        report = getattr(err, "report", None)
        if report is None:
            raise
        return report, EXIT_INVARIANT


def cmd_verify(args) -> _Result:
    f = _poly(args, args.poly)
    report, code = _scan_or_inconsistent(f, args.lo, args.hi, args.threads)
    rows = _verify_rows(f, report) if args.csv else None
    return _Result(report.to_dict(), _report_lines(report), code, rows)


def cmd_min_n(args) -> _Result:
    f = _poly(args, args.poly)
    report, code = _scan_or_inconsistent(f, 2, args.limit, args.threads)
    doc = {
        "polynomial": render(f),
        "limit": args.limit,
        "candidate_N": report.candidate_N,
        "theory_N": report.theory_N,
        "failures": report.failures,
        "empirical": True,
    }
    lines = [f"candidate N (empirical, primes <= {args.limit}): {report.candidate_N}",
             f"theory N: {report.theory_N}"]
    return _Result(doc, lines, code)


def cmd_find_counterexample(args) -> _Result:
    f = _poly(args, args.poly)
    p = verifier.find_failing_prime(f, args.limit, args.threads)
    doc = {"polynomial": render(f), "search_limit": args.limit, "found": p is not None, "failing_prime": p}
    if p is None:
        return _Result(doc, [f"no failing prime up to {args.limit} (inconclusive)"], EXIT_INCONCLUSIVE)
    return _Result(doc, [f"f({p}) does not divide f({p}^{p})"])


def cmd_zsigmondy(args) -> _Result:
    r = zsigmondy.analyze(args.b, args.d, seed=args.seed)
    lines = [
        f"Phi_{r.d}({r.b}) = {r.value}",
        f"exception: {r.exception_tag}",
        f"non-primitive part: {r.nonprimitive_part}, primitive cofactor: {r.primitive_cofactor}",
        f"smallest primitive prime: {r.smallest_primitive_prime}",
    ]
    return _Result(r.to_dict(), lines)


def cmd_zsigmondy_scan(args) -> _Result:
    reports = zsigmondy.scan(args.b_max, args.d_max, seed=args.seed, threads=args.threads)
    exceptions = [[r.b, r.d, r.exception_tag] for r in reports if r.exception_tag != zsigmondy.NONE]
    doc = {
        "b_max": args.b_max,
        "d_max": args.d_max,
        "cells": len(reports),
        "exceptions": exceptions,
        "reports": [r.to_dict() for r in reports],
    }
    lines = [f"{len(reports)} cells, exceptions: {[(b, d) for b, d, _ in exceptions]}"]
    return _Result(doc, lines)


def cmd_split_density(args) -> _Result:
    r = galois_probe.split_density(_poly(args, args.poly), args.limit, threads=args.threads)
    d = r.to_dict()
    return _Result(d, [f"{r.split_count}/{r.primes_tested} primes split completely ({d['density_decimal']})"])


def cmd_root_orders(args) -> _Result:
    prof = galois_probe.root_order_profile(_poly(args, args.poly), args.limit, seed=args.seed, threads=args.threads)
    return _Result(prof.to_dict(), [f"{len(prof.records)} split primes, max order seen {prof.max_order_seen}"])


def cmd_root_implication(args) -> _Result:
    v = galois_probe.root_implication_divides(_poly(args, args.g), _poly(args, args.h), args.budget, seed=args.seed)
    lines = [
        f"remainder bound: {v.remainder_bound}",
        f"implication at qualifying prime: {v.implication_at_qualifying_prime}",
        f"exact divisibility: {v.exact_divisible}",
    ]
    code = EXIT_OK
    if not v.consistent:
        code = EXIT_INVARIANT
    elif not v.conclusive:
        code = EXIT_INCONCLUSIVE
        lines.append("no qualifying split prime within budget (inconclusive)")
    return _Result(v.to_dict(), lines, code)


def cmd_n2_family(args) -> _Result:
    fac = verifier.n2_sufficient_family(_int_list(args.primes))
    f = fac.expand()
    report, code = _scan_or_inconsistent(f, 2, args.check_limit, args.threads)
    doc = {"factorization": fac.to_dict(), "polynomial": render(f), "report": report.to_dict()}
    lines = [f"family polynomial: {render(f)}"] + _report_lines(report)
    if report.failures and code == EXIT_OK:
        code = EXIT_INVARIANT
    return _Result(doc, lines, code)


def cmd_n2_analyze(args) -> _Result:
    f = _poly(args, args.poly)
    v = verifier.n2_analyze(f, args.check_limit, args.threads)
    doc = {"polynomial": render(f), **v.to_dict()}
    return _Result(doc, [f"status: {v.status}", f"witness: {v.witness}"] + v.notes)


def cmd_radical_check(args) -> _Result:
    r = verifier.radical_property_check(_poly(args, args.poly), args.n_limit)
    if r.clean:
        lines = [f"no violation for 0 <= n <= {args.n_limit}"]
    else:
        v = r.violation
        lines = [f"violation at n = {v['n']}: rad({v['value']}) = {v['radical']} does not divide f(n^{v['rad_n']})"]
    return _Result(r.to_dict(), lines)


def cmd_identity_check(args) -> _Result:
    if args.lemma == "product":
        checks = [{"M": M, "holds": cyc.product_of_cyclotomics_equals(M)} for M in range(1, args.m_max + 1)]
        failed = [c["M"] for c in checks if not c["holds"]]
        doc = {"identity": "product", "m_max": args.m_max, "checked": len(checks), "violations": failed}
    else:
        primes = _int_list(args.primes)
        failed, n = [], 0
        for p in primes:
            for d in range(1, args.d_max + 1):
                n += 1
                if not cyc.cyclotomic_substitution_identity(d, p).holds:
                    failed.append([d, p])
        doc = {"identity": "substitution", "d_max": args.d_max, "primes": primes, "checked": n, "violations": failed}
    code = EXIT_INVARIANT if failed else EXIT_OK
    return _Result(doc, [f"{doc['checked']} cases checked, {len(failed)} violations"], code)


# -- plumbing ---------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for scans")
    common.add_argument("--coeffs", action="store_true", help="polynomials are ascending comma-separated coefficients")
    common.add_argument("--out", type=Path, help="also write the JSON document to this file")
    common.add_argument("--csv", type=Path, help="write per-prime CSV rows (verify only)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="cyclodiv",
        description="Divisibility f(p) | f(p^p) for monic integer polynomials, and cyclotomic tools.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("cyclotomic", cmd_cyclotomic, "print the d-th cyclotomic polynomial")
    p.add_argument("d", type=int)

    p = add("classify", cmd_classify, "decompose f as x^e0 times cyclotomic powers")
    p.add_argument("poly")

    p = add("verify", cmd_verify, "check f(p) | f(p^p) for primes in a range")
    p.add_argument("poly")
    p.add_argument("--from", dest="lo", type=int, default=2)
    p.add_argument("--to", dest="hi", type=int, default=1000)

    p = add("min-n", cmd_min_n, "empirical and theoretical threshold N")
    p.add_argument("poly")
    p.add_argument("--limit", type=int, default=1000)

    p = add("find-counterexample", cmd_find_counterexample, "smallest failing prime")
    p.add_argument("poly")
    p.add_argument("--limit", type=int, default=verifier.DEFAULT_SEARCH_LIMIT)

    p = add("zsigmondy", cmd_zsigmondy, "primitive prime divisors of Phi_d(b)")
    p.add_argument("b", type=int)
    p.add_argument("d", type=int)

    p = add("zsigmondy-scan", cmd_zsigmondy_scan, "primitive divisor analysis over a grid")
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)

    p = add("split-density", cmd_split_density, "fraction of primes splitting f completely")
    p.add_argument("poly")
    p.add_argument("--limit", type=int, default=10_000)

    p = add("root-orders", cmd_root_orders, "orders of roots of f at split primes")
    p.add_argument("poly")
    p.add_argument("--limit", type=int, default=10_000)

    p = add("root-implication", cmd_root_implication, "root implication test for h | g")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--budget", type=int, default=1000)

    p = add("n2-family", cmd_n2_family, "build and check (x-1) prod Phi_p over given primes")
    p.add_argument("--primes", default="")
    p.add_argument("--check-limit", type=int, default=500)

    p = add("n2-analyze", cmd_n2_analyze, "does f satisfy the property for every prime?")
    p.add_argument("poly")
    p.add_argument("--check-limit", type=int, default=1000)

    p = add("radical-check", cmd_radical_check, "rad(f(n)) | f(n^rad(n)) for small n")
    p.add_argument("poly")
    p.add_argument("--n-limit", type=int, default=1000)

    p = add("identity-check", cmd_identity_check, "exact cyclotomic identity checks")
    p.add_argument("--lemma", choices=["substitution", "3.5", "product"], default="substitution")
    p.add_argument("--d-max", type=int, default=60)
    p.add_argument("--primes", default="2,3,5,7,11")
    p.add_argument("--m-max", type=int, default=200)
    return parser


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except PolySyntaxError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=stderr)
        return EXIT_INCONCLUSIVE
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=stderr)
        return EXIT_INVARIANT

    doc = {"schema": f"cyclodiv.{args.command}/v{SCHEMA_VERSION}", **result.doc}
    text = dumps(doc)
    stdout.write(text if args.json else "\n".join(result.lines) + "\n")
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    if args.csv and result.rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["prime", "passed", "detail"])
        w.writerows(result.rows)
        args.csv.write_text(buf.getvalue(), encoding="utf-8")
    if result.code == EXIT_INVARIANT:
        print("invariant violated: see report", file=stderr)
    return result.code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
