"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 invalid input,
3 a modulus exceeded the configured bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from quadgauss.evaluator import (
    eval_lemma1,
    eval_phi,
    eval_prime_power_odd,
    eval_prime_power_two,
    reflection_product,
    verify_ls,
)
from quadgauss.exact_value import ExactGaussValue
from quadgauss.modular import (
    BoundExceededError,
    SqrtCountQuery,
    count_sqrt_closed,
    is_prime,
    prime_power,
    sylvester_count,
)
from quadgauss.oracle import (
    DEFAULT_COUNT_BOUND,
    DEFAULT_SUM_BOUND,
    DEFAULT_TOL,
    count_sqrt_brute,
    fourier_check,
    phi_numeric,
    sylvester_brute,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3
TABLE_KINDS = ("lemma1", "prop10", "prop11", "reflection")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _exact_json(v: Optional[ExactGaussValue]) -> Optional[dict]:
    return None if v is None else v.to_json()


@dataclass
class SweepSummary:
    max_a: int
    max_b: int
    total: int = 0
    passes: int = 0
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {
            "range": {"a": [1, self.max_a], "b": [1, self.max_b]},
            "total": self.total,
            "passes": self.passes,
            "failures": self.failures,
            "wall_time": self.wall_time,
        }


def _ls_rows(a_values: list[int], max_b: int, tol: float, bound: int) -> list[tuple[int, int, Optional[dict]]]:
    out = []
    for a in a_values:
        for b in range(1, max_b + 1):
            r = verify_ls(a, b, tol, bound)
            out.append((a, b, None if r.passed else r.to_json()))
    return out


def sweep_ls(max_a: int, max_b: int, tol: float, workers: int, bound: int) -> SweepSummary:
    start = time.perf_counter()
    workers = max(1, min(workers, max_a))
    shards = [list(range(1 + w, max_a + 1, workers)) for w in range(workers)]
    if workers == 1:
        rows = _ls_rows(shards[0], max_b, tol, bound)
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_ls_rows, shard, max_b, tol, bound) for shard in shards]
            rows = [row for f in futures for row in f.result()]
    rows.sort(key=lambda r: (r[0], r[1]))
    summary = SweepSummary(max_a, max_b, total=len(rows))
    for _, _, failure in rows:
        if failure is None:
            summary.passes += 1
        else:
            summary.failures.append(failure)
    summary.wall_time = time.perf_counter() - start
    return summary


def cmd_eval(args) -> int:
    a, b = args.a, args.b
    if a < 1:
        raise ValueError(f"modulus must be positive, got {a}")
    numeric = phi_numeric(a, b, args.sum_bound)
    exact = trace = None
    if b % 2 == 0:
        exact, trace = eval_phi(a, b, bound=args.count_bound)
    agree = exact is None or exact.to_complex().close_to(numeric, args.tol)
    if args.json:
        obj = {
            "query": {"a": a, "b": b},
            "exact": _exact_json(exact),
            "numeric": {"re": numeric.re, "im": numeric.im, "err": numeric.err},
            "agree": agree,
        }
        if args.trace and trace is not None:
            obj["trace"] = [
                {"rule": s.rule, "a": s.query.modulus, "b": s.query.numerator, "value": s.value.to_json(), "inputs": list(s.inputs)}
                for s in trace.steps
            ]
        print(_dump(obj))
    else:
        print(f"Φ({a},{b})")
        print(f"exact:   {exact if exact is not None else 'n/a (odd numerator)'}")
        print(f"numeric: {numeric.re:.15f}{numeric.im:+.15f}i  (err <= {numeric.err:.1e})")
        if args.trace and trace is not None:
            print("trace:")
            for line in trace.render():
                print("  " + line)
    if not agree:
        print(f"MISMATCH: exact {exact} disagrees with numeric sum", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify_ls(args) -> int:
    if args.max_a < 1 or args.max_b < 1:
        raise ValueError("--max-a and --max-b must be positive")
    summary = sweep_ls(args.max_a, args.max_b, args.tol, args.workers, args.sum_bound)
    if args.json:
        print(_dump(summary.to_json()))
    else:
        print(
            f"verify-ls a in [1,{args.max_a}], b in [1,{args.max_b}]: {summary.total} cases, "
            f"{summary.passes} passed, {len(summary.failures)} failed ({summary.wall_time:.2f}s)"
        )
        for f in summary.failures[:20]:
            print(f"  FAIL {f['query']}: {f['failed_step']} diff={f['difference']:.3e}")
    return EXIT_OK if not summary.failures else EXIT_FAIL


def cmd_count_sqrt(args) -> int:
    t, m = args.t, args.m
    brute = count_sqrt_brute(t, m, args.count_bound)
    pp = prime_power(m)
    closed = count_sqrt_closed(SqrtCountQuery.of(t, *pp)) if pp else None
    agree = closed is None or closed == brute
    if args.json:
        print(_dump({"t": t, "m": m, "brute": brute, "closed": closed, "agree": agree}))
    else:
        shown = closed if closed is not None else "n/a (not a prime power)"
        print(f"brute {brute}, closed {shown}")
    if not agree:
        print(f"MISMATCH: closed form {closed} != enumeration {brute} for x^2 = {t} mod {m}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_fourier_check(args) -> int:
    if args.p**args.k > args.count_bound:
        raise BoundExceededError(f"{args.p}^{args.k} exceeds bound {args.count_bound}")
    report = fourier_check(args.p, args.k, args.l, args.tol, args.count_bound)
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(f"{report.query}: {'pass' if report.passed else 'FAIL'}")
        print(f"closed form: {report.exact}")
        for s in report.steps:
            print(f"  {s.label}: diff={s.difference:.3e} {'ok' if s.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sylvester(args) -> int:
    closed = sylvester_count(args.a, args.b)
    brute = sylvester_brute(args.a, args.b)
    if args.json:
        print(_dump({"a": args.a, "b": args.b, "closed": closed, "brute": brute, "agree": closed == brute}))
    else:
        print(f"closed {closed}, brute {brute}")
    if closed != brute:
        print("MISMATCH between closed form and enumeration", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def table_rows(kind: str, args) -> tuple[list[str], list[dict]]:
    bound = args.sum_bound
    rows = []
    if kind == "lemma1":
        columns = ["a"]
        for a in range(1, args.max + 1):
            rows.append(({"a": a}, eval_lemma1(a), phi_numeric(a, 2, bound)))
    elif kind in ("prop10", "prop11"):
        p = args.p if kind == "prop10" else 2
        if kind == "prop10" and (p < 3 or not is_prime(p)):
            raise ValueError("prop10 needs --p set to an odd prime")
        columns = ["p", "k", "l"]
        for k in range(1, args.max_k + 1):
            value = eval_prime_power_odd(p, k, args.l) if p != 2 else eval_prime_power_two(k, args.l)
            rows.append(({"p": p, "k": k, "l": args.l}, value, phi_numeric(p**k, 2 * args.l, bound)))
    elif kind == "reflection":
        p = args.p
        if not is_prime(p):
            raise ValueError("reflection needs --p set to a prime")
        columns = ["p", "k", "l"]
        for k in range(1, args.max_k + 1):
            m = p**k
            numeric = phi_numeric(m, 2 * args.l, bound) * phi_numeric(m, -2 * args.l, bound)
            rows.append(({"p": p, "k": k, "l": args.l}, reflection_product(p, k, args.l), numeric))
    else:
        raise ValueError(f"unknown table kind {kind!r}; choose from {', '.join(TABLE_KINDS)}")
    out = []
    for inputs, value, numeric in rows:
        row = dict(inputs)
        row["exact"] = value.to_json()
        row["re"] = numeric.re
        row["im"] = numeric.im
        out.append(row)
    return columns + ["exact", "re", "im"], out


def render_table(kind: str, columns: list[str], rows: list[dict], as_json: bool) -> str:
    if as_json:
        return _dump({"kind": kind, "columns": columns, "rows": rows})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([json.dumps(row[c], separators=(",", ":")) if c == "exact" else repr(row[c]) for c in columns])
    return buf.getvalue().rstrip("\n")


def cmd_table(args) -> int:
    columns, rows = table_rows(args.kind, args)
    print(render_table(args.kind, columns, rows, args.json))
    return EXIT_OK


def cmd_self_test(args) -> int:
    from quadgauss.acceptance import run_all

    results = run_all()
    passed = sum(r.passed for r in results)
    if args.json:
        print(_dump([{"number": r.number, "name": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail} for r in results]))
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance (default 1e-6)")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="parallel workers for sweeps")
    common.add_argument("--max-modulus", type=int, default=None, help="override summation and counting bounds")

    parser = _ArgumentParser(prog="quadgauss", description="Quadratic Gauss sums: exact values and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("eval", parents=[common], help="evaluate phi(a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--trace", action="store_true", help="show the derivation")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify-ls", parents=[common], help="sweep the reciprocity relation over a grid")
    p.add_argument("--max-a", type=int, default=50)
    p.add_argument("--max-b", type=int, default=50)
    p.set_defaults(func=cmd_verify_ls)

    p = sub.add_parser("count-sqrt", parents=[common], help="count solutions of x^2 = t mod m")
    p.add_argument("t", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_count_sqrt)

    p = sub.add_parser("fourier-check", parents=[common], help="square-count expansion of phi(p^k, 2l)")
    p.add_argument("p", type=int)
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.set_defaults(func=cmd_fourier_check)

    p = sub.add_parser("sylvester", parents=[common], help="lattice count for coprime odd a, b")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_sylvester)

    p = sub.add_parser("table", parents=[common], help="value tables as CSV or JSON")
    p.add_argument("kind", help=f"one of {', '.join(TABLE_KINDS)}")
    p.add_argument("--max", type=int, default=8, help="largest modulus (lemma1 table)")
    p.add_argument("--p", type=int, default=3, help="prime (prop10, reflection)")
    p.add_argument("--max-k", type=int, default=6, help="largest exponent")
    p.add_argument("--l", type=int, default=1, help="numerator parameter")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("self-test", parents=[common], help="run every acceptance criterion")
    p.set_defaults(func=cmd_self_test)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    args.sum_bound = args.max_modulus or DEFAULT_SUM_BOUND
    args.count_bound = args.max_modulus or DEFAULT_COUNT_BOUND
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except BoundExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
