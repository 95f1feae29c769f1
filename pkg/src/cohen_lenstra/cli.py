"""``clh``: probabilities, tables, samplers and the verification suites."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import conjugacy, fplinalg, measure, verify, young
from .partitions import Partition, check_prime, enumerate_partitions
from .qseries import EvalResult
from .stats import SAMPLERS, SampleSummary, cl_law, stats_compare

STATS = ("order", "rank", "rank_order", "exponent_le", "uprob", "group")
TABLES = ("moments", "order_dist", "rank_dist")


class CliError(Exception):
    pass


def _need(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise CliError(f"--stat {args.stat} needs {', '.join(missing)}")


def _nonneg(args, *names: str) -> None:
    for n in names:
        if getattr(args, n) < 0:
            raise CliError(f"--{n} must be >= 0")


def compute_stat(args) -> EvalResult:
    ctx = measure.MeasureContext(args.p, T=args.T)
    if args.stat == "order":
        _need(args, "n")
        _nonneg(args, "n")
        return measure.prob_order(args.n, ctx)
    if args.stat == "rank":
        _need(args, "r")
        _nonneg(args, "r")
        return measure.prob_rank(args.r, ctx)
    if args.stat == "rank_order":
        _need(args, "n", "r")
        _nonneg(args, "n", "r")
        return measure.prob_rank_order(args.n, args.r, ctx)
    if args.stat == "exponent_le":
        _need(args, "e")
        _nonneg(args, "e")
        return measure.prob_exponent_le(args.e, ctx)
    if args.stat == "uprob":
        _need(args, "u", "partition")
        if args.u < 1:
            raise CliError("--u must be >= 1")
        return measure.u_prob(Partition.parse(args.partition), args.u, ctx)
    if args.stat == "group":
        _need(args, "partition")
        return measure.cl_prob(Partition.parse(args.partition), ctx)
    raise CliError(f"unknown stat {args.stat!r}")


def render_decimal(r: EvalResult, digits: int) -> str:
    if r.tail_bound >= Fraction(1, 2 * 10**digits):
        raise CliError(f"tail bound {float(r.tail_bound):.3e} is too large for {digits} digits; "
                       "raise --T")
    return verify.round_half_even(r.value, digits)


def _fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_prob(args, out) -> int:
    r = compute_stat(args)
    dec = render_decimal(r, args.digits)
    params = {k: getattr(args, k) for k in ("n", "r", "e", "u", "partition") if getattr(args, k) is not None}
    obj = {"stat": args.stat, "p": args.p, "params": params, "value": _fraction_text(r.value),
           "decimal": dec, "tail_bound": f"{float(r.tail_bound):.3e}"}
    if args.format == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["stat", "p", "value", "decimal", "tail_bound"])
        w.writerow([args.stat, args.p, obj["value"], dec, obj["tail_bound"]])
    else:
        out.write(f"{dec}\n  exact midpoint: {obj['value']}\n  tail bound: {obj['tail_bound']}\n")
    return 0


def table_rows(kind: str, primes: list[int], digits: int, size: int) -> list[tuple[str, list[str]]]:
    rows = []
    if kind == "moments":
        tol = min(Fraction(1, 10**7), Fraction(1, 4 * 10**digits))
        for name in verify.MOMENT_ROWS:
            vals = []
            for p in primes:
                r = measure.moment_value(name, p, tol)
                if r.tail_bound >= Fraction(1, 10**5):
                    raise CliError(f"{name} at p={p} not certified to 1e-5")
                vals.append(render_decimal(r, digits))
            rows.append((name, vals))
    elif kind in ("order_dist", "rank_dist"):
        fn = measure.prob_order if kind == "order_dist" else measure.prob_rank
        ctxs = [measure.MeasureContext(p) for p in primes]
        for k in range(size):
            rows.append((str(k), [render_decimal(fn(k, c), digits) for c in ctxs]))
    else:
        raise CliError(f"unknown table {kind!r}")
    return rows


def render_table(kind: str, primes: list[int], rows, fmt: str) -> str:
    label = "moment" if kind == "moments" else ("n" if kind == "order_dist" else "r")
    if fmt == "json":
        obj = {"table": kind, "primes": primes,
               "rows": [{label: name, "values": dict(zip(map(str, primes), vals))} for name, vals in rows]}
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([label] + [f"p={p}" for p in primes])
        for name, vals in rows:
            w.writerow([name] + vals)
        return buf.getvalue()
    header = [label] + [f"p={p}" for p in primes]
    body = [[name] + vals for name, vals in rows]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in [header] + body]
    return "\n".join(lines) + "\n"


def cmd_table(args, out) -> int:
    primes = [int(x) for x in args.primes.split(",")] if args.primes else [args.p]
    for p in primes:
        check_prime(p)
    rows = table_rows(args.kind, primes, args.digits, args.rows)
    out.write(render_table(args.kind, primes, rows, args.format))
    return 0


def draw_samples(args, rng: np.random.Generator) -> tuple[list[Partition], dict, dict]:
    """Samples, the exact law they are compared with, and run metadata."""
    p, count = args.p, args.count
    if args.sampler == "ytab":
        return (young.ytab_samples(p, rng, count, args.eps), cl_law(p, 8), {"eps": args.eps})
    if args.sampler == "lattice":
        samples = [young.lattice_walk_sample(p, rng) for _ in range(count)]
        law = {lam: young.lattice_walk_law(lam, p) for lam in enumerate_partitions(8)}
        return samples, law, {}
    if args.sampler == "matrix":
        n = args.n or 4
        mats, attempts = fplinalg.random_gl_batch(n, p, rng, count)
        samples = fplinalg.partition_at_batch(mats, p, args.a)
        return samples, conjugacy.exact_marginal(n, p, args.a), {"n": n, "a": args.a, "attempts": attempts}
    if args.sampler == "cokernel":
        n = args.n or 2
        samples, sat = fplinalg.cokernel_samples(n, p, args.K, rng, count)
        law = {lam: young.p_output_N(lam, n, p) for lam in enumerate_partitions(10)}
        return samples, law, {"n": n, "K": args.K, "saturated": sat}
    if args.sampler == "uquotient":
        hs = young.ytab_samples(p, rng, count, args.eps)
        samples = [fplinalg.quotient_by_random_elements(h, args.u, p, rng).to_partition() for h in hs]
        ctx = measure.MeasureContext(p)
        law = {lam: measure.u_prob(lam, args.u, ctx).value for lam in enumerate_partitions(8)}
        return samples, law, {"u": args.u, "eps": args.eps}
    raise CliError(f"unknown sampler {args.sampler!r}")


def cmd_sample(args, out) -> int:
    if args.seed is None:
        raise CliError("sampling needs --seed")
    if args.count < 1:
        raise CliError("--count must be >= 1")
    if args.sampler in ("matrix", "cokernel") and args.n is not None and args.n < 1:
        raise CliError("--n must be >= 1")
    if args.sampler == "uquotient" and args.u < 1:
        raise CliError("--u must be >= 1")
    if args.sampler == "matrix" and args.a % args.p == 0:
        raise CliError("--a must be a unit mod p")
    if args.K < 1:
        raise CliError("--K must be >= 1")
    rng = np.random.default_rng(args.seed)
    samples, law, meta = draw_samples(args, rng)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["seed", "index", "partition"])
    for i, lam in enumerate(samples):
        w.writerow([args.seed, i, str(lam)])
    summary = SampleSummary.from_samples(samples, args.seed, args.sampler, **meta)
    cmp = stats_compare(summary, law, args.buckets)
    report = summary.to_json()
    report["comparison"] = {"buckets": args.buckets, "tv": f"{float(cmp.tv):.6f}",
                            "chisq": f"{cmp.chisq:.4f}", "dof": cmp.dof, "pvalue": f"{cmp.pvalue:.4f}"}
    text = (json.dumps(report, indent=2) + "\n" if args.format == "json" else
            f"{args.sampler} p={args.p} seed={args.seed} count={summary.total}: "
            f"TV {float(cmp.tv):.6f}, chi2 {cmp.chisq:.4f} on {cmp.dof} dof, p-value {cmp.pvalue:.4f}\n")
    if args.summary:
        with open(args.summary, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)
    return 0


def cmd_verify(args, out) -> int:
    lines = []

    def report(line: str) -> None:
        lines.append(line)
        if args.format == "text":
            out.write(line + "\n")
            out.flush()

    results = verify.run_suite(args.suite, report)
    failed = [c for c in results if not c.passed]
    if args.format == "json":
        out.write(json.dumps({"suite": args.suite, "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in results]}, indent=2) + "\n")
    else:
        out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime (default 2)")
    common.add_argument("--seed", type=int, help="RNG seed (required for sample)")
    common.add_argument("--digits", type=int, help="decimal digits (table: 4, otherwise 6)")
    common.add_argument("--format", choices=("csv", "json", "text"), default="text")
    common.add_argument("--out", help="write the main output to this file")

    parser = argparse.ArgumentParser(prog="clh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("prob", parents=[common], help="one Cohen-Lenstra probability")
    pr.add_argument("--stat", required=True, choices=STATS)
    pr.add_argument("--n", type=int)
    pr.add_argument("--r", type=int)
    pr.add_argument("--e", type=int)
    pr.add_argument("--u", type=int)
    pr.add_argument("--partition", help='e.g. "2+1" or "0" for the trivial group')
    pr.add_argument("--T", type=int, default=64, help="Euler product truncation")

    tb = sub.add_parser("table", parents=[common], help="moments or distributions across primes")
    tb.add_argument("kind", choices=TABLES)
    tb.add_argument("--primes", help="comma separated primes (default --p)")
    tb.add_argument("--rows", type=int, default=6, help="rows for order_dist / rank_dist")

    sm = sub.add_parser("sample", parents=[common], help="run a sampler")
    sm.add_argument("sampler", choices=SAMPLERS)
    sm.add_argument("--count", type=int, default=10_000)
    sm.add_argument("--eps", type=float, default=1e-6, help="ytab stopping threshold")
    sm.add_argument("--n", type=int, help="matrix size (matrix: 4, cokernel: 2)")
    sm.add_argument("--a", type=int, default=1, help="eigenvalue for the matrix sampler")
    sm.add_argument("--K", type=int, default=12, help="cokernel precision p^K")
    sm.add_argument("--u", type=int, default=1, help="number of quotient elements")
    sm.add_argument("--buckets", type=int, default=4, help="own buckets for sizes <= this")
    sm.add_argument("--summary", help="write the summary here instead of stderr")

    vf = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vf.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    return parser


COMMANDS = {"prob": cmd_prob, "table": cmd_table, "sample": cmd_sample, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.digits is None:
        args.digits = 4 if args.command == "table" else 6
    if args.digits < 0:
        print("clh: error: --digits must be >= 0", file=sys.stderr)
        return 2
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        return COMMANDS[args.command](args, out)
    except (CliError, ValueError) as exc:
        print(f"clh: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if args.out:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
