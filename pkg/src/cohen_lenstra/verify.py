"""Cross-verification suites: every closed form against an enumeration, every
sampler against an exact law."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import conjugacy, fplinalg, measure, oracles, young
from .partitions import (
    Partition,
    aut_order,
    enumerate_partitions,
    from_group_shape,
    partitions_of,
    to_group_shape,
)
from .qseries import CoefficientBound, EulerProduct, eisenstein, euler_product, eval_at, power_tail
from .stats import SampleSummary, cl_law, stats_compare, tv_to_cl

SUITES = ("closed_forms", "zeta", "lattice", "samplers", "conjugacy")

# Table of moments of the local order (rows M1, V, M2, M3, M4).
MOMENT_TABLE = {
    2: ("1.6067", "2.7440", "5.3255", "24.4734", "145.5087"),
    3: ("0.6822", "0.9494", "1.4148", "3.9984", "14.7677"),
    5: ("0.3017", "0.3660", "0.4571", "0.8848", "2.2088"),
    7: ("0.1909", "0.2191", "0.2556", "0.4173", "0.8596"),
    11: ("0.1091", "0.1192", "0.1311", "0.1817", "0.3053"),
    13: ("0.0898", "0.0968", "0.1048", "0.1387", "0.2189"),
    17: ("0.0662", "0.0701", "0.0745", "0.0926", "0.1340"),
}
MOMENT_ROWS = ("M1", "V", "M2", "M3", "M4")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.detail} [{self.seconds:.1f}s]"


_REGISTRY: dict[str, list[Callable[[], tuple[bool, str]]]] = {s: [] for s in SUITES}


def check(suite: str):
    def deco(fn):
        _REGISTRY[suite].append(fn)
        return fn
    return deco


def run_suite(name: str, report: Callable[[str], None] = print) -> list[Check]:
    suites = SUITES if name == "all" else (name,)
    results = []
    for s in suites:
        if s not in _REGISTRY:
            raise ValueError(f"unknown suite {s!r}")
        for fn in _REGISTRY[s]:
            t = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            c = Check(f"{s}.{fn.__name__}", bool(ok), detail, time.perf_counter() - t)
            report(c.line())
            results.append(c)
    return results


def round_half_even(x: Fraction, digits: int) -> str:
    from decimal import ROUND_HALF_EVEN, Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = 80
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def brute_prob(pred: Callable[[Partition], bool], p: int, B: int, finite: bool):
    return oracles.weight_sum(pred, measure.MeasureContext(p, B=B), B, finite)


def default_B(p: int) -> int:
    return 30 if p == 2 else 15


# ---------------------------------------------------------------- closed forms

@check("closed_forms")
def conjugation_and_shapes() -> tuple[bool, str]:
    n = 0
    for lam in enumerate_partitions(12):
        n += 1
        if lam.conjugate().conjugate() != lam:
            return False, f"conjugation not an involution at {lam}"
        if from_group_shape(to_group_shape(lam)) != lam:
            return False, f"shape round trip fails at {lam}"
        if lam.rank != lam.conjugate().largest:
            return False, f"rank mismatch at {lam}"
    return True, f"{n} partitions of size <= 12"


@check("closed_forms")
def partition_counts() -> tuple[bool, str]:
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    got = [sum(1 for _ in partitions_of(n)) for n in range(13)]
    total = sum(1 for _ in enumerate_partitions(12))
    return got == expected and total == sum(expected), f"p(n) = {got}"


@check("closed_forms")
def automorphism_counts() -> tuple[bool, str]:
    n = 0
    for p in (2, 3):
        for lam in enumerate_partitions(6):
            if oracles.aut_count_bruteforce(lam, p) != aut_order(lam, p):
                return False, f"#Aut mismatch at {lam}, p={p}"
            n += 1
    return True, f"{n} groups of order <= p^6, p in (2, 3)"


@check("closed_forms")
def euler_product_expansion() -> tuple[bool, str]:
    for T in range(31):
        if euler_product(T) != oracles.naive_euler_product(T):
            return False, f"mismatch at T={T}"
    return True, "T <= 30"


@check("closed_forms")
def eisenstein_coefficients() -> tuple[bool, str]:
    for k in range(1, 6):
        if eisenstein(k, 40) != oracles.naive_eisenstein(k, 40):
            return False, f"E_{k} mismatch"
    return True, "E_1..E_5 to q^40 against direct divisor sums"


@check("closed_forms")
def eval_intervals_nest() -> tuple[bool, str]:
    for k in (1, 2, 3):
        g = CoefficientBound(Fraction(1), k)
        prev = None
        for T in range(20, 80, 10):
            r = eval_at(eisenstein(k, T), 2, growth=g)
            if prev is not None and not prev.contains(r.value):
                return False, f"E_{k}: T={T} escapes the T={T - 10} interval"
            if prev is not None and r.value < prev.value:
                return False, f"E_{k}: partial sums not increasing"
            prev = r
    prev = None
    for T in range(10, 70, 10):
        r = eval_at(EulerProduct(), 2, T)
        if prev is not None and not prev.contains(r.value):
            return False, f"Euler product: T={T} escapes previous interval"
        prev = r
    return True, "E_1..E_3 and the Euler product at p=2"


@check("closed_forms")
def normalization() -> tuple[bool, str]:
    head = brute_prob(lambda lam: True, 2, 30, finite=True)
    ok = head.lower > 1 - Fraction(1, 10**6) and head.upper <= 1 + Fraction(1, 10**12)
    return ok, f"sum of P over ord_p <= 30 at p=2 is {float(head.value):.12f}"


def closed_vs_brute(p: int) -> tuple[bool, str]:
    B = default_B(p)
    ctx = measure.MeasureContext(p, B=B)
    slack = Fraction(1, 10**9)
    cases = []
    for n in range(6):
        cases.append((f"order {n}", measure.prob_order(n, ctx),
                      brute_prob(lambda l, n=n: l.size == n, p, B, True)))
    for r in range(4):
        cases.append((f"rank {r}", measure.prob_rank(r, ctx),
                      brute_prob(lambda l, r=r: l.rank == r, p, B, r == 0)))
    for n in range(6):
        for r in range(n + 1):
            cases.append((f"rank {r} order {n}", measure.prob_rank_order(n, r, ctx),
                          brute_prob(lambda l, n=n, r=r: l.size == n and l.rank == r, p, B, True)))
    for e in range(4):
        cases.append((f"exponent <= {e}", measure.prob_exponent_le(e, ctx),
                      brute_prob(lambda l, e=e: l.largest <= e, p, B, e == 0)))
    for u in (1, 2):
        for lam in enumerate_partitions(4):
            cases.append((f"P_{u}({lam})", measure.u_prob(lam, u, ctx), oracles.u_weight_sum(lam, u, ctx, B)))
    bad = [name for name, a, b in cases if not a.agrees(b, slack)]
    return not bad, f"p={p}: {len(cases) - len(bad)}/{len(cases)} agree" + (f"; failing {bad}" if bad else "")


@check("closed_forms")
def closed_forms_p2() -> tuple[bool, str]:
    return closed_vs_brute(2)


@check("closed_forms")
def closed_forms_p3() -> tuple[bool, str]:
    return closed_vs_brute(3)


@check("closed_forms")
def closed_forms_p5() -> tuple[bool, str]:
    return closed_vs_brute(5)


@check("closed_forms")
def marginal_consistency() -> tuple[bool, str]:
    for p in (2, 3, 5):
        ctx = measure.MeasureContext(p)
        total = measure.EvalResult(Fraction(0))
        for n in range(8):
            row = sum((measure.prob_rank_order(n, r, ctx) for r in range(n + 1)),
                      measure.EvalResult(Fraction(0)))
            if not row.agrees(measure.prob_order(n, ctx)):
                return False, f"rank marginal of order {n} at p={p}"
            total = total + measure.prob_order(n, ctx)
        if not total.upper <= 1 or total.lower < 1 - measure.order_tail_bound(ctx, 7) - total.tail_bound:
            return False, f"order distribution mass off at p={p}"
    return True, "sum_r P(n, r) = P(n) for n < 8, p in (2, 3, 5)"


@check("closed_forms")
def u_probabilities_sum_to_one() -> tuple[bool, str]:
    ctx = measure.MeasureContext(2)
    for u in (1, 2):
        s = sum((measure.u_prob(lam, u, ctx) for lam in enumerate_partitions(20)),
                measure.EvalResult(Fraction(0)))
        if not (1 - Fraction(1, 10**5) < s.value <= 1 + s.tail_bound):
            return False, f"u={u}: mass {float(s.value)}"
    return True, "u in (1, 2), ord_p <= 20, p=2"


@check("closed_forms")
def moments_table() -> tuple[bool, str]:
    bad = []
    for p, row in MOMENT_TABLE.items():
        for name, printed in zip(MOMENT_ROWS, row):
            r = measure.moment_value(name, p, Fraction(1, 10**7))
            off = abs(Fraction(round_half_even(r.value, 4)) - Fraction(printed))
            if off > Fraction(1, 10**4) or r.tail_bound >= Fraction(1, 10**5):
                bad.append(f"{name}(p={p})={float(r.value):.6f} vs {printed}")
    return not bad, "35 table entries within 1e-4 after rounding" + (f"; mismatches {bad}" if bad else "")


@check("closed_forms")
def moments_vs_order_sums() -> tuple[bool, str]:
    for p in (2, 3):
        B = default_B(p)
        for k in (1, 2, 3):
            brute = measure.p_trivial(p) * oracles.functional_sum(lambda lam, k=k: lam.size**k, p, B)
            val = measure.moment_value(f"M{k}", p)
            # omitted terms: sum_{n > B} n^k P(ord = n) <= sum_{n > B} n^k q^n
            tail = val.tail_bound + brute.tail_bound + power_tail(Fraction(1, p), B, k)
            if abs(val.value - brute.value) > tail:
                return False, f"M_{k} at p={p}"
    return True, "M_1..M_3 equal truncated sums of n^k P(ord = n), p in (2, 3)"


# ------------------------------------------------------------------------ zeta

@check("zeta")
def twisted_weights_vs_surjections() -> tuple[bool, str]:
    n = 0
    for p in (2, 3):
        for lam in enumerate_partitions(3):
            for k in range(4):
                s = measure.surjection_count(lam, k, p)
                lhs = measure.twisted_weight_wk(lam, k, p)
                rhs = Fraction(s, p ** (k * lam.size)) * measure.weight(lam, p)
                if lhs != rhs:
                    return False, f"w_{k}{tuple(lam)} at p={p}: {lhs} vs {rhs}"
                n += 1
    return True, f"{n} exact identities"


@check("zeta")
def functional_equation() -> tuple[bool, str]:
    n = 0
    for p in (2, 3, 5):
        for s in range(4):
            for k1 in range(7):
                for k2 in range(7 - k1):
                    if measure.zeta_k(k1 + k2, s, p) != measure.zeta_k(k1, s + k2, p) * measure.zeta_k(k2, s, p):
                        return False, f"p={p} s={s} k1={k1} k2={k2}"
                    n += 1
    return True, f"{n} exact identities"


@check("zeta")
def zeta_product_vs_sum() -> tuple[bool, str]:
    for p in (2, 3):
        for k in range(5):
            for s in range(3):
                brute = oracles.zeta_k_by_sum(k, s, p, B=default_B(p) - 4)
                if not brute.contains(measure.zeta_k(k, s, p)):
                    return False, f"p={p} k={k} s={s}"
    return True, "truncated sums of w_k |G|^-s bracket the product formula"


@check("zeta")
def p_rank_moments() -> tuple[bool, str]:
    for p in (2, 3, 5, 7):
        if measure.moment_p_rank(1, p) != 2:
            return False, f"first moment at p={p}"
    for p in (2, 3):
        for k in range(4):
            ev = measure.expected_value(lambda lam, k=k: Fraction(p) ** (k * lam.rank), 0,
                                        measure.MeasureContext(p, B=default_B(p)),
                                        measure.RankGrowth(Fraction(1), k))
            if not ev.contains(measure.moment_p_rank(k, p)):
                return False, f"E[p^({k} rk)] at p={p}: {float(ev.value)}"
    return True, "moment_p_rank(1) = 2 for p <= 7; k <= 3 against truncated sums"


@check("zeta")
def twisted_expectations() -> tuple[bool, str]:
    ctx = measure.MeasureContext(2)
    one = measure.expected_value(lambda lam: 1, 1, ctx, measure.RankGrowth())
    triv = measure.expected_value(lambda lam: 1 if not lam else 0, 1, ctx, measure.RankGrowth())
    ok = one.contains(1) and triv.agrees(measure.u_prob((), 1, ctx))
    return ok, f"E_1(1) = {float(one.value):.10f}, E_1(trivial) = {float(triv.value):.10f}"


# --------------------------------------------------------------------- lattice

@check("lattice")
def path_sums() -> tuple[bool, str]:
    n = 0
    for p in (2, 3, 5):
        for lam in enumerate_partitions(8):
            if young.lattice_path_weight_sum(lam, p) != Fraction(1, aut_order(lam, p)):
                return False, f"path sum at {lam}, p={p}"
            n += 1
    return True, f"{n} exact equalities, |lambda| <= 8"


@check("lattice")
def out_weights() -> tuple[bool, str]:
    for p in (2, 3, 5):
        for conj in enumerate_partitions(10):
            w = young.out_weight(conj, p)
            if w != young.out_weight_closed(conj, p) or (conj and w >= 1):
                return False, f"out-weight at {conj}, p={p}"
    return True, "edge-by-edge sums equal p/(p^(l'_1+1)-1) < 1"


@check("lattice")
def lattice_walk() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    p = 3
    samples = [young.lattice_walk_sample(p, rng) for _ in range(20_000)]
    law = {lam: young.lattice_walk_law(lam, p) for lam in enumerate_partitions(6)}
    cmp = stats_compare(SampleSummary.from_samples(samples, 7, "lattice"), law, 6)
    return cmp.tv < Fraction(2, 100), f"p=3, 2e4 walks: TV {float(cmp.tv):.4f}, chi2 p-value {cmp.pvalue:.3f}"


# -------------------------------------------------------------------- samplers

@check("samplers")
def step2_sums() -> tuple[bool, str]:
    n = 0
    for p in (2, 3, 5):
        for N in range(1, 13):
            for lam in enumerate_partitions(10, max_part=N):
                d = young.ytab_step2_distribution(young.ChainState(lam, N), p)
                if sum(d.values()) != 1 or min(d.values()) < 0:
                    return False, f"{lam} N={N} p={p}"
                n += 1
    return True, f"{n} states"


@check("samplers")
def chain_law_exact() -> tuple[bool, str]:
    n = 0
    for p in (2, 3):
        for N in (1, 2, 3):
            law = oracles.chain_law(N, p, 6)
            for lam in enumerate_partitions(6):
                if law.get(lam, Fraction(0)) != young.p_alg_N(lam, N, p):
                    return False, f"{lam} N={N} p={p}"
                n += 1
    return True, f"{n} exact equalities"


@check("samplers")
def chain_limit() -> tuple[bool, str]:
    worst = Fraction(0)
    for lam in enumerate_partitions(4):
        d = abs(young.p_output_N(lam, 20, 2) - measure.cl_prob(lam, 2).value)
        worst = max(worst, d)
    return worst < Fraction(1, 10**5), f"max |P(output = lam at N=20) - P(lam)| = {float(worst):.2e}"


@check("samplers")
def ytab_vs_cl() -> tuple[bool, str]:
    rng = np.random.default_rng(2024)
    samples = young.ytab_samples(2, rng, 100_000, 1e-6)
    cmp = stats_compare(SampleSummary.from_samples(samples, 2024, "ytab"), cl_law(2, 4), 4)
    return cmp.tv < Fraction(1, 100), f"TV {float(cmp.tv):.4f}, chi2 p-value {cmp.pvalue:.3f}"


@check("samplers")
def cokernel_vs_chain() -> tuple[bool, str]:
    rng = np.random.default_rng(11)
    samples, sat = fplinalg.cokernel_samples(2, 2, 12, rng, 100_000)
    law = {lam: young.p_output_N(lam, 2, 2) for lam in enumerate_partitions(10)}
    cmp = stats_compare(SampleSummary.from_samples(samples, 11, "cokernel"), law, 6)
    return cmp.tv < Fraction(2, 100), f"TV {float(cmp.tv):.4f}, saturated {sat}"


@check("samplers")
def uquotient_vs_uprob() -> tuple[bool, str]:
    rng = np.random.default_rng(5)
    hs = young.ytab_samples(2, rng, 100_000)
    out = [fplinalg.quotient_by_random_elements(h, 1, 2, rng).to_partition() for h in hs]
    ctx = measure.MeasureContext(2)
    law = {lam: measure.u_prob(lam, 1, ctx).value for lam in enumerate_partitions(8)}
    cmp = stats_compare(SampleSummary.from_samples(out, 5, "uquotient"), law, 4)
    return cmp.tv < Fraction(2, 100), f"TV {float(cmp.tv):.4f}"


@check("samplers")
def gl_acceptance_rate() -> tuple[bool, str]:
    rng = np.random.default_rng(3)
    N = 100_000
    ranks = fplinalg.rank_mod_p_batch(fplinalg.random_matrices(4, 2, rng, N), 2)
    rate = float(np.mean(ranks == 4))
    target = float(measure.phi(4, Fraction(1, 2)))
    sigma = (target * (1 - target) / N) ** 0.5
    return abs(rate - target) < 3 * sigma, f"rate {rate:.4f} vs {target:.4f}"


@check("samplers")
def matrix_vs_exact() -> tuple[bool, str]:
    rng = np.random.default_rng(17)
    mats, _ = fplinalg.random_gl_batch(4, 2, rng, 100_000)
    samples = fplinalg.partition_at_batch(mats, 2, 1)
    cmp = stats_compare(SampleSummary.from_samples(samples, 17, "matrix"),
                        conjugacy.exact_marginal(4, 2, 1))
    return cmp.tv < Fraction(2, 100), f"TV {float(cmp.tv):.4f}, chi2 p-value {cmp.pvalue:.3f}"


# ------------------------------------------------------------------- conjugacy

@check("conjugacy")
def class_size_sums() -> tuple[bool, str]:
    for p, nmax in ((2, 6), (3, 4)):
        for n in range(1, nmax + 1):
            r = conjugacy.cycle_index_check(n, p)
            if r["failures"]:
                return False, f"n={n} p={p}: {r['failures']}"
    return True, "sum of class sizes = |GL(n,p)|, class counts match the generating function"


@check("conjugacy")
def necklace_counts() -> tuple[bool, str]:
    for p in (2, 3):
        for d in range(1, 7):
            total = sum(e * len(conjugacy.irreducible_polys(p, e)) for e in range(1, d + 1) if d % e == 0)
            if total != p**d:
                return False, f"p={p} d={d}"
    return True, "sum_{e|d} e N_e = p^d for d <= 6"


@check("conjugacy")
def limit_bridge() -> tuple[bool, str]:
    tvs = [tv_to_cl(conjugacy.exact_marginal(n, 2, 1), 2) for n in range(2, 9)]
    decreasing = all(b.upper < a.lower for a, b in zip(tvs, tvs[1:]))
    final = tvs[-1].upper < Fraction(1, 100)
    detail = ", ".join(f"{float(t.value):.4f}" for t in tvs)
    return decreasing and final, f"TV for n=2..8: {detail}; need < 0.01 at n=8"


@check("conjugacy")
def eigenvalue_independence() -> tuple[bool, str]:
    for p, n in ((3, 4), (5, 3)):
        laws = [conjugacy.exact_marginal(n, p, a) for a in range(1, p)]
        if any(l != laws[0] for l in laws):
            return False, f"p={p} n={n}"
    return True, "marginal identical for every a in F_p^*, p in (3, 5)"


def iter_suite_names() -> Iterator[str]:
    yield "all"
    yield from SUITES
