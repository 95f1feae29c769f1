"""Cohen-Lenstra weights, probabilities, zeta functions and closed-form statistics.

Closed forms return :class:`~cohen_lenstra.qseries.EvalResult` intervals. Every
one of them has a brute-force counterpart in :mod:`cohen_lenstra.oracles` that
sums weights over explicitly enumerated partitions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .partitions import (
    Partition,
    ShapeLike,
    as_partition,
    aut_order,
    check_prime,
    enumerate_partitions,
    gl_order,
    partitions_of,
)
from .qseries import (
    CoefficientBound,
    EulerProduct,
    EvalResult,
    QSeries,
    eisenstein,
    eval_at,
)


@dataclass(frozen=True)
class MeasureContext:
    """Prime ``p``, series/product truncation ``T`` and oracle order bound ``B``."""

    p: int
    T: int = 64
    B: Optional[int] = None

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.T < 0:
            raise ValueError("T must be >= 0")
        if self.B is None:
            object.__setattr__(self, "B", 30 if self.p == 2 else 15)
        if self.B < 0:
            raise ValueError("B must be >= 0")

    @property
    def q(self) -> Fraction:
        return Fraction(1, self.p)


def _ctx(ctx: MeasureContext | int) -> MeasureContext:
    return ctx if isinstance(ctx, MeasureContext) else MeasureContext(ctx)


def phi(m: int, q: Fraction) -> Fraction:
    """``prod_{i=1}^{m} (1 - q^i)``; 1 for ``m <= 0``."""
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - q**i
    return out


def product_tail(ctx: MeasureContext, start: int = 1) -> EvalResult:
    """``prod_{i >= start} (1 - p^-i)`` as an interval."""
    return eval_at(EulerProduct(lambda i: i >= start, f"i >= {start}"), ctx.p, ctx.T).coarsen()


def p_trivial(ctx: MeasureContext | int) -> EvalResult:
    """``P(0) = prod_{i>=1} (1 - p^-i)``."""
    return product_tail(_ctx(ctx), 1)


def weight(lam: ShapeLike, ctx: MeasureContext | int) -> Fraction:
    """Cohen-Lenstra weight ``1 / #Aut``."""
    return Fraction(1, aut_order(lam, _ctx(ctx).p))


def total_weight(ctx: MeasureContext | int) -> EvalResult:
    return (1 / p_trivial(ctx)).coarsen()


def cl_prob(lam: ShapeLike, ctx: MeasureContext | int) -> EvalResult:
    ctx = _ctx(ctx)
    return p_trivial(ctx) * weight(lam, ctx)


def _group_elements(parts: tuple[int, ...], p: int):
    return itertools.product(*(range(p**e) for e in parts))


def _generated_subgroup(gens, mods: tuple[int, ...]) -> set:
    sub = {tuple(0 for _ in mods)}
    for g in gens:
        if g in sub:
            continue
        new = set(sub)
        frontier = list(sub)
        step = g
        while True:
            shifted = {tuple((a + b) % m for a, b, m in zip(h, step, mods)) for h in frontier}
            if shifted <= new:
                break
            new |= shifted
            frontier = list(shifted)
        sub = new
    return sub


def surjection_count(shape: ShapeLike, k: int, ctx: MeasureContext | int,
                     budget: int = 2**24) -> int:
    """Number of ``k``-tuples of group elements that generate the group.

    Each such tuple is the image of the standard basis under a surjection
    ``Z^k -> G``. Exhaustive; refuses when ``|G|^k`` exceeds ``budget``.
    """
    ctx = _ctx(ctx)
    parts = tuple(as_partition(shape))
    p = ctx.p
    if k < 0:
        raise ValueError("k must be >= 0")
    mods = tuple(p**e for e in parts)
    order = math.prod(mods)
    if order**k > budget:
        raise ValueError(f"{order}^{k} tuples exceeds the enumeration budget {budget}")
    elements = list(_group_elements(parts, p))
    count = 0
    for gens in itertools.product(elements, repeat=k):
        if len(_generated_subgroup(gens, mods)) == order:
            count += 1
    return count


def twisted_weight_wk(lam: ShapeLike, k: int, ctx: MeasureContext | int) -> Fraction:
    """``w_k = w * prod_{i=k-r+1}^{k} (1 - q^i)`` for ``k >= r = rank``, else 0."""
    ctx = _ctx(ctx)
    lam = as_partition(lam)
    if k < 0:
        raise ValueError("k must be >= 0")
    r = lam.rank
    if k < r:
        return Fraction(0)
    out = weight(lam, ctx)
    for i in range(k - r + 1, k + 1):
        out *= 1 - ctx.q**i
    return out


def zeta_k(k: int, s: int | Fraction, ctx: MeasureContext | int) -> Fraction:
    """``prod_{i=1}^{k} 1/(1 - p^{-s-i})`` for integer ``s``."""
    ctx = _ctx(ctx)
    s = Fraction(s)
    if s.denominator != 1:
        raise ValueError("exact zeta values need integer s; use zeta_k_float")
    s = s.numerator
    out = Fraction(1)
    for i in range(1, k + 1):
        e = s + i
        if e == 0:
            raise ZeroDivisionError(f"zeta_{k}({s}) has a pole (factor i={i})")
        out /= 1 - Fraction(ctx.p) ** (-e)
    return out


def zeta_k_float(k: int, s: float, p: int) -> float:
    out = 1.0
    for i in range(1, k + 1):
        f = 1.0 - p ** (-(s + i))
        if f == 0:
            raise ZeroDivisionError("pole")
        out /= f
    return out


@dataclass(frozen=True)
class RankGrowth:
    """Certifies ``|f(G)| <= scale * p^(rank_power * rank(G))`` for every group."""

    scale: Fraction = Fraction(1)
    rank_power: int = 0


def _rank_series_bound(q: Fraction, a: int) -> Fraction:
    # sum_{r>=0} q^(r^2 - (1+a) r); terms with r >= a+2 are <= q^r
    R = a + 24
    head = sum((q ** (r * r - (1 + a) * r) for r in range(R + 1)), Fraction(0))
    return head + q ** (R + 1) / (1 - q)


def expected_value(f: Callable[[Partition], Fraction], u: int, ctx: MeasureContext | int,
                   growth: Optional[RankGrowth] = None) -> EvalResult:
    """``E_u(f)``: expectation of ``f`` under the u-twisted measure (``u = 0`` is plain CL).

    Sums ``w(G) f(G) p^{-u ord_p G}`` over all groups with ``ord_p <= B`` and
    multiplies by ``prod_{i>u}(1 - p^-i)``, the reciprocal of the limiting zeta
    value. The groups left out are bounded using ``growth``; a rank-``r``
    order-``n`` group carries at most ``q^{n + r^2 - r} / P(0)^3`` weight.
    """
    ctx = _ctx(ctx)
    if growth is None:
        raise ValueError("expected_value needs a RankGrowth bound for f")
    if u < 0:
        raise ValueError("u must be >= 0")
    q = ctx.q
    head = Fraction(0)
    for lam in enumerate_partitions(ctx.B):
        head += weight(lam, ctx) * Fraction(f(lam)) * q ** (u * lam.size)
    p0 = p_trivial(ctx)
    p0_low = p0.lower
    tail = (Fraction(growth.scale) * _rank_series_bound(q, growth.rank_power)
            * q ** ((u + 1) * (ctx.B + 1)) / ((1 - q ** (u + 1)) * p0_low**3))
    return (EvalResult(head, tail) * product_tail(ctx, u + 1)).coarsen()


def prob_order(n: int, ctx: MeasureContext | int) -> EvalResult:
    """``P(ord_p G = n) = q^n prod_{i>n} (1 - q^i)``."""
    ctx = _ctx(ctx)
    if n < 0:
        raise ValueError("n must be >= 0")
    return product_tail(ctx, n + 1) * ctx.q**n


def prob_rank(r: int, ctx: MeasureContext | int) -> EvalResult:
    """``P(rk G = r) = P(0) q^{r^2} / phi_r(q)^2``."""
    ctx = _ctx(ctx)
    if r < 0:
        raise ValueError("r must be >= 0")
    return p_trivial(ctx) * (ctx.q ** (r * r) / phi(r, ctx.q) ** 2)


def prob_rank_le1(ctx: MeasureContext | int) -> EvalResult:
    """Probability of a cyclic group (rank at most one)."""
    return prob_rank(0, ctx) + prob_rank(1, ctx)


def prob_rank_order(n: int, r: int, ctx: MeasureContext | int) -> EvalResult:
    """Joint probability of ``ord_p G = n`` and ``rk G = r``."""
    ctx = _ctx(ctx)
    if n < 0 or r < 0:
        raise ValueError("n and r must be >= 0")
    if r > n or (r == 0 and n > 0):
        return EvalResult(Fraction(0))
    q = ctx.q
    factor = (q ** (n - r) * phi(n - 1, q)
              / (gl_order(r, ctx.p) * phi(r - 1, q) * phi(n - r, q)))
    return p_trivial(ctx) * factor


def exponent_filter(e: int) -> Callable[[int], bool]:
    m = 2 * e + 3
    return lambda i: i % m in (0, (e + 1) % m, (-(e + 1)) % m)


def prob_exponent_le(e: int, ctx: MeasureContext | int) -> EvalResult:
    """``P(exp_p G <= e)``: product of ``(1 - q^i)`` over ``i = 0, +-(e+1) mod 2e+3``."""
    ctx = _ctx(ctx)
    if e < 0:
        raise ValueError("e must be >= 0")
    prod = EulerProduct(exponent_filter(e), f"i = 0, +-{e + 1} mod {2 * e + 3}")
    return eval_at(prod, ctx.p, ctx.T).coarsen()


def moment_p_rank(k: int, ctx: MeasureContext | int) -> Fraction:
    """``E[p^{k rk G}]`` as the finite q-binomial sum."""
    ctx = _ctx(ctx)
    if k < 0:
        raise ValueError("k must be >= 0")
    q = ctx.q
    total = Fraction(0)
    for i in range(k + 1):
        total += q ** (-i * (k - i)) * phi(k, q) / (phi(i, q) * phi(k - i, q))
    return total


Monomial = tuple[int, ...]


def mehnert_f_poly(k: int) -> dict[Monomial, Fraction]:
    """Polynomial ``f_k`` in ``X_1..X_k`` as ``{exponent vector: coefficient}``.

    One monomial ``k! prod X_e^r / (r! (e!)^r)`` per group of order ``p^k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    poly: dict[Monomial, Fraction] = {}
    for lam in partitions_of(k):
        coeff = Fraction(math.factorial(k))
        exps = [0] * k
        for e, r in lam.to_group_shape():
            coeff /= math.factorial(r) * math.factorial(e) ** r
            exps[e - 1] = r
        key = tuple(exps)
        poly[key] = poly.get(key, Fraction(0)) + coeff
    return poly


def format_poly(poly: dict[Monomial, Fraction]) -> str:
    terms = []
    for mono, c in sorted(poly.items(), reverse=True):
        factors = [f"X_{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
        lead = "" if c == 1 else f"{c}*"
        terms.append(lead + "*".join(factors))
    return " + ".join(terms)


def mehnert_moment(k: int, T: int) -> QSeries:
    """``M_k = f_k(E_1, ..., E_k)``, the k-th moment of the local order as a q-series."""
    poly = mehnert_f_poly(k)
    E = [eisenstein(j, T) for j in range(1, k + 1)]
    total = QSeries.constant(0, T, exact=False)
    for mono, c in poly.items():
        term = QSeries.constant(c, T, exact=False)
        for j, e in enumerate(mono):
            if e:
                term = term * E[j] ** e
        total = total + term
    return total


def mehnert_growth(k: int) -> CoefficientBound:
    """Coefficient bound for ``M_k``.

    ``sigma_{j-1}(n) <= n^j`` and each product of ``m`` such series adds at most
    one power of ``n``, so with ``m <= k`` factors the bound is ``n^{2k-1}`` times
    the sum of the (positive) coefficients of ``f_k``.
    """
    scale = sum(mehnert_f_poly(k).values(), Fraction(0))
    return CoefficientBound(scale, 2 * k - 1)


def eval_moment(series: QSeries, growth: CoefficientBound, p: int) -> EvalResult:
    return eval_at(series, p, growth=growth)


def moment_value(name: str, p: int, tol: Fraction = Fraction(1, 10**7),
                 T0: int = 24) -> EvalResult:
    """``M_1..M_4`` or the variance ``V = E_2`` at ``q = 1/p`` to within ``tol``."""
    check_prime(p)
    if name == "V":
        make = lambda T: eisenstein(2, T)
        growth = CoefficientBound(Fraction(1), 2)
    elif name.startswith("M") and name[1:].isdigit():
        k = int(name[1:])
        if k < 1:
            raise ValueError("moments start at M1")
        make = lambda T: mehnert_moment(k, T)
        growth = mehnert_growth(k)
    else:
        raise ValueError(f"unknown moment {name!r}")
    T = T0
    while True:
        try:
            res = eval_at(make(T), p, growth=growth)
        except ValueError:
            res = None
        if res is not None and res.tail_bound < tol:
            return res
        T = int(T * 1.5) + 1


def u_prob(lam: ShapeLike, u: int, ctx: MeasureContext | int) -> EvalResult:
    """``P_u(G) = |G|^{-u} w(G) prod_{i>u} (1 - p^-i)`` with ``|G| = p^{ord_p G}``."""
    ctx = _ctx(ctx)
    if u < 1:
        raise ValueError("u must be >= 1")
    lam = as_partition(lam)
    return product_tail(ctx, u + 1) * (weight(lam, ctx) * ctx.q ** (u * lam.size))


def order_tail_bound(ctx: MeasureContext, B: Optional[int] = None) -> Fraction:
    """Upper bound on ``P(ord_p G > B)``; uses ``P(ord_p G = n) <= q^n``."""
    B = ctx.B if B is None else B
    return ctx.q ** (B + 1) / (1 - ctx.q)
