"""Brute-force counterparts of the closed forms.

Nothing in here uses a closed-form probability except to bound the mass that
lies beyond an explicit enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np

from .partitions import Partition, ShapeLike, as_partition, aut_order, check_prime, enumerate_partitions
from .measure import MeasureContext, _ctx, order_tail_bound, p_trivial
from .qseries import EvalResult, QSeries


def _rref_insert(basis: tuple[tuple[int, ...], ...], vec: np.ndarray, p: int):
    """Add a reduced, leading-one vector to an RREF basis over F_p."""
    v = tuple(int(x) for x in vec)
    piv = next(i for i, x in enumerate(v) if x)
    rows = []
    for row in basis:
        c = row[piv]
        if c:
            row = tuple((a - c * b) % p for a, b in zip(row, v))
        rows.append(row)
    rows.append(v)
    rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(rows)


def aut_count_bruteforce(shape: ShapeLike, p: int) -> int:
    """``#Aut(G)`` by counting generator images.

    A homomorphism ``G -> G`` is fixed by the images ``h_j`` of the standard
    generators, subject to ``p^{e_j} h_j = 0``. It is bijective iff it is onto,
    iff the images generate ``G``, iff their reductions span ``G/pG``. The
    count walks over the generators one at a time, memoising on the span of
    the reductions chosen so far; the candidate images are listed explicitly.
    """
    check_prime(p)
    parts = tuple(as_partition(shape))
    r = len(parts)
    if r == 0:
        return 1
    mods = [p**e for e in parts]
    # multiplicity of each reduction class among allowed images of generator j
    reduced_index = {}
    red_vectors = np.array(list(itertools.product(range(p), repeat=r)), dtype=np.int64)
    for idx, v in enumerate(red_vectors):
        reduced_index[tuple(v)] = idx
    mult = np.zeros((r, len(red_vectors)), dtype=np.int64)
    for x in itertools.product(*(range(m) for m in mods)):
        key = reduced_index[tuple(xi % p for xi in x)]
        for j, e in enumerate(parts):
            if all((xi * p**e) % m == 0 for xi, m in zip(x, mods)):
                mult[j, key] += 1
    inverses = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    powers = p ** np.arange(r - 1, -1, -1, dtype=np.int64)
    memo: dict = {}

    def completions(basis: tuple) -> int:
        j = len(basis)
        if j == r:
            return 1
        if basis in memo:
            return memo[basis]
        res = red_vectors.copy()
        for row in basis:
            pv = next(i for i, x in enumerate(row) if x)
            res = (res - res[:, pv:pv + 1] * np.array(row, dtype=np.int64)) % p
        nz = res.any(axis=1) & (mult[j] > 0)
        res = res[nz]
        weights = mult[j][nz]
        lead = (res != 0).argmax(axis=1)
        inv = inverses[res[np.arange(len(res)), lead]]
        res = (res * inv[:, None]) % p
        keys = res @ powers
        uniq, first, which = np.unique(keys, return_index=True, return_inverse=True)
        sums = np.bincount(which.ravel(), weights=weights, minlength=len(uniq))
        total = 0
        for idx, w in zip(first, sums):
            total += int(round(w)) * completions(_rref_insert(basis, res[idx], p))
        memo[basis] = total
        return total

    return completions(())


def aut_count_naive(shape: ShapeLike, p: int, budget: int = 10**6) -> int:
    """``#Aut(G)`` by listing every homomorphism and checking its image size."""
    parts = tuple(as_partition(shape))
    mods = tuple(p**e for e in parts)
    elements = list(itertools.product(*(range(m) for m in mods)))
    order = len(elements)
    allowed = []
    for e in parts:
        allowed.append([x for x in elements
                        if all((xi * p**e) % m == 0 for xi, m in zip(x, mods))])
    total = 1
    for a in allowed:
        total *= len(a)
    if total > budget:
        raise ValueError(f"{total} homomorphisms exceeds the budget {budget}")
    count = 0
    for images in itertools.product(*allowed):
        image = set()
        for coeffs in elements:
            image.add(tuple(sum(c * h[i] for c, h in zip(coeffs, images)) % mods[i]
                            for i in range(len(mods))))
        if len(image) == order:
            count += 1
    return count


def naive_euler_product(T: int, index_filter: Optional[Callable[[int], bool]] = None) -> QSeries:
    """Multiply out ``(1 - q^i)`` one factor at a time with generic series products."""
    out = QSeries.constant(1, T, exact=False)
    for i in range(1, T + 1):
        if index_filter is None or index_filter(i):
            out = out * QSeries.polynomial([1] + [0] * (i - 1) + [-1]).truncate(T)
    return out


def naive_eisenstein(k: int, T: int) -> QSeries:
    coeffs = [0]
    for n in range(1, T + 1):
        coeffs.append(sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0))
    return QSeries(coeffs, T)


@lru_cache(maxsize=None)
def weight_table(p: int, B: int) -> tuple[tuple[Partition, Fraction], ...]:
    """Every group of order at most ``p^B`` with its weight ``1/#Aut``."""
    return tuple((lam, Fraction(1, aut_order(lam, p))) for lam in enumerate_partitions(B))


def weight_sum(pred: Callable[[Partition], bool], ctx: MeasureContext | int,
               B: Optional[int] = None, finite: bool = False) -> EvalResult:
    """``P(pred)`` as ``sum w(G) / w(all)`` over groups of order at most ``p^B``.

    ``finite=True`` asserts that ``pred`` fails beyond order ``p^B`` so no
    tail term is added.
    """
    ctx = _ctx(ctx)
    B = ctx.B if B is None else B
    head = sum((w for lam, w in weight_table(ctx.p, B) if pred(lam)), Fraction(0))
    prob = p_trivial(ctx) * head
    if finite:
        return prob
    return EvalResult(prob.value, prob.tail_bound + order_tail_bound(ctx, B))


def u_weight_sum(lam: ShapeLike, u: int, ctx: MeasureContext | int,
                 B: Optional[int] = None) -> EvalResult:
    """``P_u(G)`` as ``w(G) |G|^-u`` over the truncated sum of ``w(H) |H|^-u``.

    The normalizer is summed directly instead of taken from a product. The
    missing terms satisfy ``sum_{|H| = p^n} w(H) <= q^n / P(0)``.
    """
    ctx = _ctx(ctx)
    B = ctx.B if B is None else B
    q = ctx.q
    lam = as_partition(lam)
    den = sum((w * q ** (u * mu.size) for mu, w in weight_table(ctx.p, B)), Fraction(0))
    tail = q ** ((u + 1) * (B + 1)) / ((1 - q ** (u + 1)) * p_trivial(ctx).lower)
    num = Fraction(1, aut_order(lam, ctx.p)) * q ** (u * lam.size)
    hi, lo = num / den, num / (den + tail)
    return EvalResult((hi + lo) / 2, (hi - lo) / 2)


def functional_sum(f: Callable[[Partition], Fraction], ctx: MeasureContext | int,
                   B: Optional[int] = None) -> Fraction:
    """Exact truncated ``sum_{ord_p <= B} P(G) f(G)`` with ``P(0)`` left symbolic.

    Returns ``sum w(G) f(G)``; multiply by ``P(0)`` for the probability.
    """
    ctx = _ctx(ctx)
    B = ctx.B if B is None else B
    return sum((w * Fraction(f(lam)) for lam, w in weight_table(ctx.p, B)), Fraction(0))


def _step2(state: Partition, N: int, p: int) -> list[tuple[Partition, Fraction]]:
    lam = list(state)
    den = p**N - 1
    out = []
    prev = None
    for s in range(len(lam) + 1):
        cur = lam[s] if s < len(lam) else 0
        if s == 0:
            num = p ** (N - cur) - 1
        else:
            num = p ** (N - cur) - p ** (N - prev)
        if num:
            new = lam.copy()
            if s < len(lam):
                new[s] += 1
            else:
                new.append(1)
            out.append((Partition(new), Fraction(num, den)))
        prev = cur
    return out


def chain_law(N: int, p: int, max_size: int) -> dict[Partition, Fraction]:
    """Exact law of the internal tableau state when coin ``N`` comes up tails.

    Explores every head/tail history that ends in a state with at most
    ``max_size`` boxes; the returned probabilities are exact for those states.
    """
    dist: dict[Partition, Fraction] = {Partition(): Fraction(1)}
    for M in range(1, N + 1):
        heads = Fraction(1, p**M)
        new: dict[Partition, Fraction] = {}
        cur = dict(dist)
        h = 0
        while cur:
            stop = (1 - heads) * heads**h
            for lam, pr in cur.items():
                new[lam] = new.get(lam, Fraction(0)) + pr * stop
            nxt: dict[Partition, Fraction] = {}
            for lam, pr in cur.items():
                if lam.size + 1 > max_size:
                    continue
                for mu, t in _step2(lam, M, p):
                    nxt[mu] = nxt.get(mu, Fraction(0)) + pr * t
            cur = nxt
            h += 1
        dist = new
    return dist


def cokernel_by_enumeration(A, p: int, K: int) -> Partition:
    """Cokernel of ``A`` over ``Z/p^K`` from element counts.

    Lists the column span ``I`` inside ``(Z/p^K)^n`` and counts, for each
    ``j``, the ``x`` with ``p^j x`` in ``I``; these counts are
    ``|I| p^{sum_i min(l_i, j)}`` for the cokernel partition ``l``.
    """
    A = np.asarray(A, dtype=np.int64) % p**K
    n = A.shape[0]
    m = p**K
    span = {tuple([0] * n)}
    for c in range(A.shape[1]):
        col = tuple(int(v) for v in A[:, c])
        frontier = set(span)
        while True:
            shifted = {tuple((a + b) % m for a, b in zip(x, col)) for x in frontier}
            if shifted <= span:
                break
            span |= shifted
            frontier = shifted
    counts = []
    elements = list(itertools.product(range(m), repeat=n))
    for j in range(K + 1):
        pj = p**j
        cnt = sum(1 for x in elements if tuple((pj * v) % m for v in x) in span)
        counts.append(cnt // len(span))
    logs = []
    for c in counts:
        e = 0
        while c > 1:
            c //= p
            e += 1
        logs.append(e)
    # logs[j] = sum_i min(l_i, j); successive differences give the conjugate
    conj = [logs[j] - logs[j - 1] for j in range(1, K + 1)]
    conj = [c for c in conj if c]
    return Partition(conj).conjugate()


def gl_elements(n: int, p: int) -> Iterable[np.ndarray]:
    """Every invertible ``n x n`` matrix over F_p (determinant by cofactor-free elimination)."""
    from .fplinalg import rank_mod_p

    for entries in itertools.product(range(p), repeat=n * n):
        M = np.array(entries, dtype=np.int64).reshape(n, n)
        if rank_mod_p(M, p) == n:
            yield M


def zeta_k_by_sum(k: int, s: int, ctx: MeasureContext | int,
                  B: Optional[int] = None) -> EvalResult:
    """``sum_G w_k(G) |G|^{-s}`` over groups of order at most ``p^B``, with tail bound."""
    from .measure import twisted_weight_wk

    ctx = _ctx(ctx)
    B = ctx.B if B is None else B
    q = ctx.q
    head = sum((twisted_weight_wk(lam, k, ctx) * q ** (s * lam.size)
                for lam in enumerate_partitions(B)), Fraction(0))
    # w_k <= w and sum_{|G|=p^n} w(G) <= q^n / P(0)
    tail = q ** ((s + 1) * (B + 1)) / ((1 - q ** (s + 1)) * p_trivial(ctx).lower)
    return EvalResult(head, tail)
