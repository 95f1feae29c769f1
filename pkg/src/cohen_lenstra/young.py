"""Fulman's Young Tableau Algorithm and the weighted Young lattice.

The tableau chain grows an internal partition box by box; its output is the
conjugate of the limiting state. The lattice walk starts at the empty
partition, uses the edge weights as transition probabilities and stops with
the leftover probability at each vertex. Vertices of the lattice are indexed
by conjugate partitions throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .partitions import Partition, aut_order, check_prime, covered_by, covers


@dataclass(frozen=True)
class ChainState:
    lam: Partition
    N: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Partition(self.lam))
        if self.N < 1:
            raise ValueError("coin level N must be >= 1")
        if self.lam.largest > self.N:
            raise ValueError(f"state {self.lam} impossible at level {self.N}")


def ytab_step2_distribution(state: ChainState, p: int) -> dict[int, Fraction]:
    """Row-choice law ``{S: probability}`` (rows numbered from 1) after a head at level N."""
    lam, N = state.lam, state.N
    den = p**N - 1
    out: dict[int, Fraction] = {}
    prev = 0
    for s in range(1, len(lam) + 2):
        cur = lam[s - 1] if s <= len(lam) else 0
        if s == 1:
            num = p ** (N - cur) - 1
        else:
            num = p ** (N - cur) - p ** (N - prev)
        out[s] = Fraction(num, den)
        prev = cur
    return out


def _add_box(lam: list[int], s: int) -> None:
    if s <= len(lam):
        lam[s - 1] += 1
    else:
        lam.append(1)


def _choose_row(lam: list[int], N: int, p: int, rng: np.random.Generator) -> int:
    # integer weights p^{N-l_s} - p^{N-l_{s-1}} sum to p^N - 1
    total = p**N - 1
    x = int(rng.integers(0, total)) if total < 2**62 else int(rng.random() * total)
    acc = 0
    prev = None
    for s in range(1, len(lam) + 2):
        cur = lam[s - 1] if s <= len(lam) else 0
        acc += (p ** (N - cur) - 1) if s == 1 else (p ** (N - cur) - p ** (N - prev))
        if x < acc:
            return s
        prev = cur
    raise AssertionError("row weights do not sum to p^N - 1")


def residual_additions(p: int, N: int) -> float:
    """Upper bound for the expected number of boxes added after level ``N``.

    ``sum_{M>N} p^-M / (1 - p^-M) <= p^-(N+1) / ((1 - p^-1)(1 - p^-(N+1)))``.
    """
    t = float(p) ** -(N + 1)
    return t / ((1 - 1 / p) * (1 - t))


def _stop_level(p: int, eps: float) -> int:
    N = 1
    while residual_additions(p, N) >= eps:
        N += 1
    return N


def ytab_sample(p: int, rng: np.random.Generator, eps: float = 1e-6) -> Partition:
    """One draw of the Young Tableau Algorithm, stopped once the residual is below ``eps``.

    The number of heads at level ``N`` is drawn from its geometric law
    instead of flipping coins one by one.
    """
    check_prime(p)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    last = _stop_level(p, eps)
    lam: list[int] = []
    for N in range(1, last + 1):
        heads = int(rng.geometric(1 - float(p) ** -N)) - 1
        for _ in range(heads):
            _add_box(lam, _choose_row(lam, N, p, rng))
    return Partition(lam).conjugate()


def ytab_samples(p: int, rng: np.random.Generator, count: int,
                 eps: float = 1e-6) -> list[Partition]:
    """``count`` independent draws; head counts for a whole level come from one vectorized call."""
    check_prime(p)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    last = _stop_level(p, eps)
    states: list[list[int]] = [[] for _ in range(count)]
    for N in range(1, last + 1):
        heads = rng.geometric(1 - float(p) ** -N, size=count) - 1
        for i in np.flatnonzero(heads):
            lam = states[i]
            for _ in range(int(heads[i])):
                _add_box(lam, _choose_row(lam, N, p, rng))
    return [Partition(lam).conjugate() for lam in states]


def p_alg_N(lam: Partition, N: int, p: int) -> Fraction:
    """Exact probability that the internal state is ``lam`` when coin ``N`` shows tails.

    ``prod_{i=N-l_1+1}^{N}(1-p^-i) * prod_{i=1}^{N}(1-p^-i) * w(lam')`` for
    ``l_1 <= N``. The weight is taken at the conjugate ``lam'``, the group the
    algorithm would output; the literal ``w(lam)`` already disagrees with the
    chain at ``N = 1``.
    """
    check_prime(p)
    lam = Partition(lam)
    if N < 1:
        raise ValueError("N must be >= 1")
    if lam.largest > N:
        return Fraction(0)
    q = Fraction(1, p)
    out = Fraction(1, aut_order(lam.conjugate(), p))
    for i in range(N - lam.largest + 1, N + 1):
        out *= 1 - q**i
    for i in range(1, N + 1):
        out *= 1 - q**i
    return out


def p_output_N(lam: Partition, N: int, p: int) -> Fraction:
    """Probability that the algorithm stopped at level ``N`` outputs ``lam``.

    The output is the conjugate of the internal state, so this is
    ``p_alg_N(lam')``. It tends to ``cl_prob(lam)`` as ``N`` grows, and it is
    also the cokernel law of a random ``N x N`` matrix over ``Z_p``.
    """
    return p_alg_N(Partition(lam).conjugate(), N, p)

def _grown_row(src: Partition, dst: Partition) -> int:
    if dst.size != src.size + 1 or not dst.contains(src):
        raise ValueError(f"{dst} does not cover {src}")
    for s in range(len(dst)):
        if s >= len(src) or dst[s] != src[s]:
            return s + 1
    raise AssertionError


def lattice_edge_weight(from_conj: Partition, to_conj: Partition, p: int) -> Fraction:
    """Edge weight ``m`` between conjugate-indexed vertices of the Young lattice."""
    src, dst = Partition(from_conj), Partition(to_conj)
    s = _grown_row(src, dst)
    top = src.largest
    if s == 1:
        return Fraction(1, p**top * (p ** (top + 1) - 1))
    cur = src[s - 1] if s <= len(src) else 0
    above = src[s - 2]
    q = Fraction(1, p)
    return (q**cur - q**above) / (p**top - 1)


def out_weight(conj: Partition, p: int) -> Fraction:
    """Sum of the edge weights leaving a vertex, computed edge by edge."""
    conj = Partition(conj)
    return sum((lattice_edge_weight(conj, mu, p) for mu in covers(conj)), Fraction(0))


def out_weight_closed(conj: Partition, p: int) -> Fraction:
    """``p / (p^{l'_1 + 1} - 1)``, or ``1/(p-1)`` at the empty vertex."""
    conj = Partition(conj)
    if not conj:
        return Fraction(1, p - 1)
    return Fraction(p, p ** (conj.largest + 1) - 1)


def lattice_path_weight_sum(lam: Partition, p: int, max_size: int = 14) -> Fraction:
    """Sum over saturated paths from ``()`` to ``lam'`` of the product of edge weights."""
    check_prime(p)
    lam = Partition(lam)
    if lam.size > max_size:
        raise ValueError(f"size {lam.size} exceeds the path budget {max_size}")
    return _path_sum(lam.conjugate(), p)


@lru_cache(maxsize=None)
def _path_sum(conj: Partition, p: int) -> Fraction:
    if not conj:
        return Fraction(1)
    return sum((_path_sum(nu, p) * lattice_edge_weight(nu, conj, p) for nu in covered_by(conj)),
               Fraction(0))


def lattice_walk_law(lam: Partition, p: int) -> Fraction:
    """Probability that the halting walk outputs ``lam``: path sum times the halting chance at ``lam'``."""
    lam = Partition(lam)
    return lattice_path_weight_sum(lam, p) * (1 - out_weight_closed(lam.conjugate(), p))


def lattice_walk_sample(p: int, rng: np.random.Generator, max_steps: int = 10_000) -> Partition:
    """Random walk on the lattice with halting; returns the conjugate of the final vertex."""
    check_prime(p)
    conj = Partition()
    for _ in range(max_steps):
        children = list(covers(conj))
        weights = [lattice_edge_weight(conj, mu, p) for mu in children]
        total = sum(weights, Fraction(0))
        assert total <= 1, "out-weight exceeds 1"
        x = rng.random()
        acc = 0.0
        for mu, w in zip(children, weights):
            acc += float(w)
            if x < acc:
                conj = mu
                break
        else:
            return conj.conjugate()
    raise RuntimeError("walk did not halt")
