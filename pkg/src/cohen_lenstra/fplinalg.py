"""Matrices over ``Z/p^K``: GL(n, p) sampling, Jordan data, Smith form, cokernels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .partitions import GroupShape, Partition, ShapeLike, as_partition, check_prime


@dataclass(frozen=True)
class MatrixModP:
    """Square matrix with entries reduced modulo ``p^K``."""

    entries: np.ndarray
    p: int
    K: int = 1

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.K < 1:
            raise ValueError("K must be >= 1")
        a = np.array(self.entries, dtype=np.int64) % self.p**self.K
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def __matmul__(self, other: "MatrixModP") -> "MatrixModP":
        return MatrixModP(self.entries @ other.entries, self.p, self.K)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixModP):
            return NotImplemented
        return (self.p, self.K) == (other.p, other.K) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.p, self.K, self.entries.tobytes()))


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def rank_mod_p_batch(stack: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices, shape ``(batch, rows, cols)``."""
    A = np.array(stack, dtype=np.int64) % p
    if A.ndim == 2:
        A = A[None]
    nb, n, m = A.shape
    inv = _inverse_table(p)
    row = np.zeros(nb, dtype=np.int64)
    rows_idx = np.arange(n)
    for col in range(m):
        mask = (A[:, :, col] != 0) & (rows_idx[None, :] >= row[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        r0 = row[b]
        pr = mask[b].argmax(axis=1)
        top = A[b, r0].copy()
        A[b, r0] = A[b, pr]
        A[b, pr] = top
        pivot_rows = (A[b, r0] * inv[A[b, r0, col]][:, None]) % p
        A[b, r0] = pivot_rows
        factors = A[b, :, col].copy()
        factors[np.arange(len(b)), r0] = 0
        A[b] = (A[b] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        row[b] += 1
    return row


def rank_mod_p(M, p: int) -> int:
    a = M.entries if isinstance(M, MatrixModP) else M
    return int(rank_mod_p_batch(np.asarray(a)[None], p)[0])


def random_matrices(n: int, p: int, rng: np.random.Generator, count: int, K: int = 1) -> np.ndarray:
    return rng.integers(0, p**K, size=(count, n, n), dtype=np.int64)


def random_gl_batch(n: int, p: int, rng: np.random.Generator, count: int) -> tuple[np.ndarray, int]:
    """``count`` uniform elements of GL(n, p) by rejection; also returns the number of attempts."""
    check_prime(p)
    out = np.empty((0, n, n), dtype=np.int64)
    attempts = 0
    while len(out) < count:
        need = count - len(out)
        batch = random_matrices(n, p, rng, max(16, int(need * 1.2 / _gl_density(n, p)) + 1))
        attempts_in_batch = len(batch)
        ok = rank_mod_p_batch(batch, p) == n
        accepted = batch[ok]
        if len(accepted) > need:
            # attempts counted up to the last accepted matrix
            last = np.flatnonzero(ok)[need - 1]
            attempts_in_batch = int(last) + 1
            accepted = accepted[:need]
        attempts += attempts_in_batch
        out = np.concatenate([out, accepted])
    return out, attempts


def _gl_density(n: int, p: int) -> float:
    d = 1.0
    for i in range(1, n + 1):
        d *= 1 - float(p) ** -i
    return d


def random_gl(n: int, p: int, rng: np.random.Generator) -> MatrixModP:
    """Uniform element of GL(n, p): draw uniform matrices until one is invertible."""
    check_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    while True:
        M = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if rank_mod_p(M, p) == n:
            return MatrixModP(M, p)


def nullity_sequence_batch(stack: np.ndarray, p: int, a: int) -> np.ndarray:
    """``d_j = nullity((M - aI)^j)`` for ``j = 0..n``, shape ``(batch, n+1)``."""
    A = np.array(stack, dtype=np.int64) % p
    nb, n, _ = A.shape
    B = (A - a * np.eye(n, dtype=np.int64)[None]) % p
    P = np.broadcast_to(np.eye(n, dtype=np.int64), (nb, n, n)).copy()
    d = np.zeros((nb, n + 1), dtype=np.int64)
    for j in range(1, n + 1):
        P = np.matmul(P, B) % p
        d[:, j] = n - rank_mod_p_batch(P, p)
    return d


def _partition_from_nullities(d) -> Partition:
    conj = [int(d[j] - d[j - 1]) for j in range(1, len(d)) if d[j] > d[j - 1]]
    return Partition(conj).conjugate()


def partition_at_batch(stack: np.ndarray, p: int, a: int) -> list[Partition]:
    if a % p == 0:
        raise ValueError("a must be a unit of F_p")
    d = nullity_sequence_batch(stack, p, a)
    return [_partition_from_nullities(row) for row in d]


def partition_at(M: MatrixModP, a: int) -> Partition:
    """Jordan partition of ``M`` at the eigenvalue ``a``: block sizes for ``X - a``."""
    if M.K != 1:
        raise ValueError("partition_at works over F_p (K = 1)")
    return partition_at_batch(M.entries[None], M.p, a)[0]


def fixed_space_dim(M: MatrixModP) -> int:
    return M.n - rank_mod_p(M.entries - np.eye(M.n, dtype=np.int64), M.p)


def valuation(x: int, p: int, K: int) -> int:
    """p-adic valuation of a residue mod ``p^K``; zero counts as ``K``."""
    x %= p**K
    if x == 0:
        return K
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def smith_normal_form_p(A, p: Optional[int] = None, K: Optional[int] = None) -> list[int]:
    """Valuations of the Smith diagonal of ``A`` over ``Z/p^K``, sorted decreasing.

    Works on ``rows x cols`` input; the cokernel of ``Z^cols -> Z^rows`` is the
    product of ``Z/p^v`` over the returned list (``v = K`` means a zero
    diagonal entry). Rows beyond ``cols`` contribute ``K``.
    """
    if isinstance(A, MatrixModP):
        p, K = A.p, A.K if K is None else K
        A = A.entries
    if p is None or K is None:
        raise ValueError("p and K are required for a raw array")
    m = p**K
    M = [[int(x) % m for x in row] for row in np.asarray(A)]
    r = len(M)
    c = len(M[0]) if r else 0
    exps = []
    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if M[i][j]:
                    v = valuation(M[i][j], p, K)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            exps.extend([K] * (min(r, c) - t))
            break
        v, i, j = best
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        pv = p**v
        unit = M[t][t] // pv
        inv = pow(unit, -1, m)
        M[t] = [(x * inv) % m for x in M[t]]
        for i2 in range(t + 1, r):
            f = M[i2][t] // pv
            if f:
                M[i2] = [(x - f * y) % m for x, y in zip(M[i2], M[t])]
        for j2 in range(t + 1, c):
            f = M[t][j2] // pv
            if f:
                for row in M:
                    row[j2] = (row[j2] - f * row[t]) % m
        exps.append(v)
    exps.extend([K] * max(0, r - c))
    return sorted(exps, reverse=True)


def cokernel_partition(A, p: int, K: int) -> tuple[Partition, bool]:
    """Cokernel of ``A`` over ``Z/p^K`` as a partition, plus a saturation flag."""
    exps = smith_normal_form_p(A, p, K)
    return Partition(v for v in exps if v > 0), any(v >= K for v in exps)


def cokernel_sample(n: int, p: int, K: int, rng: np.random.Generator) -> tuple[Partition, bool]:
    """Cokernel of a uniform ``n x n`` matrix over ``Z/p^K``.

    Parts equal to ``K`` stand for "at least ``K``"; the flag reports them.
    """
    check_prime(p)
    A = rng.integers(0, p**K, size=(n, n), dtype=np.int64)
    return cokernel_partition(A, p, K)


def cokernel_samples(n: int, p: int, K: int, rng: np.random.Generator,
                     count: int) -> tuple[list[Partition], int]:
    """``count`` cokernel draws and the number of saturated ones."""
    check_prime(p)
    stack = random_matrices(n, p, rng, count, K)
    out = []
    saturated = 0
    for A in stack:
        lam, sat = cokernel_partition(A, p, K)
        out.append(lam)
        saturated += sat
    return out, saturated


def quotient_by_random_elements(shape: ShapeLike, u: int, p: int,
                                rng: np.random.Generator) -> GroupShape:
    """``H / <g_1, ..., g_u>`` for ``u`` uniform elements ``g_i`` of ``H``."""
    check_prime(p)
    if u < 1:
        raise ValueError("u must be >= 1")
    parts = as_partition(shape)
    r = len(parts)
    if r == 0:
        return GroupShape()
    K = parts[0] + 1
    rel = np.zeros((r, r + u), dtype=np.int64)
    for i, e in enumerate(parts):
        rel[i, i] = p**e
        rel[i, r:] = rng.integers(0, p**e, size=u)
    lam, _ = cokernel_partition(rel, p, K)
    return lam.to_group_shape()
