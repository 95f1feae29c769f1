"""Conjugacy classes of GL(n, p) by rational canonical form data.

A class is a map from monic irreducible polynomials ``phi != X`` to
partitions with ``sum deg(phi) |lambda_phi| = n``. Centralizer orders use the
automorphism-count formula with ``p`` replaced by ``p^deg(phi)``; the class
sizes are checked to add up to ``|GL(n, p)|``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .partitions import Partition, aut_order_q, check_prime, gl_order, partitions_of


@dataclass(frozen=True, order=True)
class PolyFp:
    """Monic polynomial over F_p, coefficients stored constant term first."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        cs = tuple(int(c) % self.p for c in self.coeffs)
        if len(cs) < 2 or cs[-1] != 1:
            raise ValueError(f"need a monic polynomial of degree >= 1, got {cs}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def linear(cls, a: int, p: int) -> "PolyFp":
        """``X - a``."""
        return cls(((-a) % p, 1), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    @classmethod
    def parse(cls, text: str, p: int) -> "PolyFp":
        coeffs: dict[int, int] = {}
        for term in text.replace(" ", "").split("+"):
            if "x" not in term:
                coeffs[0] = coeffs.get(0, 0) + int(term)
                continue
            c, _, mono = term.rpartition("*") if "*" in term else ("1", "", term)
            k = int(mono.split("^")[1]) if "^" in mono else 1
            coeffs[k] = coeffs.get(k, 0) + int(c)
        deg = max(coeffs)
        return cls(tuple(coeffs.get(k, 0) for k in range(deg + 1)), p)


def _poly_mod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of ``a`` by monic ``b`` over F_p (constant term first)."""
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        lead = r[-1]
        shift = len(r) - 1 - db
        if lead:
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - lead * c) % p
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def _monic(p: int, d: int) -> Iterator[tuple[int, ...]]:
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def irreducible_polys(p: int, d: int, budget: int = 10**6) -> list[PolyFp]:
    """All monic irreducible polynomials of degree ``d`` over F_p, by trial division."""
    check_prime(p)
    if d < 1:
        raise ValueError("d must be >= 1")
    if p**d > budget:
        raise ValueError(f"p^d = {p**d} exceeds the enumeration budget {budget}")
    return list(_irreducible_polys(p, d))


@lru_cache(maxsize=None)
def _irreducible_polys(p: int, d: int) -> tuple[PolyFp, ...]:
    divisors = [g for k in range(1, d // 2 + 1) for g in _monic(p, k)]
    out = []
    for f in _monic(p, d):
        if all(_poly_mod(f, g, p) for g in divisors):
            out.append(PolyFp(f, p))
    return tuple(out)


def mobius(n: int) -> int:
    out, m, k = 1, n, 2
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    return -out if m > 1 else out


def count_irreducible(p: int, d: int) -> int:
    """Number of monic irreducibles of degree ``d`` from the Moebius formula."""
    total = sum(mobius(d // e) * p**e for e in range(1, d + 1) if d % e == 0)
    return total // d


@dataclass(frozen=True)
class ClassLabel:
    """One conjugacy class of GL(n, p): partitions attached to irreducibles ``phi != X``."""

    n: int
    p: int
    blocks: tuple[tuple[PolyFp, Partition], ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted(((f, Partition(lam)) for f, lam in self.blocks if lam),
                              key=lambda b: b[0].sort_key()))
        for f, _ in blocks:
            if f.coeffs == (0, 1):
                raise ValueError("the polynomial X cannot carry Jordan blocks in GL(n, p)")
            if f.p != self.p:
                raise ValueError("polynomial over the wrong field")
        if sum(f.degree * lam.size for f, lam in blocks) != self.n:
            raise ValueError("block sizes do not add up to n")
        object.__setattr__(self, "blocks", blocks)

    def partition(self, f: PolyFp) -> Partition:
        for g, lam in self.blocks:
            if g == f:
                return lam
        return Partition()

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p,
                "blocks": [{"poly": str(f), "partition": list(lam)} for f, lam in self.blocks]}

    @classmethod
    def from_json(cls, data: dict | str) -> "ClassLabel":
        if isinstance(data, str):
            data = json.loads(data)
        p = data["p"]
        blocks = tuple((PolyFp.parse(b["poly"], p), Partition(b["partition"]))
                       for b in data["blocks"])
        return cls(data["n"], p, blocks)


def _polys_up_to(n: int, p: int) -> list[PolyFp]:
    out = []
    for d in range(1, n + 1):
        out.extend(f for f in irreducible_polys(p, d) if f.coeffs != (0, 1))
    return out


def enumerate_classes(n: int, p: int, budget: int = 200_000) -> Iterator[ClassLabel]:
    """Every conjugacy class of GL(n, p) once, polynomials by (degree, coefficients)."""
    check_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    polys = _polys_up_to(n, p)
    produced = 0

    def rec(idx: int, remaining: int):
        if remaining == 0:
            yield ()
            return
        if idx == len(polys) or polys[idx].degree > remaining:
            return
        f = polys[idx]
        for m in range(remaining // f.degree + 1):
            for lam in partitions_of(m):
                for rest in rec(idx + 1, remaining - f.degree * m):
                    yield (((f, lam),) if m else ()) + rest

    for blocks in rec(0, n):
        produced += 1
        if produced > budget:
            raise ValueError(f"more than {budget} classes")
        yield ClassLabel(n, p, blocks)


def centralizer_order(c: ClassLabel, p: int | None = None) -> int:
    p = c.p if p is None else p
    out = 1
    for f, lam in c.blocks:
        out *= aut_order_q(lam, p**f.degree)
    return out


def class_size(c: ClassLabel) -> int:
    g = gl_order(c.n, c.p)
    z = centralizer_order(c)
    if g % z:
        raise ArithmeticError(f"centralizer order {z} does not divide |GL| for {c}")
    return g // z


def exact_marginal(n: int, p: int, a: int) -> dict[Partition, Fraction]:
    """Law of the Jordan partition at eigenvalue ``a`` for a uniform element of GL(n, p)."""
    check_prime(p)
    if a % p == 0:
        raise ValueError("a must be a unit of F_p")
    f = PolyFp.linear(a, p)
    g = gl_order(n, p)
    law: dict[Partition, Fraction] = {}
    for c in enumerate_classes(n, p):
        lam = c.partition(f)
        law[lam] = law.get(lam, Fraction(0)) + Fraction(class_size(c), g)
    return law


def class_count_gf(n: int, p: int) -> int:
    """Number of classes of GL(n, p) as the x^n coefficient of
    ``prod_d P(x^d)^{N_d}``, where ``P`` is the partition generating function
    and ``N_d`` counts irreducibles of degree ``d`` other than ``X``."""
    pc = [sum(1 for _ in partitions_of(m)) for m in range(n + 1)]
    poly = [1] + [0] * n
    for d in range(1, n + 1):
        Nd = count_irreducible(p, d) - (1 if d == 1 else 0)
        factor = [0] * (n + 1)
        for m in range(0, n // d + 1):
            factor[d * m] = pc[m]
        for _ in range(Nd):
            poly = [sum(poly[i] * factor[k - i] for i in range(k + 1)) for k in range(n + 1)]
    return poly[n]


def cycle_index_check(n: int, p: int, a: int = 1) -> dict:
    """Exact consistency checks on the class enumeration of GL(n, p).

    Reports the class-size sum against ``|GL(n, p)|`` (the cycle index at
    ``x = 1``), the total mass of the eigenvalue-``a`` marginal, the class
    count against the generating function, and the total variation
    distance from the marginal to the Cohen-Lenstra law.
    """
    from .stats import tv_to_cl

    classes = list(enumerate_classes(n, p))
    size_sum = sum(class_size(c) for c in classes)
    g = gl_order(n, p)
    law = exact_marginal(n, p, a)
    mass = sum(law.values(), Fraction(0))
    tv = tv_to_cl(law, p)
    failures = []
    if size_sum != g:
        failures.append(f"class sizes sum to {size_sum}, |GL| = {g}")
    if mass != 1:
        failures.append(f"marginal mass {mass}")
    if len(classes) != class_count_gf(n, p):
        failures.append(f"{len(classes)} classes, generating function says {class_count_gf(n, p)}")
    return {"n": n, "p": p, "classes": len(classes), "class_size_sum": size_sum,
            "gl_order": g, "marginal_mass": mass, "tv_to_cl": tv, "failures": failures}
