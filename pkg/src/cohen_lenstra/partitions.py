"""Integer partitions and their identification with finite abelian p-groups.

A partition ``(l_1, ..., l_s)`` stands for the group ``Z/p^l_1 x ... x Z/p^l_s``:
each part is one cyclic factor, so the size is the p-adic order, the number of
parts is the rank and the largest part is the p-adic exponent.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    return p


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Behaves like a plain tuple (hashing, comparison, indexing), so
    ``Partition((2, 1)) == (2, 1)`` and both work as the same dict key.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(x) for x in parts)
        for i, x in enumerate(parts):
            if x < 1:
                raise ValueError(f"parts must be positive: {parts}")
            if i and parts[i - 1] < x:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"4+2+1"``, ``"()"``, ``"0"`` or the JSON form ``"[4,2,1]"``."""
        s = text.strip()
        if s in ("", "()", "0", "[]"):
            return cls()
        if s.startswith("["):
            return cls(json.loads(s))
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
            return cls(int(x) for x in s.split(",") if x.strip())
        return cls(int(x) for x in s.split("+"))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def largest(self) -> int:
        return self[0] if self else 0

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def to_group_shape(self) -> "GroupShape":
        counts = Counter(self)
        return GroupShape(tuple((e, counts[e]) for e in sorted(counts, reverse=True)))

    def contains(self, other: "Partition") -> bool:
        """True if the Young diagram of ``other`` fits inside this one."""
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def to_json(self) -> list[int]:
        return list(self)

    def __str__(self) -> str:
        return "+".join(map(str, self)) if self else "()"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


PartitionLike = Union[Partition, tuple, list]


@dataclass(frozen=True)
class GroupShape:
    """Elementary divisor form ``prod (Z/p^e)^r`` stored as ``((e, r), ...)``."""

    blocks: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        blocks = tuple((int(e), int(r)) for e, r in self.blocks)
        for i, (e, r) in enumerate(blocks):
            if e < 1 or r < 1:
                raise ValueError(f"exponents and multiplicities must be positive: {blocks}")
            if i and blocks[i - 1][0] <= e:
                raise ValueError(f"exponents must be strictly decreasing: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def order_p(self) -> int:
        return sum(e * r for e, r in self.blocks)

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.blocks)

    @property
    def exponent_p(self) -> int:
        return self.blocks[0][0] if self.blocks else 0

    def to_partition(self) -> Partition:
        return Partition(e for e, r in self.blocks for _ in range(r))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


ShapeLike = Union[GroupShape, Partition, tuple, list]


def as_partition(x: ShapeLike) -> Partition:
    if isinstance(x, GroupShape):
        return x.to_partition()
    return Partition(x)


def as_shape(x: ShapeLike) -> GroupShape:
    if isinstance(x, GroupShape):
        return x
    return Partition(x).to_group_shape()


def conjugate(lam: PartitionLike) -> Partition:
    return Partition(lam).conjugate()


def to_group_shape(lam: PartitionLike) -> GroupShape:
    return Partition(lam).to_group_shape()


def from_group_shape(shape: GroupShape | Iterable[tuple[int, int]]) -> Partition:
    if not isinstance(shape, GroupShape):
        shape = GroupShape(tuple(shape))
    return shape.to_partition()


def group_stats(shape: ShapeLike) -> tuple[int, int, int]:
    """Return ``(order_p, rank, exponent_p)``."""
    s = as_shape(shape)
    return s.order_p, s.rank, s.exponent_p


def aut_order_q(shape: ShapeLike, Q: int) -> int:
    """Automorphism-count formula with the prime replaced by an arbitrary ``Q >= 2``.

    For ``Q = p`` this is ``#Aut`` of the p-group; for ``Q = p^d`` it is the
    centralizer factor contributed by a degree-``d`` polynomial in GL(n, p).
    """
    s = as_shape(shape)
    # prod_s (1 - Q^-s) * Q^s over each block, times the remaining Q powers
    num = 1
    power = 0
    for _, r in s.blocks:
        for t in range(1, r + 1):
            num *= Q**t - 1
            power -= t
    for ei, ri in s.blocks:
        for ej, rj in s.blocks:
            power += min(ei, ej) * ri * rj
    value = Fraction(num) * Fraction(Q) ** power
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral automorphism count for {s}")
    return value.numerator


def aut_order(shape: ShapeLike, p: int) -> int:
    """Order of the automorphism group of the p-group named by ``shape``."""
    check_prime(p)
    return aut_order_q(shape, p)


def gl_order(n: int, Q: int) -> int:
    """``|GL(n, Q)| = prod_{i<n} (Q^n - Q^i)``."""
    out = 1
    for i in range(n):
        out *= Q**n - Q**i
    return out


def _partitions_of(n: int, max_part: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    # reverse lexicographic order: largest first part first
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        if first * max_parts < n:
            break
        for rest in _partitions_of(n - first, first, max_parts - 1):
            yield (first,) + rest


def partitions_of(n: int, max_part: int | None = None,
                  max_parts: int | None = None) -> Iterator[Partition]:
    """All partitions of exactly ``n`` in lexicographically descending order."""
    mp = n if max_part is None else max_part
    mk = n if max_parts is None else max_parts
    for t in _partitions_of(n, mp, mk):
        yield Partition(t)


def enumerate_partitions(max_size: int, max_part: int | None = None,
                         max_parts: int | None = None) -> Iterator[Partition]:
    """Every partition of size ``<= max_size`` under the caps, graded by size.

    ``None`` means unbounded. Within one size the order is lexicographically
    descending, e.g. ``(), (1), (2), (1, 1), (3), (2, 1), (1, 1, 1), ...``.
    """
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    for n in range(max_size + 1):
        yield from partitions_of(n, max_part, max_parts)


def covers(lam: Partition) -> Iterator[Partition]:
    """Partitions obtained from ``lam`` by adding one box, in row order."""
    lam = Partition(lam)
    for s in range(len(lam) + 1):
        cur = lam[s] if s < len(lam) else 0
        if s == 0 or lam[s - 1] > cur:
            parts = list(lam)
            if s < len(lam):
                parts[s] += 1
            else:
                parts.append(1)
            yield Partition(parts)


def covered_by(lam: Partition) -> Iterator[Partition]:
    """Partitions obtained from ``lam`` by removing one corner box."""
    lam = Partition(lam)
    for s in range(len(lam)):
        nxt = lam[s + 1] if s + 1 < len(lam) else 0
        if lam[s] > nxt:
            parts = list(lam)
            parts[s] -= 1
            if parts[s] == 0:
                parts.pop()
            yield Partition(parts)
