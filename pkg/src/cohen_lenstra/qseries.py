"""Truncated power series in ``q`` with exact rational coefficients.

Everything here is exact. Numeric values at ``q = 1/p`` come back as an
:class:`EvalResult`, a rational midpoint together with a certified bound on
the distance to the true value of the infinite series or product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

Number = Union[int, Fraction]


class QSeries:
    """``c_0 + c_1 q + ... + c_T q^T + O(q^{T+1})``.

    ``exact=True`` marks a polynomial whose coefficients beyond ``T`` are
    known to vanish; only such series can be evaluated without a growth bound.
    """

    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs: Iterable[Number], trunc: Optional[int] = None,
                 exact: bool = False):
        cs = [Fraction(c) for c in coeffs]
        if trunc is not None:
            if trunc < 0:
                raise ValueError("truncation order must be >= 0")
            cs = cs[: trunc + 1] + [Fraction(0)] * (trunc + 1 - len(cs))
        if not cs:
            raise ValueError("need at least one coefficient")
        self.coeffs = tuple(cs)
        self.exact = exact

    @classmethod
    def constant(cls, c: Number, trunc: int, exact: bool = True) -> "QSeries":
        return cls([c], trunc, exact=exact)

    @classmethod
    def monomial(cls, k: int, trunc: int, c: Number = 1) -> "QSeries":
        return cls([0] * k + [c], trunc, exact=k <= trunc)

    @classmethod
    def polynomial(cls, coeffs: Iterable[Number]) -> "QSeries":
        return cls(coeffs, exact=True)

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        if j > self.trunc:
            raise IndexError(f"coefficient q^{j} is beyond the truncation order {self.trunc}")
        return self.coeffs[j]

    def truncate(self, T: int) -> "QSeries":
        if T > self.trunc and not self.exact:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs, T, exact=self.exact and T >= self.trunc)

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self.trunc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        T = min(self.trunc, other.trunc)
        return QSeries((a + b for a, b in zip(self.coeffs[: T + 1], other.coeffs)), T,
                       exact=self.exact and other.exact and self.trunc == other.trunc)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries((-c for c in self.coeffs), exact=self.exact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries((c * other for c in self.coeffs), exact=self.exact)
        if not isinstance(other, QSeries):
            return NotImplemented
        T = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (T + 1)
        for i in range(T + 1):
            ai = a[i]
            if ai:
                for j in range(T + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return QSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries.constant(1, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def invert(self) -> "QSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        T = self.trunc
        inv = [Fraction(0)] * (T + 1)
        inv[0] = 1 / c0
        for n in range(1, T + 1):
            s = sum(self.coeffs[k] * inv[n - k] for k in range(1, n + 1))
            inv[n] = -s / c0
        return QSeries(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def partial_sum(self, x: Fraction) -> Fraction:
        """Exact value of ``sum_{j<=T} c_j x^j``."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*q^{j}")
        body = " + ".join(terms) or "0"
        return body if self.exact else f"{body} + O(q^{self.trunc + 1})"


def qs_arith(a: QSeries, b: Optional[QSeries], op: str) -> QSeries:
    """Dispatch ``add``, ``sub``, ``mul`` or ``invert_unit`` (``b`` ignored)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "invert_unit":
        return a.invert()
    raise ValueError(f"unknown operation {op!r}")


IndexFilter = Callable[[int], bool]


@dataclass(frozen=True)
class EulerProduct:
    """Lazy ``prod_{i >= 1, keep(i)} (1 - q^i)``; ``keep=None`` keeps every index."""

    keep: Optional[IndexFilter] = None
    label: str = "all i"

    def accepts(self, i: int) -> bool:
        return self.keep is None or bool(self.keep(i))

    def series(self, T: int) -> QSeries:
        return euler_product(T, self.keep)

    def partial(self, p: int, T: int) -> Fraction:
        """Exact ``prod_{i <= T, keep(i)} (1 - p^-i)``."""
        num, den = 1, 1
        for i in range(1, T + 1):
            if self.accepts(i):
                pi = p**i
                num *= pi - 1
                den *= pi
        return Fraction(num, den)


def euler_product(T: int, index_filter: Optional[IndexFilter] = None) -> QSeries:
    """``prod (1 - q^i)`` over accepted ``i``, truncated at ``q^T``."""
    if T < 0:
        raise ValueError("T must be >= 0")
    c = [0] * (T + 1)
    c[0] = 1
    for i in range(1, T + 1):
        if index_filter is not None and not index_filter(i):
            continue
        # in-place multiply by (1 - q^i), high degrees first
        for j in range(T, i - 1, -1):
            c[j] -= c[j - i]
    return QSeries(c, T)


def divisor_sigma(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein(k: int, T: int) -> QSeries:
    """``sum_{n=1}^{T} sigma_{k-1}(n) q^n`` (no constant term)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if T < 0:
        raise ValueError("T must be >= 0")
    c = [0] * (T + 1)
    for d in range(1, T + 1):
        w = d ** (k - 1)
        for m in range(d, T + 1, d):
            c[m] += w
    return QSeries(c, T)


@dataclass(frozen=True)
class EvalResult:
    """Rational midpoint with a certified absolute error bound."""

    value: Fraction
    tail_bound: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "tail_bound", Fraction(self.tail_bound))
        if self.tail_bound < 0:
            raise ValueError("tail bound must be nonnegative")

    @property
    def lower(self) -> Fraction:
        return self.value - self.tail_bound

    @property
    def upper(self) -> Fraction:
        return self.value + self.tail_bound

    def contains(self, x: Number, slack: Number = 0) -> bool:
        return abs(Fraction(x) - self.value) <= self.tail_bound + slack

    def agrees(self, other: "EvalResult", slack: Number = 0) -> bool:
        return abs(self.value - other.value) <= self.tail_bound + other.tail_bound + slack

    def __float__(self) -> float:
        return float(self.value)

    @staticmethod
    def _lift(x) -> "EvalResult":
        if isinstance(x, EvalResult):
            return x
        return EvalResult(Fraction(x))

    def __add__(self, other) -> "EvalResult":
        o = self._lift(other)
        return EvalResult(self.value + o.value, self.tail_bound + o.tail_bound)

    __radd__ = __add__

    def __neg__(self) -> "EvalResult":
        return EvalResult(-self.value, self.tail_bound)

    def __sub__(self, other) -> "EvalResult":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "EvalResult":
        return self._lift(other) - self

    def __mul__(self, other) -> "EvalResult":
        o = self._lift(other)
        a, da, b, db = self.value, self.tail_bound, o.value, o.tail_bound
        return EvalResult(a * b, abs(a) * db + abs(b) * da + da * db)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "EvalResult":
        o = self._lift(other)
        a, da, b, db = self.value, self.tail_bound, o.value, o.tail_bound
        if abs(b) <= db:
            raise ZeroDivisionError("divisor interval contains zero")
        return EvalResult(a / b, (abs(b) * da + abs(a) * db) / (abs(b) * (abs(b) - db)))

    def __rtruediv__(self, other) -> "EvalResult":
        return self._lift(other) / self

    def coarsen(self, bits: int = 256) -> "EvalResult":
        """Round the midpoint to a multiple of ``2^-bits``, widening the bound to match."""
        scale = 1 << bits
        v = Fraction(round(self.value * scale), scale)
        err = abs(v - self.value)
        b = self.tail_bound + err
        b = Fraction(-((-b.numerator * scale) // b.denominator), scale)
        return EvalResult(v, b)


@dataclass(frozen=True)
class CoefficientBound:
    """Growth bound ``|c_n| <= scale * n^degree`` valid for every ``n`` past the truncation."""

    scale: Fraction = Fraction(1)
    degree: int = 0


def power_tail(x: Fraction, T: int, degree: int) -> Fraction:
    """Upper bound for ``sum_{n > T} n^degree x^n`` when ``0 < x < 1``.

    Consecutive terms shrink by at most ``rho = ((T+2)/(T+1))^degree * x``, so
    the tail is dominated by a geometric series once ``rho < 1``.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("need 0 < x < 1")
    rho = Fraction(T + 2, T + 1) ** degree * x
    if rho >= 1:
        raise ValueError(f"truncation T={T} too small for degree {degree} at x={x}")
    return Fraction(T + 1) ** degree * x ** (T + 1) / (1 - rho)


def euler_tail(x: Fraction, T: int) -> Fraction:
    """``sum_{i > T} x^i``; ``prod_{i > T}(1 - x^i)`` lies in ``[1 - tail, 1]``."""
    x = Fraction(x)
    return x ** (T + 1) / (1 - x)


def eval_at(x: Union[QSeries, EulerProduct], p: int, T: Optional[int] = None,
            growth: Optional[CoefficientBound] = None) -> EvalResult:
    """Value at ``q = 1/p`` with a certified error bound.

    Series need ``growth`` unless they are exact polynomials. Euler products
    are evaluated factor by factor up to ``T`` (default 64) and the remaining
    factors are bounded below by ``1 - sum_{i>T} p^-i``.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    q = Fraction(1, p)
    if isinstance(x, EulerProduct):
        T = 64 if T is None else T
        partial = x.partial(p, T)
        delta = euler_tail(q, T)
        # true value in [partial * (1 - delta), partial]
        return EvalResult(partial * (1 - delta / 2), partial * delta / 2)
    if not isinstance(x, QSeries):
        raise TypeError(f"cannot evaluate {type(x).__name__}")
    if T is not None:
        x = x.truncate(T)
    head = x.partial_sum(q)
    if x.exact:
        return EvalResult(head, 0)
    if growth is None:
        raise ValueError("a coefficient growth bound is required for a truncated series")
    tail = Fraction(growth.scale) * power_tail(q, x.trunc, growth.degree)
    return EvalResult(head, tail)
