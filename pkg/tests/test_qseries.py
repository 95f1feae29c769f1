from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cohen_lenstra.oracles import naive_eisenstein, naive_euler_product
from cohen_lenstra.qseries import (
    CoefficientBound,
    EulerProduct,
    EvalResult,
    QSeries,
    divisor_sigma,
    eisenstein,
    euler_product,
    eval_at,
    power_tail,
    qs_arith,
)

small = st.lists(st.integers(-5, 5), min_size=1, max_size=8)


def test_euler_product_pentagonal():
    assert list(euler_product(5).coeffs) == [1, -1, -1, 0, 0, 1]
    # Euler's pentagonal theorem: nonzero exactly at generalized pentagonal numbers
    c = euler_product(40).coeffs
    pent = {k * (3 * k - 1) // 2 for k in range(-6, 7)}
    assert {i for i, x in enumerate(c) if x} == {i for i in pent if i <= 40}


def test_euler_product_filtered():
    odd = euler_product(6, lambda i: i % 2 == 1)
    assert odd == naive_euler_product(6, lambda i: i % 2 == 1)


@pytest.mark.parametrize("T", [0, 1, 7, 25])
def test_euler_product_matches_naive(T):
    assert euler_product(T) == naive_euler_product(T)


def test_eisenstein_examples():
    assert list(eisenstein(2, 5).coeffs) == [0, 1, 3, 4, 7, 6]
    assert eisenstein(1, 6).coeffs[6] == 4
    for k in (1, 2, 3, 4):
        assert eisenstein(k, 30) == naive_eisenstein(k, 30)
    assert divisor_sigma(12, 1) == 28


@given(small, small)
def test_arithmetic_ring_axioms(a, b):
    A, B = QSeries(a, 8), QSeries(b, 8)
    assert A + B == B + A
    assert A * B == B * A
    assert (A + B) - B == A
    assert qs_arith(A, B, "mul") == A * B


@given(small)
def test_inverse(a):
    if a[0] == 0:
        with pytest.raises(ZeroDivisionError):
            QSeries(a, 6).invert()
        return
    A = QSeries(a, 6)
    assert A * A.invert() == QSeries.constant(1, 6)


def test_truncation_is_min_order():
    a = QSeries([1, 1, 1], 5)
    b = QSeries([1, 2], 3)
    assert (a * b).trunc == 3
    assert (a + b).trunc == 3


def test_partition_generating_function():
    inv = euler_product(12).invert()
    assert list(inv.coeffs) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def test_eval_requires_growth_bound():
    with pytest.raises(ValueError):
        eval_at(eisenstein(2, 10), 2)
    r = eval_at(QSeries.polynomial([1, 2, 3]), 2)
    assert r.value == Fraction(1) + Fraction(2, 2) + Fraction(3, 4) and r.tail_bound == 0


def test_euler_product_value_is_certified():
    r = eval_at(EulerProduct(), 2)
    assert abs(float(r.value) - 0.288788095) < 1e-9
    assert r.tail_bound < Fraction(1, 10**18)
    coarse = eval_at(EulerProduct(), 2, 10)
    assert coarse.contains(r.value)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(10, 60))
def test_eisenstein_eval_brackets_longer_truncation(k, T):
    g = CoefficientBound(Fraction(1), k)
    short = eval_at(eisenstein(k, T), 3, growth=g)
    long = eval_at(eisenstein(k, T + 40), 3, growth=g)
    assert short.contains(long.value)


def test_power_tail_bounds_sum():
    x = Fraction(1, 2)
    exact = sum(n**3 * x**n for n in range(21, 400))
    assert exact <= power_tail(x, 20, 3)
    with pytest.raises(ValueError):
        power_tail(Fraction(9, 10), 2, 5)


def test_interval_arithmetic():
    a = EvalResult(Fraction(1, 2), Fraction(1, 100))
    b = EvalResult(Fraction(1, 3), Fraction(1, 1000))
    for op in (lambda x, y: x + y, lambda x, y: x - y, lambda x, y: x * y, lambda x, y: x / y):
        r = op(a, b)
        for x in (a.lower, a.upper):
            for y in (b.lower, b.upper):
                assert r.contains(op(x, y))
    c = (a * b).coarsen(32)
    assert c.contains((a * b).lower) and c.contains((a * b).upper)
    with pytest.raises(ValueError):
        EvalResult(1, -1)
