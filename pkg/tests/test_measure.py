from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cohen_lenstra import measure as m
from cohen_lenstra import oracles
from cohen_lenstra.partitions import Partition, enumerate_partitions
from cohen_lenstra.qseries import eisenstein, power_tail

P2 = m.MeasureContext(2)


def close(r, x, tol=1e-6):
    return abs(float(r.value) - x) < tol


def test_basic_values():
    assert close(m.p_trivial(2), 0.288788095)
    assert close(m.total_weight(2), 3.462746619)
    assert close(m.total_weight(13), 1.090319, 1e-6)
    assert m.weight(Partition(), 2) == 1
    assert m.weight(Partition([1, 1]), 2) == Fraction(1, 6)
    assert close(m.cl_prob(Partition([1, 1]), 2), 0.048131349)
    assert (m.total_weight(2) * m.p_trivial(2)).contains(1)


def test_order_rank_exponent_values():
    assert close(m.prob_order(0, P2), 0.288788095)
    assert close(m.prob_order(1, P2), 0.288788095)
    # (1/2 + 1/6) / 3.4627... = 0.1925...
    assert close(m.prob_order(2, P2), 0.192525397)
    assert close(m.prob_rank(1, P2), 0.577576190)
    assert close(m.prob_rank(2, P2), 0.128350264)
    assert close(m.prob_exponent_le(1, P2), 0.627440870)
    assert m.prob_exponent_le(0, P2).agrees(m.p_trivial(P2))
    assert close(m.prob_rank_le1(P2), 0.866364285)


def test_rank_order_values():
    assert m.prob_rank_order(1, 1, P2).agrees(m.cl_prob(Partition([1]), P2))
    assert close(m.prob_rank_order(2, 1, P2), 0.144394048)
    assert close(m.prob_rank_order(2, 2, P2), 0.048131349)
    assert m.prob_rank_order(1, 2, P2).value == 0
    assert m.prob_rank_order(3, 0, P2).value == 0
    with pytest.raises(ValueError):
        m.prob_rank_order(-1, 0, P2)


def test_large_exponent_tends_to_one():
    vals = [m.prob_exponent_le(e, P2).value for e in (1, 4, 12, 25)]
    assert vals == sorted(vals) and vals[-1] > 1 - Fraction(1, 10**6)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_closed_forms_agree_with_weight_sums(p):
    ctx = m.MeasureContext(p)
    slack = Fraction(1, 10**9)
    for n in range(6):
        assert m.prob_order(n, ctx).agrees(oracles.weight_sum(lambda l: l.size == n, ctx, finite=True), slack)
        for r in range(n + 1):
            brute = oracles.weight_sum(lambda l: l.size == n and l.rank == r, ctx, finite=True)
            assert m.prob_rank_order(n, r, ctx).agrees(brute, slack)
    for r in range(4):
        assert m.prob_rank(r, ctx).agrees(oracles.weight_sum(lambda l: l.rank == r, ctx), slack)
    for e in range(4):
        assert m.prob_exponent_le(e, ctx).agrees(oracles.weight_sum(lambda l: l.largest <= e, ctx), slack)
    for u in (1, 2):
        for lam in enumerate_partitions(4):
            assert m.u_prob(lam, u, ctx).agrees(oracles.u_weight_sum(lam, u, ctx), slack)


def test_normalization():
    head = oracles.weight_sum(lambda l: True, P2, finite=True)
    assert head.lower > 1 - Fraction(1, 10**6)
    assert head.upper <= 1 + head.tail_bound


def test_u_prob_values():
    assert close(m.u_prob(Partition(), 1, P2), 0.577576190)
    assert close(m.u_prob(Partition([1]), 1, P2), 0.288788095)
    for lam in enumerate_partitions(4):
        for u in (1, 2):
            alt = m.cl_prob(lam, P2) / (Fraction(2) ** (u * lam.size) * m.phi(u, Fraction(1, 2)))
            assert m.u_prob(lam, u, P2).agrees(alt)


def test_surjection_counts():
    assert m.surjection_count(Partition([1]), 1, 2) == 1
    assert m.surjection_count(Partition([1]), 2, 2) == 3
    assert m.surjection_count(Partition(), 0, 2) == 1
    assert m.surjection_count(Partition([2]), 0, 2) == 0
    assert m.surjection_count(Partition([1, 1]), 2, 2) == 6


@pytest.mark.parametrize("p", [2, 3])
def test_twisted_weights(p):
    for lam in enumerate_partitions(3):
        for k in range(4):
            s = m.surjection_count(lam, k, p)
            assert m.twisted_weight_wk(lam, k, p) == Fraction(s, p ** (k * lam.size)) * m.weight(lam, p)
    assert m.twisted_weight_wk(Partition([1]), 1, 2) == Fraction(1, 2)
    assert m.twisted_weight_wk(Partition([1, 1]), 1, 2) == 0


def test_twisted_weight_limit():
    lam = Partition([2, 1])
    gaps = [m.weight(lam, 2) - m.twisted_weight_wk(lam, k, 2) for k in (2, 5, 10, 20)]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < Fraction(1, 10**5)


def test_zeta_values():
    assert m.zeta_k(1, 0, 2) == 2
    assert m.zeta_k(2, 0, 2) == Fraction(8, 3) == m.zeta_k(1, 1, 2) * m.zeta_k(1, 0, 2)
    assert m.zeta_k(0, 5, 3) == 1
    with pytest.raises(ZeroDivisionError):
        m.zeta_k(2, -1, 2)
    assert abs(m.zeta_k_float(2, 0.5, 2) - float(1 / ((1 - 2**-1.5) * (1 - 2**-2.5)))) < 1e-12


@settings(deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 3), st.integers(0, 6), st.integers(0, 6))
def test_zeta_functional_equation(p, s, k1, k2):
    if k1 + k2 > 6:
        return
    assert m.zeta_k(k1 + k2, s, p) == m.zeta_k(k1, s + k2, p) * m.zeta_k(k2, s, p)


def test_zeta_matches_group_sum():
    for k in range(4):
        assert oracles.zeta_k_by_sum(k, 1, 3, B=10).contains(m.zeta_k(k, 1, 3))


def test_expected_values():
    one = m.expected_value(lambda lam: 1, 0, P2, m.RankGrowth())
    assert one.contains(1)
    two = m.expected_value(lambda lam: 2**lam.rank, 0, P2, m.RankGrowth(1, 1))
    assert two.contains(2)
    triv = m.expected_value(lambda lam: int(not lam), 1, P2, m.RankGrowth())
    assert triv.agrees(m.u_prob(Partition(), 1, P2))
    with pytest.raises(ValueError):
        m.expected_value(lambda lam: 1, 0, P2)


def test_moment_p_rank():
    for p in (2, 3, 5, 7, 11):
        assert m.moment_p_rank(0, p) == 1
        assert m.moment_p_rank(1, p) == 2
        assert m.moment_p_rank(2, p) == p + 3


def test_f_polynomials():
    assert m.format_poly(m.mehnert_f_poly(1)) == "X_1"
    assert m.mehnert_f_poly(2) == {(2, 0): 1, (0, 1): 1}
    assert m.mehnert_f_poly(4) == {(4, 0, 0, 0): 1, (2, 1, 0, 0): 6, (0, 2, 0, 0): 3,
                                   (1, 0, 1, 0): 4, (0, 0, 0, 1): 1}


def test_moment_series():
    assert list(m.mehnert_moment(2, 6).coeffs) == [0, 1, 4, 8, 15, 20, 32]
    assert list(m.mehnert_moment(3, 6).coeffs) == [0, 1, 8, 26, 63, 116, 208]
    assert list(m.mehnert_moment(4, 6).coeffs) == [0, 1, 16, 80, 255, 608, 1280]
    assert m.mehnert_moment(1, 10) == eisenstein(1, 10)


@pytest.mark.parametrize("p,expected", [(2, 1.6067), (3, 0.6822), (17, 0.0662)])
def test_first_moment(p, expected):
    r = m.moment_value("M1", p)
    assert r.tail_bound < Fraction(1, 10**7)
    assert abs(float(r.value) - expected) < 1e-4


def test_first_moment_against_order_sum():
    B = 40
    brute = sum((n * m.prob_order(n, P2) for n in range(B + 1)), m.EvalResult(0))
    r = m.moment_value("M1", 2)
    assert abs(r.value - brute.value) <= r.tail_bound + brute.tail_bound + power_tail(Fraction(1, 2), B, 1)


def test_variance_identity():
    v, m1, m2 = (m.moment_value(n, 3) for n in ("V", "M1", "M2"))
    assert v.agrees(m2 - m1 * m1)


def test_unknown_moment():
    for bad in ("M0", "E2", "M"):
        with pytest.raises(ValueError):
            m.moment_value(bad, 2)
    assert m.moment_value("M5", 5).value > m.moment_value("M4", 5).value
