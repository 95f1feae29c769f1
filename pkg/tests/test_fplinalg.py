from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from cohen_lenstra import fplinalg as fl
from cohen_lenstra.conjugacy import exact_marginal
from cohen_lenstra.measure import phi
from cohen_lenstra.oracles import cokernel_by_enumeration, gl_elements
from cohen_lenstra.partitions import Partition, enumerate_partitions
from cohen_lenstra.stats import SampleSummary, stats_compare
from cohen_lenstra.young import p_output_N


def test_matrix_reduces_entries():
    M = fl.MatrixModP([[5, -1], [2, 3]], 2, 2)
    assert M.entries.tolist() == [[1, 3], [2, 3]]
    with pytest.raises(ValueError):
        M.entries[0, 0] = 0
    with pytest.raises(ValueError):
        fl.MatrixModP([[1, 2, 3]], 2)


def test_rank_batch_matches_scalar():
    rng = np.random.default_rng(0)
    stack = rng.integers(0, 3, size=(200, 4, 5))
    batch = fl.rank_mod_p_batch(stack, 3)
    assert all(batch[i] == fl.rank_mod_p(stack[i], 3) for i in range(5))
    assert fl.rank_mod_p(np.eye(3, dtype=int) * 2, 2) == 0
    assert fl.rank_mod_p(np.array([[1, 1], [1, 1]]), 5) == 1


def test_random_gl_small_cases():
    rng = np.random.default_rng(1)
    assert all(fl.random_gl(1, 2, rng).entries.tolist() == [[1]] for _ in range(20))
    mats, attempts = fl.random_gl_batch(3, 3, rng, 500)
    assert attempts >= 500
    assert (fl.rank_mod_p_batch(mats, 3) == 3).all()


def test_random_gl_uniform_on_gl22():
    rng = np.random.default_rng(2)
    mats, _ = fl.random_gl_batch(2, 2, rng, 100_000)
    keys = Counter(tuple(m.ravel()) for m in mats)
    assert len(keys) == 6
    _, pvalue = sps.chisquare(list(keys.values()))
    assert pvalue > 0.001


def test_acceptance_rate():
    rng = np.random.default_rng(3)
    N = 100_000
    rate = (fl.rank_mod_p_batch(fl.random_matrices(4, 2, rng, N), 2) == 4).mean()
    target = float(phi(4, Fraction(1, 2)))
    assert abs(rate - target) < 3 * (target * (1 - target) / N) ** 0.5


def test_partition_at_examples():
    I = fl.MatrixModP(np.eye(2, dtype=int), 2)
    assert fl.partition_at(I, 1) == Partition([1, 1])
    J = fl.MatrixModP([[1, 1], [0, 1]], 2)
    assert fl.partition_at(J, 1) == Partition([2])
    R = fl.MatrixModP([[0, 1], [1, 1]], 2)  # x^2 + x + 1 has no root
    assert fl.partition_at(R, 1) == Partition()
    with pytest.raises(ValueError):
        fl.partition_at(I, 0)
    assert fl.fixed_space_dim(J) == 1


def test_partition_sizes_bounded_by_n():
    rng = np.random.default_rng(4)
    mats, _ = fl.random_gl_batch(5, 5, rng, 300)
    per_a = [fl.partition_at_batch(mats, 5, a) for a in range(1, 5)]
    for i, M in enumerate(mats):
        total = sum(per_a[a][i].size for a in range(4))
        assert total <= 5


def test_partition_sizes_split_matrix():
    # upper triangular with unit diagonal entries splits completely
    M = np.array([[1, 1, 0], [0, 2, 1], [0, 0, 2]])
    assert sum(fl.partition_at(fl.MatrixModP(M, 3), a).size for a in (1, 2)) == 3


def test_conjugation_invariance():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        p = int(rng.choice([2, 3]))
        M = fl.random_gl(n, p, rng)
        g = fl.random_gl(n, p, rng).entries
        ginv = np.round(np.linalg.inv(g) * np.linalg.det(g)).astype(np.int64)
        det = int(round(np.linalg.det(g))) % p
        ginv = (ginv * pow(det, -1, p)) % p
        conj = fl.MatrixModP(g @ M.entries @ ginv, p)
        a = int(rng.integers(1, p))
        assert fl.partition_at(conj, a) == fl.partition_at(M, a)


def test_partition_at_matches_small_enumeration():
    counts = Counter(fl.partition_at(fl.MatrixModP(M, 2), 1) for M in gl_elements(3, 2))
    law = exact_marginal(3, 2, 1)
    assert {k: Fraction(v, 168) for k, v in counts.items()} == law


def test_snf_examples():
    p = 3
    assert fl.smith_normal_form_p(np.array([[p, 0], [0, 1]]), p, 3) == [1, 0]
    assert fl.smith_normal_form_p(np.zeros((2, 2), dtype=int), p, 2) == [2, 2]
    assert fl.smith_normal_form_p(np.array([[p, p], [p, p]]), p, 3) == [3, 1]
    assert fl.smith_normal_form_p(fl.MatrixModP([[2, 0], [0, 4]], 2, 3)) == [2, 1]
    assert fl.smith_normal_form_p(np.array([[1], [2], [4]]), 2, 4) == [4, 4, 0]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from([2, 3]), st.data())
def test_cokernel_matches_enumeration(n, K, p, data):
    if p**(K * n) > 800:
        return
    m = data.draw(st.integers(1, 3))
    A = np.array(data.draw(st.lists(st.integers(0, p**K - 1), min_size=n * m, max_size=n * m))).reshape(n, m)
    lam, _ = fl.cokernel_partition(A, p, K)
    assert lam == cokernel_by_enumeration(A, p, K)


def test_cokernel_n1_law():
    rng = np.random.default_rng(6)
    s = [fl.cokernel_sample(1, 2, 10, rng)[0] for _ in range(20_000)]
    freq = Counter(s)
    assert abs(freq[Partition()] / 20_000 - 0.5) < 0.015
    assert abs(freq[Partition([1])] / 20_000 - 0.25) < 0.015
    assert p_output_N(Partition([1]), 1, 2) == Fraction(1, 4)


def test_cokernel_saturation_flag():
    lam, sat = fl.cokernel_partition(np.zeros((2, 2), dtype=int), 2, 3)
    assert lam == Partition([3, 3]) and sat
    lam, sat = fl.cokernel_partition(np.eye(2, dtype=int), 2, 3)
    assert lam == Partition() and not sat


def test_cokernel_law_n2():
    rng = np.random.default_rng(7)
    s, _ = fl.cokernel_samples(2, 2, 12, rng, 50_000)
    law = {lam: p_output_N(lam, 2, 2) for lam in enumerate_partitions(10)}
    assert stats_compare(SampleSummary.from_samples(s, 7, "cokernel"), law, 4).tv < Fraction(2, 100)


def test_quotient_examples():
    rng = np.random.default_rng(8)
    assert all(fl.quotient_by_random_elements(Partition(), 2, 3, rng).to_partition() == Partition()
               for _ in range(10))
    out = Counter(fl.quotient_by_random_elements(Partition([1]), 1, 3, rng).to_partition()
                  for _ in range(30_000))
    assert abs(out[Partition()] / 30_000 - 2 / 3) < 0.015
    assert set(out) == {Partition(), Partition([1])}
    with pytest.raises(ValueError):
        fl.quotient_by_random_elements(Partition([1]), 0, 3, rng)


def test_quotient_is_a_quotient():
    rng = np.random.default_rng(9)
    H = Partition([3, 1])
    for _ in range(200):
        Q = fl.quotient_by_random_elements(H, 1, 2, rng).to_partition()
        assert H.contains(Q) and Q.rank <= H.rank
