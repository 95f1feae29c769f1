"""Cokernels of random p-adic matrices and quotients by random elements."""
import numpy as np

from cohen_lenstra import MeasureContext, Partition, p_output_N, smith_normal_form_p, u_prob
from cohen_lenstra.fplinalg import cokernel_samples, quotient_by_random_elements
from cohen_lenstra.partitions import enumerate_partitions
from cohen_lenstra.stats import SampleSummary, stats_compare
from cohen_lenstra.young import ytab_samples

A = np.array([[2, 2], [2, 2]])
print("Smith valuations of [[2,2],[2,2]] over Z/8:", smith_normal_form_p(A, 2, 3))

rng = np.random.default_rng(8)
# a 2x2 matrix over Z/2^12 has the same cokernel law as the tableau chain stopped at level 2
samples, saturated = cokernel_samples(2, 2, 12, rng, 50_000)
law = {lam: p_output_N(lam, 2, 2) for lam in enumerate_partitions(12)}
cmp = stats_compare(SampleSummary.from_samples(samples, 8, "cokernel"), law, 5)
print(f"cokernels: TV {float(cmp.tv):.4f}, {saturated} draws hit the 2^12 cap")

# H from the sampler, then H modulo one random element
hs = ytab_samples(2, rng, 50_000)
quotients = [quotient_by_random_elements(h, 1, 2, rng).to_partition() for h in hs]
ctx = MeasureContext(2)
law = {lam: u_prob(lam, 1, ctx).value for lam in enumerate_partitions(8)}
cmp = stats_compare(SampleSummary.from_samples(quotients, 8, "uquotient"), law, 4)
print(f"quotients by one element: TV {float(cmp.tv):.4f}")
print("P_1(trivial) =", f"{float(u_prob(Partition(), 1, ctx).value):.6f}",
      " observed", f"{sum(q == Partition() for q in quotients) / len(quotients):.4f}")
