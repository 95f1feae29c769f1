"""Sampling groups with coin flips and a growing Young diagram.

At level N a coin shows heads with probability p^-N. Each head adds one box
to the diagram in a row picked from an exact distribution. The output is the
conjugate of the diagram.
"""
import numpy as np

from cohen_lenstra import Partition, cl_prob, p_alg_N, p_output_N
from cohen_lenstra.oracles import chain_law
from cohen_lenstra.stats import SampleSummary, cl_law, stats_compare
from cohen_lenstra.young import ChainState, ytab_samples, ytab_step2_distribution

# where does the next box go, for the diagram (2, 1) at level 3?
print("row law:", ytab_step2_distribution(ChainState(Partition([2, 1]), 3), 2))

# at a finite level the law is known exactly, and a full enumeration of coin histories agrees
law = chain_law(2, 2, 5)
for lam in [Partition(), Partition([1]), Partition([1, 1]), Partition([2, 1])]:
    print(f"N=2 state {str(lam):6s} enumeration {law.get(lam, 0)!s:>10s}  formula {p_alg_N(lam, 2, 2)}")

# by level 20 the output law is indistinguishable from the limit
print("\nP(output trivial) at N=20:", float(p_output_N(Partition(), 20, 2)))
print("P(output 1+1) at N=20:    ", float(p_output_N(Partition([1, 1]), 20, 2)), "vs", float(cl_prob(Partition([1, 1]), 2).value))

rng = np.random.default_rng(2024)
samples = ytab_samples(2, rng, 100_000)
summary = SampleSummary.from_samples(samples, 2024, "ytab")
cmp = stats_compare(summary, cl_law(2, 4), bucket_bound=4)
print(f"100000 draws: TV to the exact law {float(cmp.tv):.4f}, chi2 p-value {cmp.pvalue:.3f}")
for row in summary.to_json()["counts"][:6]:
    print(f"  {row['partition']:6s} {row['count']}")
