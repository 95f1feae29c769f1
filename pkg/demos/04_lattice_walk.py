"""The Young lattice with edge weights: path sums recover 1/#Aut exactly."""
import numpy as np

from cohen_lenstra import Partition, aut_order, lattice_path_weight_sum, lattice_walk_sample
from cohen_lenstra.partitions import enumerate_partitions
from cohen_lenstra.young import lattice_edge_weight, lattice_walk_law, out_weight

p = 3
print("edge () -> (1):", lattice_edge_weight(Partition(), Partition([1]), p))
print("edge (1) -> (2):", lattice_edge_weight(Partition([1]), Partition([2]), p))
print("edge (1) -> (1,1):", lattice_edge_weight(Partition([1]), Partition([1, 1]), p))

mismatch = [lam for lam in enumerate_partitions(8) if lattice_path_weight_sum(lam, p) * aut_order(lam, p) != 1]
print(f"\npath sum times #Aut, |lambda| <= 8, p={p}: mismatches = {mismatch}")

# out-weights stay below 1, so the weights double as a walk that may halt
for conj in [Partition(), Partition([1]), Partition([2, 1]), Partition([3, 3])]:
    print(f"out-weight at {str(conj):5s} = {out_weight(conj, p)}")

rng = np.random.default_rng(11)
walks = [lattice_walk_sample(p, rng) for _ in range(20_000)]
for lam in [Partition(), Partition([1]), Partition([2]), Partition([1, 1])]:
    freq = sum(w == lam for w in walks) / len(walks)
    print(f"{str(lam):4s} observed {freq:.4f}  exact {float(lattice_walk_law(lam, p)):.4f}")
