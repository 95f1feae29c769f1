"""Jordan blocks of a random invertible matrix over F_2 at eigenvalue 1.

Conjugacy classes of GL(n, 2) give the exact law; as n grows it approaches
the Cohen-Lenstra distribution.
"""
from collections import Counter

import numpy as np

from cohen_lenstra import MatrixModP, partition_at
from cohen_lenstra.conjugacy import class_size, enumerate_classes, exact_marginal
from cohen_lenstra.fplinalg import partition_at_batch, random_gl_batch
from cohen_lenstra.partitions import gl_order
from cohen_lenstra.stats import tv_to_cl

J = MatrixModP([[1, 1, 0], [0, 1, 0], [0, 0, 1]], 2)
print("Jordan partition of J at 1:", partition_at(J, 1))

for c in enumerate_classes(2, 2):
    print(" ", [(str(f), tuple(l)) for f, l in c.blocks], "size", class_size(c))
print("|GL(2,2)| =", gl_order(2, 2))

print("\nn  classes  TV to CL")
for n in range(1, 9):
    law = exact_marginal(n, 2, 1)
    n_classes = sum(1 for _ in enumerate_classes(n, 2))
    print(f"{n}  {n_classes:7d}  {float(tv_to_cl(law, 2).value):.5f}")

rng = np.random.default_rng(5)
mats, attempts = random_gl_batch(4, 2, rng, 50_000)
print(f"\n50000 elements of GL(4,2) after {attempts} draws")
seen = Counter(partition_at_batch(mats, 2, 1))
exact = exact_marginal(4, 2, 1)
for lam in sorted(exact, key=lambda l: (l.size, tuple(-x for x in l))):
    print(f"  {str(lam):8s} observed {seen[lam] / 50_000:.4f}  exact {float(exact[lam]):.4f}")
