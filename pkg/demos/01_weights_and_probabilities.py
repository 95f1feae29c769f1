"""How likely is a random finite abelian 2-group to be trivial, cyclic, of order 4?

Every group is a partition: (3, 1) is Z/8 x Z/2. Its weight is 1/#Aut and the
probabilities are weights divided by the total weight.
"""
from cohen_lenstra import MeasureContext, Partition, aut_order, cl_prob, prob_order, prob_rank, total_weight
from cohen_lenstra.measure import prob_exponent_le, prob_rank_le1

ctx = MeasureContext(2)

# a few automorphism groups
for lam in ["1", "2", "1+1", "2+1", "1+1+1"]:
    g = Partition.parse(lam)
    print(f"#Aut of shape {lam:6s} = {aut_order(g, 2)}")

# total weight is an infinite product; the result carries its own error bar
tw = total_weight(ctx)
print(f"\ntotal weight at p=2: {float(tw.value):.9f} (+- {float(tw.tail_bound):.1e})")

print("\nP(G = 0)      ", f"{float(cl_prob(Partition(), ctx).value):.6f}")
print("P(G = Z/2)    ", f"{float(cl_prob(Partition([1]), ctx).value):.6f}")
print("P(|G| = 4)    ", f"{float(prob_order(2, ctx).value):.6f}")
print("P(G cyclic)   ", f"{float(prob_rank_le1(ctx).value):.6f}")
print("P(rank 2)     ", f"{float(prob_rank(2, ctx).value):.6f}")
print("P(exp <= 2)   ", f"{float(prob_exponent_le(1, ctx).value):.6f}")

# the same numbers for bigger primes: almost every group is trivial
for p in (3, 5, 7, 101):
    print(f"p={p:3d}: P(trivial) = {float(cl_prob(Partition(), MeasureContext(p)).value):.6f}")

# exact rationals are available too; value is the interval midpoint
r = prob_rank(1, ctx)
print(f"\nP(rank 1) = {float(r.value):.15f}")
print("certified half-width:", float(r.tail_bound))
