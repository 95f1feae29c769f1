"""Empirical summaries and goodness-of-fit against exact laws."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from scipy import stats as sps

from .partitions import Partition, enumerate_partitions
from .measure import MeasureContext, p_trivial, weight
from .qseries import EvalResult

SAMPLERS = ("ytab", "lattice", "matrix", "cokernel", "uquotient")


@dataclass
class SampleSummary:
    counts: dict[Partition, int]
    total: int
    seed: int
    sampler: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}")
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not add up to total")

    @classmethod
    def from_samples(cls, samples: Iterable[Partition], seed: int, sampler: str,
                     **metadata) -> "SampleSummary":
        counts = Counter(Partition(s) for s in samples)
        return cls(dict(counts), sum(counts.values()), seed, sampler, metadata)

    def frequency(self, lam: Partition) -> Fraction:
        return Fraction(self.counts.get(Partition(lam), 0), self.total)

    def to_json(self) -> dict:
        rows = sorted(self.counts.items(), key=lambda kv: (kv[0].size, [-x for x in kv[0]]))
        return {"sampler": self.sampler, "seed": self.seed, "total": self.total,
                "metadata": self.metadata,
                "counts": [{"partition": str(lam), "count": c} for lam, c in rows]}


@dataclass(frozen=True)
class Comparison:
    tv: Fraction
    chisq: float
    dof: int
    pvalue: float


def stats_compare(observed: SampleSummary, expected: Mapping[Partition, Fraction],
                  bucket_bound: Optional[int] = None) -> Comparison:
    """Total variation and Pearson chi-square over pooled buckets.

    Partitions of size ``<= bucket_bound`` (every key of ``expected`` when
    ``None``) get their own bucket; all remaining mass, observed or expected,
    is pooled into one rest bucket.
    """
    if observed.total == 0:
        raise ValueError("empty sample")
    expected = {Partition(k): Fraction(v) for k, v in expected.items()}
    mass = sum(expected.values(), Fraction(0))
    if mass > 1:
        raise ValueError(f"expected mass {mass} exceeds 1")
    keys = set(expected)
    if bucket_bound is not None:
        keys = {k for k in keys if k.size <= bucket_bound}
        keys |= {k for k in observed.counts if k.size <= bucket_bound}
    keys = sorted(keys, key=lambda k: (k.size, [-x for x in k]))
    n = observed.total
    obs = [Fraction(observed.counts.get(k, 0), n) for k in keys]
    exp = [expected.get(k, Fraction(0)) for k in keys]
    obs.append(1 - sum(obs, Fraction(0)))
    exp.append(1 - sum(exp, Fraction(0)))
    tv = sum((abs(o - e) for o, e in zip(obs, exp)), Fraction(0)) / 2
    chisq = 0.0
    cells = 0
    for o, e in zip(obs, exp):
        if e > 0:
            chisq += float((o - e) ** 2 * n / e)
            cells += 1
        elif o > 0:
            chisq = float("inf")
    dof = max(cells - 1, 1)
    pvalue = float(sps.chi2.sf(chisq, dof)) if chisq != float("inf") else 0.0
    return Comparison(tv, chisq, dof, pvalue)


def cl_law(p: int, max_size: int, ctx: Optional[MeasureContext] = None) -> dict[Partition, Fraction]:
    """Cohen-Lenstra probabilities (interval midpoints) of every group of order ``<= p^max_size``."""
    ctx = ctx or MeasureContext(p)
    p0 = p_trivial(ctx).value
    return {lam: weight(lam, ctx) * p0 for lam in enumerate_partitions(max_size)}


def tv_distance(a: Mapping[Partition, Fraction], b: Mapping[Partition, Fraction]) -> Fraction:
    """Half the L1 distance between two laws given on finite supports."""
    keys = set(a) | set(b)
    return sum((abs(Fraction(a.get(k, 0)) - Fraction(b.get(k, 0))) for k in keys), Fraction(0)) / 2


def tv_to_cl(law: Mapping[Partition, Fraction], p: int,
             ctx: Optional[MeasureContext] = None) -> EvalResult:
    """Total variation between a finitely supported law and the Cohen-Lenstra measure.

    Groups outside the support of ``law`` contribute their whole CL mass,
    which is ``1 - (CL mass of the support)``, so the distance is exact up to
    the uncertainty in ``P(0)``.
    """
    ctx = ctx or MeasureContext(p)
    p0 = p_trivial(ctx)
    diff = EvalResult(Fraction(0))
    covered = EvalResult(Fraction(0))
    for lam, m in law.items():
        cl = p0 * weight(lam, ctx)
        covered = covered + cl
        d = cl - Fraction(m)
        # |d| for an interval that does not straddle zero
        diff = diff + (d if d.value >= 0 else -d)
    return ((diff + (1 - covered)) * Fraction(1, 2)).coarsen()
