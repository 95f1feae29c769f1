"""Cohen-Lenstra measure on finite abelian p-groups: exact probabilities,
samplers and their cross-checks."""

from .partitions import (
    GroupShape,
    Partition,
    aut_order,
    conjugate,
    enumerate_partitions,
    from_group_shape,
    to_group_shape,
)
from .qseries import EulerProduct, EvalResult, QSeries, eisenstein, euler_product, eval_at
from .measure import (
    MeasureContext,
    cl_prob,
    expected_value,
    mehnert_moment,
    moment_p_rank,
    moment_value,
    p_trivial,
    prob_exponent_le,
    prob_order,
    prob_rank,
    prob_rank_order,
    total_weight,
    u_prob,
    weight,
    zeta_k,
)
from .young import lattice_path_weight_sum, lattice_walk_sample, p_alg_N, p_output_N, ytab_sample
from .fplinalg import MatrixModP, cokernel_sample, partition_at, random_gl, smith_normal_form_p
from .conjugacy import ClassLabel, PolyFp, enumerate_classes, exact_marginal
from .stats import SampleSummary, stats_compare

__version__ = "0.1.0"

__all__ = [
    "GroupShape", "Partition", "aut_order", "conjugate", "enumerate_partitions",
    "from_group_shape", "to_group_shape",
    "EulerProduct", "EvalResult", "QSeries", "eisenstein", "euler_product", "eval_at",
    "MeasureContext", "cl_prob", "expected_value", "mehnert_moment", "moment_p_rank",
    "moment_value", "p_trivial", "prob_exponent_le", "prob_order", "prob_rank",
    "prob_rank_order", "total_weight", "u_prob", "weight", "zeta_k",
    "lattice_path_weight_sum", "lattice_walk_sample", "p_alg_N", "p_output_N", "ytab_sample",
    "MatrixModP", "cokernel_sample", "partition_at", "random_gl", "smith_normal_form_p",
    "ClassLabel", "PolyFp", "enumerate_classes", "exact_marginal",
    "SampleSummary", "stats_compare",
]
