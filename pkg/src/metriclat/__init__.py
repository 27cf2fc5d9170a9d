"""Exact-arithmetic finite metric lattices and the partition-lattice toolkit.

Submodules: ``partitions`` (P_n combinatorics and selectors), ``lattice``
(generic finite metric lattices and the metric calculus), ``kernels``
(zeta/Moebius, PSD/CND kernels, matroid ranks), ``logic`` (the
continuous-logic DSL), ``verify`` (the named check registry) and ``cli``.
"""

from .errors import MetricLatError
from .lattice import (
    FiniteMetricLattice,
    boolean_measure_lattice,
    build_lattice,
    partition_lattice,
)
from .partitions import Partition, enumerate_partitions, parse_partition

__all__ = [
    "MetricLatError",
    "FiniteMetricLattice",
    "build_lattice",
    "partition_lattice",
    "boolean_measure_lattice",
    "Partition",
    "enumerate_partitions",
    "parse_partition",
]

__version__ = "0.1.0"
