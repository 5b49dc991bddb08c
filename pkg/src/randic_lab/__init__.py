"""Randic-type topological indices on random and real graphs.

The package computes the general Randic index ``R_alpha`` and the general
sum-connectivity index ``chi_alpha``, samples inhomogeneous Erdos-Renyi graphs
``G(n, p, f)``, evaluates the theoretical leading terms of both indices, and
runs seeded Monte Carlo studies of index/limit ratios.
"""

from .edgelist import EdgeListDocument, EdgeListError, parse_edge_list, read_edge_list, write_edge_list
from .generator import SampleConfig, dense_enough, sample_graph, sparsity_bound
from .graph import Graph, GraphError, build_graph, degrees
from .harness import (
    ConvergenceReport,
    GridPoint,
    HypothesisViolation,
    NetworkSummary,
    converge_study,
    degree_moment_check,
    replicate_seed,
    report_table,
    summarize_network,
)
from .indices import (
    TABLE1_SPECS,
    Family,
    IndexSpec,
    IndexValue,
    compute_index,
    general_randic,
    general_sum_connectivity,
    harmonic,
    index_suite,
    modified_second_zagreb,
)
from .kernels import (
    ConstantKernel,
    ExponentialKernel,
    Kernel,
    KernelAggregates,
    KernelError,
    MatrixKernel,
    aggregates,
    kernel_value,
    load_matrix_csv,
    parse_kernel,
)
from .limits import (
    LimitResult,
    Mode,
    limit,
    limit_chi_exact,
    limit_er_chi,
    limit_er_randic,
    limit_exp_chi,
    limit_exp_randic,
    limit_randic_exact,
)
from .quadrature import QuadratureError, quadrature_double

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path to a bundled edge-list fixture (``karate``, ``k5``, ``petersen``)."""
    from importlib.resources import files

    return files(__name__) / "data" / f"{name}.edges"
