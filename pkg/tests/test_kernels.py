import math

import numpy as np
import pytest

from oracles import pair_loop_aggregates
from randic_lab.kernels import (
    ConstantKernel,
    ExponentialKernel,
    KernelError,
    MatrixKernel,
    aggregates,
    kernel_value,
    load_matrix_csv,
    parse_kernel,
)


def test_constant_value():
    assert kernel_value(ConstantKernel(), 3, 7, 10) == 1.0


def test_diagonal_rejected():
    for k in (ConstantKernel(), ExponentialKernel(1.0), MatrixKernel(np.full((3, 3), 0.5))):
        with pytest.raises(KernelError):
            kernel_value(k, 2, 2, 3)


def test_exponential_far_corner():
    n = 10_000
    assert kernel_value(ExponentialKernel(1.0), 0, n - 1, n) == pytest.approx(math.exp(-1), rel=1e-3)


@pytest.mark.parametrize("kappa", [0.1, 1.0, 3.0])
def test_exponential_bounds_and_symmetry(kappa):
    k = ExponentialKernel(kappa)
    n = 40
    m = k.matrix(n)
    off = ~np.eye(n, dtype=bool)
    assert (m[off] > k.epsilon).all() and (m[off] <= 1).all()
    assert np.array_equal(m, m.T)
    assert k.epsilon == math.exp(-2 * kappa)
    assert kernel_value(k, 3, 17, n) == kernel_value(k, 17, 3, n)


def test_exponential_rejects_nonpositive_kappa():
    for bad in (0.0, -1.0, float("nan")):
        with pytest.raises(KernelError):
            ExponentialKernel(bad)


def test_constant_aggregates_exact():
    agg = aggregates(ConstantKernel(), 5)
    assert agg.f.tolist() == [4.0] * 5


def test_matrix_aggregates():
    agg = aggregates(MatrixKernel(np.full((4, 4), 0.5)), 4)
    assert agg.f.tolist() == [1.5] * 4


@pytest.mark.parametrize("n", [2, 3, 17, 500, 2000])
@pytest.mark.parametrize("kappa", [0.01, 1.0, 4.0])
def test_exponential_fast_path_matches_double_loop(n, kappa):
    k = ExponentialKernel(kappa)
    fast = aggregates(k, n).f
    w = np.exp(-kappa * np.arange(n) / n)
    slow = np.array([math.fsum((w[i] * np.delete(w, i)).tolist()) for i in range(n)])
    assert np.allclose(fast, slow, rtol=1e-10, atol=0)


def test_exponential_fast_path_matches_scalar_loop_small():
    k = ExponentialKernel(1.3)
    n = 12
    m = [[0.0 if i == j else kernel_value(k, i, j, n) for j in range(n)] for i in range(n)]
    assert np.allclose(aggregates(k, n).f, pair_loop_aggregates(m), rtol=1e-12)


def test_exponential_aggregate_asymptotics():
    kappa, n = 1.0, 100_000
    f = aggregates(ExponentialKernel(kappa), n).f
    i = np.arange(n)
    approx = n * np.exp(-kappa * i / n) * (1 - math.exp(-kappa)) / kappa
    assert np.max(np.abs(f / approx - 1)) < 1e-3


@pytest.mark.parametrize("kappa", [0.5, 2.0])
def test_aggregate_bounds(kappa):
    k = ExponentialKernel(kappa)
    n = 300
    f = aggregates(k, n).f
    assert (f > k.epsilon * (n - 1)).all() and (f <= n - 1).all()


def test_matrix_validation_reports_index():
    m = np.full((3, 3), 0.5)
    m[0, 2] = m[2, 0] = 1.5
    with pytest.raises(KernelError, match=r"\(0, 2\)"):
        MatrixKernel(m)
    m = np.full((3, 3), 0.5)
    m[1, 2] = m[2, 1] = 0.0
    with pytest.raises(KernelError, match=r"\(1, 2\)"):
        MatrixKernel(m)
    m = np.full((3, 3), 0.5)
    m[0, 1] = 0.6
    with pytest.raises(KernelError, match="symmetric"):
        MatrixKernel(m)


def test_matrix_epsilon_explicit_and_default():
    m = np.array([[0, 0.3, 0.7], [0.3, 0, 0.9], [0.7, 0.9, 0]])
    assert MatrixKernel(m).epsilon == pytest.approx(0.3 - 1e-12, abs=1e-15)
    with pytest.raises(KernelError):
        MatrixKernel(m, epsilon=0.3)
    assert MatrixKernel(m, epsilon=0.2).epsilon == 0.2


def test_matrix_size_mismatch():
    k = MatrixKernel(np.full((4, 4), 0.5))
    with pytest.raises(KernelError):
        aggregates(k, 5)


def test_load_csv_and_parse(tmp_path):
    path = tmp_path / "k.csv"
    path.write_text("0,0.5,0.25\n0.5,0,1\n0.25,1,0\n")
    k = load_matrix_csv(path)
    assert kernel_value(k, 1, 2, 3) == 1.0
    assert parse_kernel(f"matrix:{path}") == k
    assert parse_kernel("constant") == ConstantKernel()
    assert parse_kernel("exp:2.5") == ExponentialKernel(2.5)
    for bad in ("exp", "exp:abc", "gauss:1", "constant:3"):
        with pytest.raises(KernelError):
            parse_kernel(bad)
