import math

import numpy as np
import pytest

from randic_lab.indices import Family, IndexSpec
from randic_lab.kernels import ConstantKernel, ExponentialKernel, MatrixKernel
from randic_lab.limits import (
    Mode,
    limit,
    limit_chi_exact,
    limit_er_chi,
    limit_er_randic,
    limit_exp_chi,
    limit_exp_randic,
    limit_randic_exact,
)

ALPHAS = [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0]


def pair_sum_oracle(fmatrix, p, family, alpha):
    """Direct i<j double loop over a dense kernel matrix."""
    n = fmatrix.shape[0]
    f = fmatrix.sum(axis=1)
    terms = []
    for i in range(n):
        for j in range(i + 1, n):
            if family == "randic":
                terms.append(f[i] ** alpha * f[j] ** alpha * fmatrix[i, j])
            else:
                terms.append((f[i] + f[j]) ** alpha * fmatrix[i, j])
    scale = p ** (2 * alpha + 1) if family == "randic" else p ** (alpha + 1)
    return scale * math.fsum(terms)


@pytest.mark.parametrize("alpha", [-2.0, -1.0, -0.5, 0.3, 1.0])
@pytest.mark.parametrize(
    "kernel", [ConstantKernel(), ExponentialKernel(1.2)], ids=["const", "exp"]
)
def test_exact_sums_match_pair_loop(kernel, alpha):
    n, p = 30, 0.3
    m = kernel.matrix(n)
    assert limit_randic_exact(n, p, kernel, alpha).value == pytest.approx(pair_sum_oracle(m, p, "randic", alpha), rel=1e-12)
    assert limit_chi_exact(n, p, kernel, alpha).value == pytest.approx(pair_sum_oracle(m, p, "chi", alpha), rel=1e-12)


def test_matrix_kernel_exact_sums():
    rng = np.random.default_rng(3)
    a = rng.uniform(0.2, 1.0, (25, 25))
    m = np.triu(a, 1) + np.triu(a, 1).T
    k = MatrixKernel(m)
    for alpha in (-1.0, -0.5, 1.0):
        assert limit_randic_exact(25, 0.4, k, alpha).value == pytest.approx(pair_sum_oracle(k.matrix(25), 0.4, "randic", alpha), rel=1e-12)
        assert limit_chi_exact(25, 0.4, k, alpha).value == pytest.approx(pair_sum_oracle(k.matrix(25), 0.4, "chi", alpha), rel=1e-12)


@pytest.mark.parametrize("p", [0.01, 0.3, 1.0])
def test_constant_randic_half_is_n_over_2(p):
    assert limit_randic_exact(37, p, ConstantKernel(), -0.5).value == pytest.approx(18.5, rel=4e-16)


def test_constant_randic_neg1():
    n, p = 50, 0.2
    assert limit_randic_exact(n, p, ConstantKernel(), -1).value == pytest.approx(n / (2 * p * (n - 1)), rel=1e-15)


def test_constant_chi_neg1_and_one():
    n, p = 64, 0.25
    assert limit_chi_exact(n, p, ConstantKernel(), -1).value == pytest.approx(n / 4, rel=4e-16)
    assert limit_chi_exact(n, p, ConstantKernel(), 1).value == pytest.approx(n * (n - 1) ** 2 * p**2, rel=1e-14)


def test_er_closed_forms():
    assert limit_er_randic(1000, 0.37, -0.5).value == 500
    assert limit_er_randic(123, 0.01, -1).value == pytest.approx(50, rel=1e-15)
    assert limit_er_randic(100, 0.1, 1).value == pytest.approx(50_000, rel=1e-12)
    assert limit_er_chi(100, 0.2, -1).value == 25
    assert limit_er_chi(100, 0.1, 0).value == pytest.approx(500, rel=1e-12)
    assert limit_er_chi(100, 0.1, 2).value == pytest.approx(200_000, rel=1e-12)


def test_closed_forms_log_space_for_extreme_alpha():
    # n^62 overflows on its own; the product with p^61 does not
    v = limit_er_randic(10**6, 1e-3, 30).value
    expected = math.exp(62 * math.log(10**6) + 61 * math.log(1e-3) - math.log(2))
    assert math.isfinite(v) and v == pytest.approx(expected, rel=1e-9)
    v = limit_randic_exact(100, 0.5, ExponentialKernel(1.0), -150).value
    assert v > 0 and math.isfinite(v)


@pytest.mark.parametrize("n", [100, 1000, 10_000])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_exact_over_closed_constant(n, alpha):
    p = 0.3
    for exact, closed in (
        (limit_randic_exact(n, p, ConstantKernel(), alpha), limit_er_randic(n, p, alpha)),
        (limit_chi_exact(n, p, ConstantKernel(), alpha), limit_er_chi(n, p, alpha)),
    ):
        assert abs(exact.value / closed.value - 1) <= 10 / n


@pytest.mark.parametrize("alpha", [-1.0, -0.5, 1.0])
def test_exact_over_closed_exponential(alpha):
    n, p, k = 5000, 0.2, ExponentialKernel(1.0)
    assert limit_randic_exact(n, p, k, alpha).value / limit_exp_randic(n, p, 1.0, alpha).value == pytest.approx(1, abs=0.05)
    assert limit_chi_exact(n, p, k, alpha).value / limit_exp_chi(n, p, 1.0, alpha).value == pytest.approx(1, abs=0.05)


def test_chi_exact_against_closed_at_4000():
    n, k = 4000, ExponentialKernel(1.0)
    ratio = limit_chi_exact(n, 0.1, k, -0.5).value / limit_exp_chi(n, 0.1, 1.0, -0.5).value
    assert abs(ratio - 1) < 0.02


def test_exp_randic_zagreb_value():
    oracle = 1 / (2 * 0.1) / (1 - math.exp(-1)) ** 2
    assert limit_exp_randic(100, 0.1, 1.0, -1).value == pytest.approx(oracle, rel=1e-14)
    assert limit_exp_randic(100, 0.1, 1.0, -1).value == pytest.approx(12.5133, abs=1e-4)


def test_exp_randic_small_kappa_recovers_er():
    assert limit_exp_randic(1000, 0.2, 1e-8, -0.5).value == pytest.approx(500, rel=1e-7)


@pytest.mark.parametrize("kappa", [0.3, 1.0, 5.0])
def test_exp_randic_continuous_at_minus_one(kappa):
    n = 500
    at = limit_exp_randic(n, 0.1, kappa, -1.0).value
    # d/dalpha of the log-limit is O(log n + kappa), so the gap must shrink linearly in eps
    slope = 2 * math.log(n) + 2 * math.log(1 / 0.1) + 2 * kappa + 10
    for eps in (1e-4, -1e-4, 2e-6, -2e-6, 5e-7, -5e-7, 1e-7, 1e-9):
        assert abs(limit_exp_randic(n, 0.1, kappa, -1.0 + eps).value / at - 1) <= slope * abs(eps)
    for eps in (1e-11, -1e-11, 1e-13):
        assert limit_exp_randic(n, 0.1, kappa, -1.0 + eps).value == pytest.approx(at, rel=1e-8)


@pytest.mark.parametrize("alpha", [-1.0, -0.5, 0.0, 1.0, 2.0])
def test_exp_chi_small_kappa_recovers_er(alpha):
    n, p = 300, 0.2
    assert limit_exp_chi(n, p, 1e-10, alpha).value == pytest.approx(limit_er_chi(n, p, alpha).value, rel=1e-8)


def test_exp_chi_separable_alpha_zero():
    n, p = 300, 0.2
    # alpha = 0: n^2 p / 2 * I with I = (1 - e^-1)^2
    assert limit_exp_chi(n, p, 1.0, 0.0).value == pytest.approx(n**2 * p / 2 * (1 - math.exp(-1)) ** 2, rel=1e-12)


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        limit_exp_randic(100, 0.1, 0.0, -0.5)
    with pytest.raises(ValueError):
        limit_exp_chi(100, 0.1, -1.0, -0.5)
    with pytest.raises(ValueError):
        limit_randic_exact(1, 0.1, ConstantKernel(), -0.5)
    with pytest.raises(ValueError):
        limit_er_chi(100, 0.0, -1)


def test_dispatch_and_result_fields():
    spec = IndexSpec(Family.RANDIC, -0.5)
    r = limit(spec, 1000, 0.1, ConstantKernel(), "closed_form")
    assert r.value == 500 and r.mode is Mode.CLOSED and r.spec == spec and r.n == 1000
    r = limit(spec, 1000, 0.1, ExponentialKernel(2.0), Mode.EXACT)
    assert r.mode is Mode.EXACT and r.value > 0
    with pytest.raises(ValueError):
        limit(spec, 3, 0.1, MatrixKernel(np.full((3, 3), 0.5)), Mode.CLOSED)


@pytest.mark.parametrize("kernel", [ConstantKernel(), ExponentialKernel(1.0)], ids=["const", "exp"])
def test_p_free_limits_are_bitwise_invariant(kernel):
    n = 400
    r = {limit_randic_exact(n, p, kernel, -0.5).value for p in (0.05, 0.1, 0.5)}
    h = {2 * limit_chi_exact(n, p, kernel, -1.0).value for p in (0.05, 0.1, 0.5)}
    assert len(r) == 1 and len(h) == 1
