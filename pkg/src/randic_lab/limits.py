"""Leading-term limits of R_alpha and chi_alpha in G(n, p, f).

Two evaluation modes:

* ``exact_sum`` -- the leading terms

      R:   p^(2a+1) * sum_{i<j} f_i^a f_j^a f_ij
      chi: p^(a+1)  * sum_{i<j} (f_i + f_j)^a f_ij

  with exact finite-n aggregates ``f_i``. This is what Monte Carlo ratios are
  compared against.
* ``closed_form`` -- the large-n formulas for the constant kernel and the
  exponential kernel (the latter via :func:`quadrature_double`).

``p`` is applied as a separate factor, never folded into the pair sums, so
the p-free cases (R at a = -1/2, chi at a = -1) are bit-identical across p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .indices import Family, IndexSpec, power
from .kernels import ConstantKernel, ExponentialKernel, Kernel
from .quadrature import quadrature_double

# |1 + alpha| below this switches the exponential Randic formula to its series form.
ALPHA_SERIES_WINDOW = 1e-6
QUAD_TOL = 1e-12


class Mode(str, Enum):
    EXACT = "exact_sum"
    CLOSED = "closed_form"


@dataclass(frozen=True)
class LimitResult:
    value: float
    mode: Mode
    spec: IndexSpec
    n: int
    p: float
    kernel: Kernel

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "mode": self.mode.value,
            **self.spec.to_dict(),
            "n": self.n,
            "p": self.p,
            "kernel": self.kernel.describe(),
        }


def _check_model(n: int, p: float) -> None:
    if n < 2:
        raise ValueError(f"limits need n >= 2, got {n}")
    if not (0.0 < p <= 1.0):
        raise ValueError(f"p must lie in (0, 1], got {p}")


def _scaled(log_parts: list[float], direct) -> float:
    """Evaluate ``direct()``; fall back to summed logs on overflow/underflow."""
    with np.errstate(over="ignore", under="ignore"):
        try:
            v = float(direct())
        except OverflowError:
            v = math.inf
    if math.isfinite(v) and v != 0.0:
        return v
    log_v = math.fsum(log_parts)
    return math.exp(log_v) if log_v < 709.0 else math.inf


def _log_sum_pairs_separable(log_a: np.ndarray) -> tuple[float, float]:
    """log of sum_{i<j} a_i a_j for a_i = exp(log_a), as (shift, inner) in log space."""
    m = float(log_a.max())
    b = np.exp(log_a - m)
    s = math.fsum(b.tolist())
    s2 = math.fsum((b * b).tolist())
    return 2.0 * m, 0.5 * (s * s - s2)


def _pair_sum(k: Kernel, n: int, term) -> float:
    """sum_{i<j} term(i, js, f_ij) over row blocks, reduced in row order."""
    parts = []
    for i in range(n - 1):
        fij = k.row_block(n, i)
        parts.append(math.fsum(term(i, np.arange(i + 1, n), fij).tolist()))
    return math.fsum(parts)


def limit_randic_exact(n: int, p: float, k: Kernel, alpha: float) -> LimitResult:
    _check_model(n, p)
    spec = IndexSpec(Family.RANDIC, alpha)
    pf = p ** (2 * alpha + 1)
    if isinstance(k, ConstantKernel):
        pairs = n * (n - 1) / 2
        value = _scaled(
            [math.log(pairs), 2 * alpha * math.log(n - 1), (2 * alpha + 1) * math.log(p)],
            lambda: pf * (pairs * power(np.array([n - 1.0]), 2 * alpha)[0]),
        )
    elif isinstance(k, ExponentialKernel):
        # f_ij = w_i w_j, so the pair sum separates: sum_{i<j} a_i a_j with a_i = f_i^a w_i
        f = k.aggregates(n).f
        log_a = alpha * np.log(f) + np.log(k.weights(n))
        shift, inner = _log_sum_pairs_separable(log_a)
        value = _scaled(
            [shift, math.log(inner), (2 * alpha + 1) * math.log(p)],
            lambda: pf * (math.exp(shift) * inner),
        )
    else:
        fa = power(k.aggregates(n).f, alpha)
        s = _pair_sum(k, n, lambda i, js, fij: fa[i] * fa[js] * fij)
        value = pf * s
    return LimitResult(value, Mode.EXACT, spec, n, p, k)


def limit_chi_exact(n: int, p: float, k: Kernel, alpha: float) -> LimitResult:
    _check_model(n, p)
    spec = IndexSpec(Family.CHI, alpha)
    pf = p ** (alpha + 1)
    if isinstance(k, ConstantKernel):
        pairs = n * (n - 1) / 2
        value = _scaled(
            [math.log(pairs), alpha * math.log(2 * (n - 1)), (alpha + 1) * math.log(p)],
            lambda: pf * (pairs * power(np.array([2.0 * (n - 1)]), alpha)[0]),
        )
    else:
        f = k.aggregates(n).f
        s = _pair_sum(k, n, lambda i, js, fij: power(f[i] + f[js], alpha) * fij)
        value = pf * s
    return LimitResult(value, Mode.EXACT, spec, n, p, k)


def limit_er_randic(n: int, p: float, alpha: float) -> LimitResult:
    """Closed form ``n^(2(1+a)) p^(2a+1) / 2``; n/2 at a = -1/2, 1/(2p) at a = -1."""
    _check_model(n, p)
    spec = IndexSpec(Family.RANDIC, alpha)
    if alpha == -0.5:
        value = n / 2
    elif alpha == -1.0:
        value = 1.0 / (2.0 * p)
    else:
        e_n, e_p = 2 * (1 + alpha), 2 * alpha + 1
        value = _scaled(
            [e_n * math.log(n), e_p * math.log(p), -math.log(2)],
            lambda: float(n) ** e_n * p**e_p / 2,
        )
    return LimitResult(value, Mode.CLOSED, spec, n, p, ConstantKernel())


def limit_er_chi(n: int, p: float, alpha: float) -> LimitResult:
    """Closed form ``2^(a-1) n^(a+2) p^(a+1)``; n/4 at a = -1 (harmonic index n/2)."""
    _check_model(n, p)
    spec = IndexSpec(Family.CHI, alpha)
    if alpha == -1.0:
        value = n / 4
    else:
        value = _scaled(
            [(alpha - 1) * math.log(2), (alpha + 2) * math.log(n), (alpha + 1) * math.log(p)],
            lambda: 2.0 ** (alpha - 1) * float(n) ** (alpha + 2) * p ** (alpha + 1),
        )
    return LimitResult(value, Mode.CLOSED, spec, n, p, ConstantKernel())


def _relative_expm1_ratio(x: float) -> float:
    """(1 - e^-x) / x, by series near zero."""
    if abs(x) < 1e-8:
        return 1.0 - x / 2 + x * x / 6
    return -math.expm1(-x) / x


def limit_exp_randic(n: int, p: float, kappa: float, alpha: float) -> LimitResult:
    """Exponential-kernel closed form of the Randic limit.

    For ``alpha != -1``::

        n^(2(a+1)) p^(2a+1) / 2 * (1-e^-k)^(2a) (1-e^-(1+a)k)^2 / ((1+a)^2 k^(2(a+1)))

    which is rewritten with ``g = (1 - e^-(1+a)k) / ((1+a)k)`` as
    ``n^(2(a+1)) p^(2a+1) / 2 * (1-e^-k)^(2a) * g^2 * k^(-2a)``. At ``a = -1``,
    ``g = 1`` and the value reduces to ``kappa^2 / (2p (1-e^-k)^2)``. Inside
    ``|1 + a| < 1e-6`` ``g`` is taken from its Taylor series.
    """
    _check_model(n, p)
    k = ExponentialKernel(kappa)
    spec = IndexSpec(Family.RANDIC, alpha)
    one_minus = -math.expm1(-kappa)
    if alpha == -1.0:
        value = kappa**2 / (2.0 * p * one_minus**2)
    else:
        x = (1.0 + alpha) * kappa
        if abs(1.0 + alpha) < ALPHA_SERIES_WINDOW:
            g = 1.0 - x / 2 + x * x / 6
        else:
            g = _relative_expm1_ratio(x)
        e_n, e_p = 2 * (alpha + 1), 2 * alpha + 1
        logs = [
            e_n * math.log(n),
            e_p * math.log(p),
            -math.log(2),
            2 * alpha * math.log(one_minus),
            2 * math.log(g),
            -2 * alpha * math.log(kappa),
        ]
        value = _scaled(
            logs,
            lambda: float(n) ** e_n * p**e_p / 2 * one_minus ** (2 * alpha) * g * g * kappa ** (-2 * alpha),
        )
    return LimitResult(value, Mode.CLOSED, spec, n, p, k)


def limit_exp_chi(n: int, p: float, kappa: float, alpha: float, tol: float = QUAD_TOL) -> LimitResult:
    """``n^(a+2) p^(a+1) / 2 * ((1-e^-k)/k)^a * I(k, a)`` with I from quadrature."""
    _check_model(n, p)
    k = ExponentialKernel(kappa)
    spec = IndexSpec(Family.CHI, alpha)
    integral = quadrature_double(kappa, alpha, tol)
    ratio = _relative_expm1_ratio(kappa)
    logs = [
        (alpha + 2) * math.log(n),
        (alpha + 1) * math.log(p),
        -math.log(2),
        alpha * math.log(ratio),
        math.log(integral),
    ]
    value = _scaled(
        logs,
        lambda: float(n) ** (alpha + 2) * p ** (alpha + 1) / 2 * ratio**alpha * integral,
    )
    return LimitResult(value, Mode.CLOSED, spec, n, p, k)


def limit_exact(spec: IndexSpec, n: int, p: float, kernel: Kernel) -> LimitResult:
    if spec.family is Family.RANDIC:
        return limit_randic_exact(n, p, kernel, spec.alpha)
    return limit_chi_exact(n, p, kernel, spec.alpha)


def limit_closed(spec: IndexSpec, n: int, p: float, kernel: Kernel) -> LimitResult:
    """Closed-form limit; defined for constant and exponential kernels only."""
    randic = spec.family is Family.RANDIC
    if isinstance(kernel, ConstantKernel):
        return (limit_er_randic if randic else limit_er_chi)(n, p, spec.alpha)
    if isinstance(kernel, ExponentialKernel):
        return (limit_exp_randic if randic else limit_exp_chi)(n, p, kernel.kappa, spec.alpha)
    raise ValueError(f"no closed form for {kernel.name} kernels; use exact mode")


def limit(spec: IndexSpec, n: int, p: float, kernel: Kernel, mode: Mode | str = Mode.EXACT) -> LimitResult:
    mode = Mode(mode)
    return (limit_exact if mode is Mode.EXACT else limit_closed)(spec, n, p, kernel)
