"""Tensor-product Gauss-Legendre quadrature for the heterogeneity integral

    I(kappa, alpha) = int_0^1 int_0^1 (e^{-kappa x} + e^{-kappa y})^alpha e^{-kappa (x + y)} dx dy
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MIN_ORDER = 8
MAX_ORDER = 1024


class QuadratureError(RuntimeError):
    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


@lru_cache(maxsize=None)
def _unit_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def heterogeneity_integrand(x, y, kappa: float, alpha: float):
    ex = np.exp(-kappa * np.asarray(x))
    ey = np.exp(-kappa * np.asarray(y))
    return (ex + ey) ** alpha * ex * ey


def _gauss_estimate(kappa: float, alpha: float, order: int) -> float:
    x, w = _unit_rule(order)
    vals = heterogeneity_integrand(x[:, None], x[None, :], kappa, alpha)
    return float(w @ vals @ w)


def quadrature_double(kappa: float, alpha: float, tol: float = 1e-12) -> float:
    """Integrate with orders 8, 16, ... until successive estimates differ by < ``tol``.

    Raises :class:`QuadratureError` (carrying the last estimate and difference)
    if order 1024 is reached without convergence.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    order = MIN_ORDER
    prev = _gauss_estimate(kappa, alpha, order)
    while order < MAX_ORDER:
        order *= 2
        cur = _gauss_estimate(kappa, alpha, order)
        if abs(cur - prev) < tol:
            return cur
        prev, diff = cur, abs(cur - prev)
    raise QuadratureError(
        f"quadrature did not reach tol={tol:g} by order {MAX_ORDER} (last difference {diff:.3g})",
        prev,
        diff,
    )
