"""Edge-probability kernels for G(n, p, f) and their row aggregates.

A kernel supplies ``f_ij`` in ``(epsilon, 1]`` for every off-diagonal pair.
Three variants exist:

* :class:`ConstantKernel` -- ``f_ij = 1`` (classical Erdos-Renyi).
* :class:`ExponentialKernel` -- ``f_ij = exp(-kappa i/n) exp(-kappa j/n)`` with
  0-based ``i``; the offset from 1-based indexing only moves finite-n sums by
  O(1/n).
* :class:`MatrixKernel` -- an explicit symmetric ``n x n`` array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MATRIX_EPSILON_SLACK = 1e-12


class KernelError(ValueError):
    pass


@dataclass(frozen=True)
class KernelAggregates:
    """Row sums ``f_i = sum_{j != i} f_ij`` for a kernel at size ``n``."""

    n: int
    f: np.ndarray
    total: float  # sum_i f_i == 2 sum_{i<j} f_ij


class Kernel:
    """Base class; concrete kernels override the hooks below."""

    name = "kernel"

    @property
    def epsilon(self) -> float:
        raise NotImplementedError

    def value(self, i: int, j: int, n: int) -> float:
        self._check_pair(i, j, n)
        return float(self._value(i, j, n))

    def aggregates(self, n: int) -> KernelAggregates:
        if n < 2:
            raise KernelError(f"aggregates need n >= 2, got {n}")
        f = self._row_sums(n)
        f.flags.writeable = False
        return KernelAggregates(n, f, math.fsum(f.tolist()))

    def row_block(self, n: int, i: int) -> np.ndarray:
        """``f_ij`` for ``j = i+1 .. n-1``."""
        raise NotImplementedError

    def matrix(self, n: int) -> np.ndarray:
        """Dense ``n x n`` kernel with zero diagonal (testing and small n)."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {"type": self.name, "epsilon": self.epsilon}

    def _check_pair(self, i: int, j: int, n: int) -> None:
        if i == j:
            raise KernelError(f"kernel is undefined on the diagonal (i = j = {i})")
        if not (0 <= i < n and 0 <= j < n):
            raise KernelError(f"pair ({i}, {j}) outside [0, {n})")

    def _value(self, i, j, n):
        raise NotImplementedError

    def _row_sums(self, n: int) -> np.ndarray:
        return self.matrix(n).sum(axis=1)


class ConstantKernel(Kernel):
    name = "constant"

    def __eq__(self, other):
        return isinstance(other, ConstantKernel)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "ConstantKernel()"

    @property
    def epsilon(self) -> float:
        # Every value is 1; any epsilon below 1 satisfies the lower-bound hypothesis.
        return 0.5

    def _value(self, i, j, n):
        return 1.0

    def _row_sums(self, n):
        return np.full(n, float(n - 1))

    def row_block(self, n, i):
        return np.ones(n - i - 1)

    def matrix(self, n):
        m = np.ones((n, n))
        np.fill_diagonal(m, 0.0)
        return m


class ExponentialKernel(Kernel):
    name = "exponential"

    def __init__(self, kappa: float):
        kappa = float(kappa)
        if not (kappa > 0 and math.isfinite(kappa)):
            raise KernelError(f"kappa must be a positive finite number, got {kappa}")
        self.kappa = kappa

    def __eq__(self, other):
        return isinstance(other, ExponentialKernel) and other.kappa == self.kappa

    def __hash__(self):
        return hash((self.name, self.kappa))

    def __repr__(self):
        return f"ExponentialKernel(kappa={self.kappa!r})"

    @property
    def epsilon(self) -> float:
        return math.exp(-2.0 * self.kappa)

    def weights(self, n: int) -> np.ndarray:
        """Node weights ``w_i = exp(-kappa i / n)``; ``f_ij = w_i w_j``."""
        return np.exp(-self.kappa * np.arange(n) / n)

    def weight_total(self, n: int) -> float:
        """Closed-form geometric sum of :meth:`weights`."""
        # (1 - r^n) / (1 - r) with r = exp(-kappa/n), via expm1 for accuracy
        return math.expm1(-self.kappa) / math.expm1(-self.kappa / n)

    def _value(self, i, j, n):
        return math.exp(-self.kappa * i / n) * math.exp(-self.kappa * j / n)

    def _row_sums(self, n):
        w = self.weights(n)
        return w * (self.weight_total(n) - w)

    def row_block(self, n, i):
        w_i = math.exp(-self.kappa * i / n)
        return w_i * np.exp(-self.kappa * np.arange(i + 1, n) / n)

    def matrix(self, n):
        w = self.weights(n)
        m = np.outer(w, w)
        np.fill_diagonal(m, 0.0)
        return m

    def describe(self):
        return {**super().describe(), "kappa": self.kappa}


class MatrixKernel(Kernel):
    """Explicit symmetric kernel; the diagonal is ignored.

    ``epsilon`` defaults to the smallest off-diagonal entry minus a small
    slack. If given explicitly, every off-diagonal entry must exceed it.
    """

    name = "matrix"

    def __init__(self, values, epsilon: float | None = None):
        m = np.array(values, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise KernelError(f"kernel matrix must be square, got shape {m.shape}")
        if m.shape[0] < 2:
            raise KernelError("kernel matrix needs at least 2 nodes")
        n = m.shape[0]
        off = ~np.eye(n, dtype=bool)
        if not np.isfinite(m[off]).all():
            raise KernelError("kernel matrix contains non-finite entries")
        asym = np.argwhere(off & (m != m.T))
        if asym.size:
            i, j = asym[0]
            raise KernelError(f"kernel matrix is not symmetric at ({i}, {j}): {m[i, j]} != {m[j, i]}")
        floor = 0.0 if epsilon is None else float(epsilon)
        if epsilon is not None and not (0.0 < floor < 1.0):
            raise KernelError(f"epsilon must lie in (0, 1), got {epsilon}")
        bad = np.argwhere(off & ((m <= floor) | (m > 1.0)))
        if bad.size:
            i, j = bad[0]
            raise KernelError(f"kernel entry ({i}, {j}) = {m[i, j]} outside ({floor}, 1]")
        np.fill_diagonal(m, 0.0)
        m.flags.writeable = False
        self.values = m
        if epsilon is None:
            epsilon = max(float(m[off].min()) - MATRIX_EPSILON_SLACK, 0.0)
            if epsilon <= 0.0:
                raise KernelError("kernel entries too small to certify a positive lower bound")
        self._epsilon = float(epsilon)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other):
        return isinstance(other, MatrixKernel) and np.array_equal(other.values, self.values)

    def __hash__(self):
        return hash((self.name, self.values.tobytes()))

    def __repr__(self):
        return f"MatrixKernel(n={self.n})"

    @property
    def epsilon(self) -> float:
        return self._epsilon

    def _check_size(self, n):
        if n != self.n:
            raise KernelError(f"matrix kernel has {self.n} nodes but n = {n} was requested")

    def _value(self, i, j, n):
        self._check_size(n)
        return self.values[i, j]

    def row_block(self, n, i):
        self._check_size(n)
        return self.values[i, i + 1 :]

    def matrix(self, n):
        self._check_size(n)
        return self.values.copy()

    def describe(self):
        return {**super().describe(), "n": self.n}


def kernel_value(k: Kernel, i: int, j: int, n: int) -> float:
    return k.value(i, j, n)


def aggregates(k: Kernel, n: int) -> KernelAggregates:
    return k.aggregates(n)


def load_matrix_csv(path: str | Path) -> MatrixKernel:
    """Read an ``n x n`` comma-separated kernel matrix."""
    try:
        values = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise KernelError(f"cannot parse kernel matrix {path}: {exc}") from exc
    return MatrixKernel(values)


def parse_kernel(text: str) -> Kernel:
    """Parse ``constant``, ``exp:KAPPA`` or ``matrix:FILE``."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "constant" and not arg:
        return ConstantKernel()
    if kind in ("exp", "exponential") and arg:
        try:
            kappa = float(arg)
        except ValueError:
            raise KernelError(f"invalid kappa in kernel spec {text!r}") from None
        return ExponentialKernel(kappa)
    if kind == "matrix" and arg:
        return load_matrix_csv(arg)
    raise KernelError(f"unknown kernel spec {text!r}; expected constant, exp:KAPPA or matrix:FILE")
