"""Seeded sampling from the inhomogeneous Erdos-Renyi model G(n, p, f).

Pair ``(i, j)``, ``i < j``, is an edge when ``u_ij < p * f_ij``. The uniform
``u_ij`` is draw number ``k(i, j)`` of the Philox4x64-10 stream keyed by the
seed, where ``k`` is the row-major rank of the pair among all ``i < j`` pairs.
The draw for a pair therefore depends only on ``(seed, i, j)``, never on how
the loop is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .kernels import ConstantKernel, Kernel

# Pairs per block of the sampling loop; bounds peak memory at a few tens of MB.
BLOCK_PAIRS = 1 << 22


@dataclass(frozen=True)
class SampleConfig:
    n: int
    p: float
    kernel: Kernel
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


def pair_offsets(n: int) -> np.ndarray:
    """Rank of pair ``(i, i+1)`` in the row-major list of ``i < j`` pairs."""
    i = np.arange(n, dtype=np.int64)
    return i * (2 * n - i - 1) // 2


def pair_from_rank(n: int, rank: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    off = pair_offsets(n)
    i = np.searchsorted(off, rank, side="right") - 1
    return i, rank - off[i] + i + 1


def pair_uniforms(seed: int) -> np.random.Generator:
    """Generator whose k-th ``random()`` draw belongs to the pair of rank k."""
    return np.random.Generator(np.random.Philox(key=seed))


def sample_graph(cfg: SampleConfig) -> Graph:
    n, p = cfg.n, cfg.p
    empty = np.empty(0, dtype=np.int64)
    if n < 2 or p == 0.0:
        return Graph(n, empty, empty)
    gen = pair_uniforms(cfg.seed)
    off = pair_offsets(n)
    constant = isinstance(cfg.kernel, ConstantKernel)
    found = []
    row = 0
    while row < n - 1:
        # rows [row, stop) form one contiguous run of pair ranks
        stop = row + 1
        while stop < n - 1 and off[stop + 1] - off[row] <= BLOCK_PAIRS:
            stop += 1
        # off[n - 1] is the total pair count, so off[stop] always ends the block
        start_rank = off[row]
        u = gen.random(int(off[stop] - start_rank))
        if constant:
            hits = np.flatnonzero(u < p)
        else:
            probs = np.concatenate([cfg.kernel.row_block(n, i) for i in range(row, stop)])
            hits = np.flatnonzero(u < p * probs)
        found.append(hits + start_rank)
        row = stop
    ranks = np.concatenate(found) if found else empty
    src, dst = pair_from_rank(n, ranks)
    return Graph(n, src, dst)


def sparsity_bound(n: int) -> float:
    """Smallest ``p`` with ``n p log 2 >= log n``."""
    if n < 2:
        raise ValueError(f"sparsity bound needs n >= 2, got {n}")
    return math.log(n) / (n * math.log(2))


def dense_enough(n: int, p: float) -> bool:
    if n < 2:
        raise ValueError(f"sparsity bound needs n >= 2, got {n}")
    return n * p * math.log(2) >= math.log(n)
