"""Immutable undirected simple graphs and their degree sequences."""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

import numpy as np


class GraphError(ValueError):
    """Raised when an edge list cannot form a valid graph."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Undirected simple graph on nodes ``0..n-1``.

    Edges are stored once as ``(min, max)`` pairs in lexicographic order
    (``src``/``dst`` arrays), alongside a CSR adjacency (``indptr``/``indices``)
    and the degree array. All arrays are read-only.

    ``self_loops_dropped`` and ``duplicates_collapsed`` record what
    :func:`build_graph` discarded; they do not take part in equality.
    """

    __slots__ = (
        "n",
        "src",
        "dst",
        "indptr",
        "indices",
        "_degrees",
        "self_loops_dropped",
        "duplicates_collapsed",
    )

    def __init__(
        self,
        n: int,
        src: np.ndarray,
        dst: np.ndarray,
        self_loops_dropped: int = 0,
        duplicates_collapsed: int = 0,
    ):
        # Trusted constructor: src/dst must already be canonical. Use build_graph otherwise.
        self.n = int(n)
        self.src = _frozen(np.ascontiguousarray(src, dtype=np.int64))
        self.dst = _frozen(np.ascontiguousarray(dst, dtype=np.int64))
        deg = np.bincount(self.src, minlength=self.n) + np.bincount(self.dst, minlength=self.n)
        self._degrees = _frozen(deg.astype(np.int64))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        heads = np.concatenate([self.src, self.dst])
        tails = np.concatenate([self.dst, self.src])
        order = np.lexsort((tails, heads))
        self.indptr = _frozen(indptr)
        self.indices = _frozen(tails[order])
        self.self_loops_dropped = int(self_loops_dropped)
        self.duplicates_collapsed = int(duplicates_collapsed)

    @property
    def num_edges(self) -> int:
        return int(self.src.shape[0])

    def edges(self) -> list[Tuple[int, int]]:
        return list(zip(self.src.tolist(), self.dst.tolist()))

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        a[self.src, self.dst] = 1
        a[self.dst, self.src] = 1
        return a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.src.tobytes(), self.dst.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a canonical :class:`Graph` from arbitrary pairs.

    Self-loops are dropped and duplicate edges (in either orientation) are
    collapsed; both counts are kept on the result. Any endpoint outside
    ``[0, n)`` raises :class:`GraphError` naming the offending pair.
    """
    if n < 1:
        raise GraphError(f"node count must be >= 1, got {n}")
    pairs = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list)
    if pairs.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return Graph(n, empty, empty)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise GraphError("edge list must be a sequence of pairs")
    pairs = pairs.astype(np.int64)
    bad = np.flatnonzero((pairs < 0).any(axis=1) | (pairs >= n).any(axis=1))
    if bad.size:
        u, v = pairs[bad[0]]
        raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")

    loops = pairs[:, 0] == pairs[:, 1]
    pairs = pairs[~loops]
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keys = np.unique(lo * n + hi)
    return Graph(
        n,
        keys // n,
        keys % n,
        self_loops_dropped=int(loops.sum()),
        duplicates_collapsed=int(pairs.shape[0] - keys.shape[0]),
    )


def degrees(g: Graph) -> np.ndarray:
    """Degree sequence ``d[i]`` of ``g`` as a read-only int64 array."""
    return g._degrees


def complete_graph(n: int) -> Graph:
    i, j = np.triu_indices(n, 1)
    return Graph(n, i, j)


def path_graph(n: int) -> Graph:
    i = np.arange(n - 1)
    return Graph(n, i, i + 1)


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Star with centre 0 and leaves ``1..leaves``."""
    i = np.arange(1, leaves + 1)
    return Graph(leaves + 1, np.zeros_like(i), i)
