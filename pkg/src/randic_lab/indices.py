"""Degree-based topological indices: general Randic and general sum-connectivity.

Every index is a sum over edges of a power of the endpoint degrees:

    R_alpha   = sum_{ij in E} (d_i d_j)^alpha
    chi_alpha = sum_{ij in E} (d_i + d_j)^alpha

Summation uses ``math.fsum`` (exactly rounded), so results do not depend on
edge order or on how the edge range is partitioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from .graph import Graph, degrees


class Family(str, Enum):
    RANDIC = "randic"
    CHI = "chi"


@dataclass(frozen=True)
class IndexSpec:
    family: Family
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "alpha", float(self.alpha))
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha}")

    @property
    def label(self) -> str:
        sym = "R" if self.family is Family.RANDIC else "chi"
        return f"{sym}_{self.alpha:g}"

    def to_dict(self) -> dict:
        return {"family": self.family.value, "alpha": self.alpha}


@dataclass(frozen=True)
class IndexValue:
    value: float
    spec: IndexSpec
    edge_count: int
    name: str = field(default="")

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", self.spec.label)

    def to_dict(self) -> dict:
        return {"name": self.name, **self.spec.to_dict(), "value": self.value, "edge_count": self.edge_count}


RANDIC_HALF = IndexSpec(Family.RANDIC, -0.5)
ZAGREB = IndexSpec(Family.RANDIC, -1.0)
CHI_HALF = IndexSpec(Family.CHI, -0.5)
CHI_NEG1 = IndexSpec(Family.CHI, -1.0)

# Column order of the real-network table: R_{-1/2}, R_{-1}, chi_{-1/2}, chi_{-1}.
TABLE1_SPECS = (RANDIC_HALF, ZAGREB, CHI_HALF, CHI_NEG1)


def power(x: np.ndarray, alpha: float) -> np.ndarray:
    """Elementwise ``x**alpha`` for positive ``x``, exact fast paths for common exponents."""
    x = np.asarray(x, dtype=np.float64)
    if alpha == 0.0:
        return np.ones_like(x)
    if alpha == 1.0:
        return x.copy()
    if alpha == -1.0:
        return 1.0 / x
    if alpha == 0.5:
        return np.sqrt(x)
    if alpha == -0.5:
        return 1.0 / np.sqrt(x)
    if alpha == 2.0:
        return x * x
    return np.power(x, alpha)


def _edge_bases(g: Graph, family: Family, deg: np.ndarray) -> np.ndarray:
    du = deg[g.src]
    dv = deg[g.dst]
    # int64 products stay exact in float64 for any degree below 2**26
    return (du * dv if family is Family.RANDIC else du + dv).astype(np.float64)


def _evaluate(g: Graph, spec: IndexSpec, bases: np.ndarray) -> IndexValue:
    total = math.fsum(power(bases, spec.alpha).tolist()) if bases.size else 0.0
    return IndexValue(total, spec, g.num_edges)


def compute_index(g: Graph, spec: IndexSpec) -> IndexValue:
    return _evaluate(g, spec, _edge_bases(g, spec.family, degrees(g)))


def general_randic(g: Graph, alpha: float) -> IndexValue:
    return compute_index(g, IndexSpec(Family.RANDIC, alpha))


def general_sum_connectivity(g: Graph, alpha: float) -> IndexValue:
    return compute_index(g, IndexSpec(Family.CHI, alpha))


def harmonic(g: Graph) -> IndexValue:
    """Harmonic index, twice the sum-connectivity index at alpha = -1."""
    chi = general_sum_connectivity(g, -1.0)
    return IndexValue(2.0 * chi.value, chi.spec, chi.edge_count, name="H")


def modified_second_zagreb(g: Graph) -> IndexValue:
    r = general_randic(g, -1.0)
    return IndexValue(r.value, r.spec, r.edge_count, name="M2*")


def index_suite(g: Graph, specs: Iterable[IndexSpec]) -> dict[IndexSpec, IndexValue]:
    """Evaluate several indices with a single degree pass."""
    deg = degrees(g)
    bases: dict[Family, np.ndarray] = {}
    out = {}
    for spec in specs:
        if spec.family not in bases:
            bases[spec.family] = _edge_bases(g, spec.family, deg)
        out[spec] = _evaluate(g, spec, bases[spec.family])
    return out
