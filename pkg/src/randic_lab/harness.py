"""Monte Carlo convergence studies, degree-moment checks and network summaries."""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .generator import SampleConfig, dense_enough, sample_graph, sparsity_bound
from .graph import Graph, degrees
from .indices import TABLE1_SPECS, IndexSpec, compute_index, index_suite
from .kernels import Kernel
from .limits import limit_exact

logger = logging.getLogger(__name__)

THREADS_ENV = "RANDIC_LAB_THREADS"
FIT_FLOOR = 1e-12


class HypothesisViolation(ValueError):
    """A grid point is sparser than ``n p log 2 >= log n`` allows."""


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0, got {cap}")
    return cap if cap > 0 else (os.cpu_count() or 1)


def replicate_seed(master_seed: int, grid_index: int, replicate: int) -> int:
    """64-bit seed from BLAKE2b over the little-endian triple (master, grid, replicate)."""
    payload = struct.pack("<QQQ", master_seed, grid_index, replicate)
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class GridPoint:
    n: int
    p: float
    seeds: tuple[int, ...]
    limit: float
    values: tuple[float, ...]
    ratios: tuple[float, ...]

    @property
    def replicates(self) -> int:
        return len(self.ratios)

    @property
    def mean_ratio(self) -> float:
        return math.fsum(self.ratios) / len(self.ratios)

    @property
    def std_ratio(self) -> float:
        m = self.mean_ratio
        return math.sqrt(math.fsum((r - m) ** 2 for r in self.ratios) / (len(self.ratios) - 1))

    def summary(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "np": self.n * self.p,
            "replicates": self.replicates,
            "limit": self.limit,
            "mean_ratio": self.mean_ratio,
            "std_ratio": self.std_ratio,
        }


@dataclass(frozen=True)
class ConvergenceReport:
    spec: IndexSpec
    kernel: Kernel
    master_seed: int
    points: tuple[GridPoint, ...]
    rate_estimate: float | None

    @property
    def grid(self) -> list[tuple[int, float]]:
        return [(pt.n, pt.p) for pt in self.points]

    def to_dict(self) -> dict:
        return {
            **self.spec.to_dict(),
            "kernel": self.kernel.describe(),
            "master_seed": self.master_seed,
            "rate_estimate": self.rate_estimate,
            "points": [
                {**pt.summary(), "seeds": list(pt.seeds), "values": list(pt.values), "ratios": list(pt.ratios)} for pt in self.points
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["n", "p", "np", "replicates", "limit", "mean_ratio", "std_ratio"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for pt in self.points:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in pt.summary().items()})
        return buf.getvalue()


def fit_rate(nps: Sequence[float], means: Sequence[float]) -> float | None:
    """Least-squares slope of log|mean - 1| on log(np); None with fewer than two usable points."""
    xs, ys = [], []
    for np_, m in zip(nps, means):
        dev = abs(m - 1.0)
        if dev >= FIT_FLOOR:
            xs.append(math.log(np_))
            ys.append(math.log(dev))
    if len(xs) < 2:
        return None
    x = np.array(xs)
    y = np.array(ys)
    xc = x - x.mean()
    return float((xc @ (y - y.mean())) / (xc @ xc))


def _p_for(p_rule: float | Callable[[int], float], n: int) -> float:
    return float(p_rule(n) if callable(p_rule) else p_rule)


def converge_study(
    spec: IndexSpec,
    kernel: Kernel,
    n_list: Sequence[int],
    p_rule: float | Callable[[int], float],
    replicates: int,
    master_seed: int,
) -> ConvergenceReport:
    """Sample ``replicates`` graphs per grid point and divide each index by its exact-sum limit.

    ``p_rule`` is either a fixed probability or a function ``n -> p``.
    """
    if replicates < 2:
        raise ValueError(f"need at least 2 replicates, got {replicates}")
    grid = [(int(n), _p_for(p_rule, n)) for n in n_list]
    for n, p in grid:
        if n < 2 or not dense_enough(n, p):
            bound = sparsity_bound(n) if n >= 2 else float("nan")
            raise HypothesisViolation(
                f"grid point n={n}, p={p:g} violates n*p*log(2) >= log(n); need p >= {bound:.6g}"
            )

    points = []
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        for gi, (n, p) in enumerate(grid):
            lim = limit_exact(spec, n, p, kernel).value
            seeds = [replicate_seed(master_seed, gi, r) for r in range(replicates)]

            def one(seed: int, n=n, p=p) -> float:
                return compute_index(sample_graph(SampleConfig(n, p, kernel, seed)), spec).value

            # map preserves replicate order regardless of completion order
            values = tuple(pool.map(one, seeds))
            points.append(
                GridPoint(n, p, tuple(seeds), lim, values, tuple(v / lim for v in values))
            )
            logger.info("n=%d p=%g mean ratio %.6f", n, p, points[-1].mean_ratio)

    rate = fit_rate([pt.n * pt.p for pt in points], [pt.mean_ratio for pt in points])
    return ConvergenceReport(spec, kernel, master_seed, tuple(points), rate)


@dataclass(frozen=True)
class NetworkSummary:
    name: str
    n: int
    edges: int
    density: float
    sparsity_bound: float | None
    d_max: int
    d_median: float
    d_min: int
    randic_half: float
    randic_neg1: float
    chi_half: float
    chi_neg1: float
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0
    warnings: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["warnings"] = list(self.warnings)
        return d


def summarize_network(name: str, g: Graph) -> NetworkSummary:
    deg = degrees(g)
    n = g.n
    warnings: list[str] = []
    if g.num_edges == 0:
        warnings.append("graph has no edges; degree statistics reported as 0")
        d_max = d_min = 0
        d_median = 0.0
    else:
        d_max, d_min = int(deg.max()), int(deg.min())
        # even n: mean of the two middle degrees
        d_median = float(np.median(deg))
    vals = index_suite(g, TABLE1_SPECS)
    pairs = n * (n - 1) / 2
    return NetworkSummary(
        name=name,
        n=n,
        edges=g.num_edges,
        density=g.num_edges / pairs if pairs else 0.0,
        sparsity_bound=sparsity_bound(n) if n >= 2 else None,
        d_max=d_max,
        d_median=d_median,
        d_min=d_min,
        randic_half=vals[TABLE1_SPECS[0]].value,
        randic_neg1=vals[TABLE1_SPECS[1]].value,
        chi_half=vals[TABLE1_SPECS[2]].value,
        chi_neg1=vals[TABLE1_SPECS[3]].value,
        self_loops_dropped=g.self_loops_dropped,
        duplicates_collapsed=g.duplicates_collapsed,
        warnings=tuple(warnings),
    )


TABLE_COLUMNS = (
    ("network", "name"),
    ("n", "n"),
    ("log n/(n log 2)", "sparsity_bound"),
    ("density", "density"),
    ("d_max", "d_max"),
    ("d_median", "d_median"),
    ("d_min", "d_min"),
    ("R_-1/2", "randic_half"),
    ("R_-1", "randic_neg1"),
    ("chi_-1/2", "chi_half"),
    ("chi_-1", "chi_neg1"),
)


def _cell(v, digits: int | None) -> str:
    if isinstance(v, float):
        if digits is None:
            return repr(v)
        return f"{v:.{digits}f}"
    return "" if v is None else str(v)


def report_table(summaries: Sequence[NetworkSummary], fmt: str = "text", digits: int = 6) -> str:
    """Render summaries in the real-network table layout (11 columns, input order kept).

    ``fmt`` is ``"text"`` (aligned, ``digits`` decimals) or ``"csv"`` (full precision).
    """
    headers = [h for h, _ in TABLE_COLUMNS]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        for s in summaries:
            w.writerow([_cell(getattr(s, a), None) for _, a in TABLE_COLUMNS])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown table format {fmt!r}")
    rows = [headers] + [[_cell(getattr(s, a), digits) for _, a in TABLE_COLUMNS] for s in summaries]
    widths = [max(len(r[c]) for r in rows) for c in range(len(headers))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MomentCheckReport:
    n: int
    p: float
    replicates: int
    seed: int
    expected_mean: np.ndarray
    expected_var: np.ndarray
    empirical_mean: np.ndarray
    empirical_var: np.ndarray
    mean_z: np.ndarray
    var_z: np.ndarray
    max_abs_z: float
    frac_over_3: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "replicates": self.replicates,
            "seed": self.seed,
            "max_abs_z": self.max_abs_z,
            "frac_over_3sigma": self.frac_over_3,
            "passed": self.passed,
        }


def degree_moment_check(kernel: Kernel, n: int, p: float, replicates: int, seed: int) -> MomentCheckReport:
    """Compare per-node empirical degree mean/variance with the exact model moments.

    Mean: ``p f_i``. Variance: ``sum_{j != i} p f_ij (1 - p f_ij)``. Standard
    errors use the sample variance (mean) and the fourth central moment of a
    sum of independent Bernoullis (variance). Fails if any node exceeds 5 SE,
    or more than 1% of the z-scores exceed 3.
    """
    if replicates < 2:
        raise ValueError(f"need at least 2 replicates, got {replicates}")
    q = p * kernel.matrix(n)
    exp_mean = q.sum(axis=1)
    bern_var = q * (1 - q)
    exp_var = bern_var.sum(axis=1)
    # fourth central moment of a Bernoulli sum: sum k4 + 3 var^2, with k4 = v(1 - 6v)
    mu4 = (bern_var * (1 - 6 * bern_var)).sum(axis=1) + 3 * exp_var**2

    samples = np.empty((replicates, n))
    for r in range(replicates):
        g = sample_graph(SampleConfig(n, p, kernel, replicate_seed(seed, 0, r)))
        samples[r] = degrees(g)
    emp_mean = samples.mean(axis=0)
    emp_var = samples.var(axis=0, ddof=1)

    with np.errstate(divide="ignore", invalid="ignore"):
        se_mean = np.sqrt(exp_var / replicates)
        se_var = np.sqrt(np.maximum(mu4 - exp_var**2 * (replicates - 3) / (replicates - 1), 0.0) / replicates)
        mean_z = np.where(se_mean > 0, (emp_mean - exp_mean) / se_mean, np.where(emp_mean == exp_mean, 0.0, np.inf))
        var_z = np.where(se_var > 0, (emp_var - exp_var) / se_var, np.where(np.isclose(emp_var, exp_var), 0.0, np.inf))
    z = np.concatenate([np.abs(mean_z), np.abs(var_z)])
    max_z = float(z.max())
    frac3 = float((z > 3).mean())
    return MomentCheckReport(
        n, p, replicates, seed, exp_mean, exp_var, emp_mean, emp_var, mean_z, var_z,
        max_z, frac3, bool(max_z <= 5 and frac3 <= 0.01),
    )
