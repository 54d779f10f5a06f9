"""How fast a growing sample covers a fixed point, and cell counts over a partition.

For a discrete law the miss event is "``x0`` never drawn", with probability
``(1 - f(x0))**n``.  For a continuous law it is "``x0`` outside the covered
range ``(X_(1), X_(n)]``", with probability ``(1 - F(x0))**n + F(x0)**n``.
The two terms of the latter are the disjoint events ``x0 < X_(1)`` and
``x0 > X_(n)``; the range is left-open, so ``x0 == X_(1)`` is a miss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._trials import map_trials
from .convergence import _check_count, standard_error
from .distributions import DistributionModel, _check_finite, check_models_continuous, draw_values
from .ecdf import Sample
from .errors import DomainError
from .rng import SeedSpec


@dataclass(frozen=True)
class CoverageReport:
    x0: float
    n: int
    analytic_miss: float
    mc_estimate: float | None = None
    mc_stderr: float | None = None
    trials: int | None = None

    HEADER = ["x0", "n", "analytic", "mc_estimate", "stderr", "trials"]

    def row(self) -> list:
        return [self.x0, self.n, self.analytic_miss, self.mc_estimate, self.mc_stderr, self.trials]


@dataclass(frozen=True)
class Partition:
    """Cells ``(-inf, b1], (b1, b2], ..., (b_{m-1}, inf)``."""

    breakpoints: tuple[float, ...]

    def __post_init__(self):
        bps = tuple(_check_finite(b, "breakpoint") for b in self.breakpoints)
        if any(b <= a for a, b in zip(bps, bps[1:])):
            raise DomainError(f"breakpoints must be strictly ascending, got {list(bps)}")
        object.__setattr__(self, "breakpoints", bps)

    @property
    def cells(self) -> list[tuple[float, float]]:
        edges = [-math.inf, *self.breakpoints, math.inf]
        return list(zip(edges, edges[1:]))

    def cell_index(self, values: np.ndarray) -> np.ndarray:
        # side="left" sends a value equal to b_k into the cell closed at b_k
        return np.searchsorted(np.asarray(self.breakpoints, dtype=np.float64), values, side="left")


@dataclass(frozen=True)
class PartitionReport:
    partition: Partition
    counts: tuple[int, ...]
    observed: tuple[Fraction, ...]
    theoretical: tuple[float, ...]

    HEADER = ["cell_low", "cell_high", "count", "observed", "theoretical"]

    @property
    def n(self) -> int:
        return sum(self.counts)

    def table(self) -> tuple[list[str], list[list]]:
        rows = [
            [lo, hi, c, float(o), t]
            for (lo, hi), c, o, t in zip(self.partition.cells, self.counts, self.observed, self.theoretical)
        ]
        return self.HEADER, rows


def _require_discrete(model: DistributionModel, op: str) -> None:
    if not model.is_discrete:
        raise DomainError(f"{op} requires a discrete model, got {model.spec()}")


def atom_miss_probability(model: DistributionModel, x0: float, n: int) -> float:
    """``(1 - f(x0))**n``: chance that ``n`` draws never hit ``x0``."""
    _require_discrete(model, "atom_miss_probability")
    n = _check_count(n, "n", 1)
    return (1.0 - model.mass(x0)) ** n


def range_miss_probability(model: DistributionModel, x0: float, n: int) -> float:
    """``(1 - F(x0))**n + F(x0)**n``: chance that ``x0`` lies outside ``(X_(1), X_(n)]``."""
    check_models_continuous([model], "range_miss_probability")
    n = _check_count(n, "n", 1)
    f = model.cdf(x0)
    return (1.0 - f) ** n + f**n


def analytic_miss(model: DistributionModel, x0: float, n: int) -> float:
    if model.is_discrete:
        return atom_miss_probability(model, x0, n)
    return range_miss_probability(model, x0, n)


def _missed(model: DistributionModel, x0: float, draws: np.ndarray) -> bool:
    if model.is_discrete:
        return not bool(np.any(draws == x0))
    return not (draws.min() < x0 <= draws.max())


def estimate_miss(
    model: DistributionModel,
    x0: float,
    n: int,
    trials: int,
    seed: SeedSpec,
    threads: int = 1,
) -> CoverageReport:
    """Monte Carlo miss frequency next to its closed form."""
    x0 = _check_finite(x0, "x0")
    analytic = analytic_miss(model, x0, n)
    trials = _check_count(trials, "trials", 1)
    misses = map_trials(lambda t: _missed(model, x0, draw_values(model, n, seed.child(t))), trials, threads)
    p_hat = sum(misses) / trials
    return CoverageReport(x0, n, analytic, p_hat, standard_error(p_hat, trials), trials)


def tail_speed_compare(
    model_a: DistributionModel, model_b: DistributionModel, x0: float, n_list: Sequence[int]
) -> list[tuple[int, float, float]]:
    """Range-miss probabilities of two continuous models at one point, per sample size."""
    check_models_continuous([model_a, model_b], "tail_speed_compare")
    x0 = _check_finite(x0, "x0")
    return [(n, range_miss_probability(model_a, x0, n), range_miss_probability(model_b, x0, n)) for n in n_list]


def partition_report(model: DistributionModel, sample: Sample, partition: Partition) -> PartitionReport:
    cells = partition.cell_index(sample.values)
    m = len(partition.breakpoints) + 1
    counts = tuple(int(c) for c in np.bincount(cells, minlength=m))
    n = sample.n
    observed = tuple(Fraction(c, n) for c in counts)
    cdf_edges = [0.0, *(model.cdf(b) for b in partition.breakpoints), 1.0]
    theoretical = tuple(hi - lo for lo, hi in zip(cdf_edges, cdf_edges[1:]))
    return PartitionReport(partition, counts, observed, theoretical)


def miss_vanishing_size(model: DistributionModel, x0: float, threshold: float = 1e-6, n_limit: int = 10**9) -> int:
    """Smallest ``n`` with analytic miss probability below ``threshold``.

    Doubles ``n`` then bisects; the miss probability is nonincreasing in ``n``.
    Raises if the miss probability never drops (``x0`` outside the support,
    or not an atom).
    """
    if analytic_miss(model, x0, 1) >= 1.0 and analytic_miss(model, x0, 2) >= 1.0:
        raise DomainError(f"miss probability at x0={x0} does not decay for {model.spec()}")
    hi = 1
    while analytic_miss(model, x0, hi) >= threshold:
        hi *= 2
        if hi > n_limit:
            raise DomainError(f"miss probability above {threshold} up to n={n_limit}")
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if analytic_miss(model, x0, mid) < threshold:
            hi = mid
        else:
            lo = mid
    return hi
