"""Monte Carlo diagnostics for pointwise and uniform convergence of the ECDF.

Everything here is finite-horizon.  An entry index is only reported when the
checkpoints observed so far support it, and a certificate schedule fails
loudly when its grid runs out instead of extrapolating.

Trial ``t`` of any experiment uses ``seed.child(t)`` as its stream, so the same
seed reuses the same sample paths across sizes and thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from ._trials import map_trials
from .distributions import DistributionModel, _check_finite, draw_values
from .ecdf import Sample, build_ecdf, pointwise_error, sup_distance
from .errors import DomainError, GridInsufficientError
from .rng import SeedSpec

MAX_CHECKPOINT = 10**7


@dataclass(frozen=True)
class Checkpoint:
    n: int
    sup_distance: float
    probe_errors: tuple[tuple[float, float], ...] = ()


@dataclass(frozen=True)
class Trajectory:
    model_spec: str
    seed: SeedSpec
    checkpoints: tuple[Checkpoint, ...]

    @property
    def ns(self) -> list[int]:
        return [c.n for c in self.checkpoints]

    @property
    def sups(self) -> list[float]:
        return [c.sup_distance for c in self.checkpoints]

    def table(self) -> tuple[list[str], list[list]]:
        width = max((len(c.probe_errors) for c in self.checkpoints), default=0)
        header = ["n", "sup_distance"]
        for i in range(1, width + 1):
            header += [f"probe_x_{i}", f"error_{i}"]
        rows = []
        for c in self.checkpoints:
            row: list = [c.n, c.sup_distance]
            for x, err in c.probe_errors:
                row += [x, err]
            rows.append(row)
        return header, rows


class Moments(NamedTuple):
    mean_est: float
    var_est: float


@dataclass(frozen=True)
class EscapeReport:
    epsilon: float
    n: int
    trials: int
    escape_fraction: float
    standard_error: float

    HEADER = ["epsilon", "n", "trials", "escape_fraction", "stderr"]

    def row(self) -> list:
        return [self.epsilon, self.n, self.trials, self.escape_fraction, self.standard_error]


@dataclass(frozen=True)
class CertificateRow:
    m: int
    eps_m: float
    n_m: int
    estimated_escape: float
    budget: float


@dataclass(frozen=True)
class CertificateSchedule:
    eps_tilde: float
    rows: tuple[CertificateRow, ...]
    total_budget: float

    HEADER = ["m", "eps_m", "n_m", "estimated_escape", "budget"]

    def table(self) -> tuple[list[str], list[list]]:
        return self.HEADER, [[r.m, r.eps_m, r.n_m, r.estimated_escape, r.budget] for r in self.rows]


def _check_count(value: int, name: str, minimum: int) -> int:
    if int(value) != value or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value}")
    return int(value)


def _check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon}")
    return epsilon


def _check_ascending(ns: Sequence[int], name: str) -> list[int]:
    ns = [_check_count(n, f"{name} entries", 1) for n in ns]
    if not ns:
        raise DomainError(f"{name} must be nonempty")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError(f"{name} must be strictly ascending, got {ns}")
    return ns


def standard_error(p_hat: float, trials: int) -> float:
    return math.sqrt(p_hat * (1.0 - p_hat) / trials)


def run_trajectory(
    model: DistributionModel,
    checkpoint_ns: Sequence[int],
    probes: Sequence[float],
    seed: SeedSpec,
) -> Trajectory:
    """Sup distance along one growing sample path.

    Checkpoint ``n`` uses the first ``n`` draws of a single stream, so all
    checkpoints are nested prefixes of the same sample.
    """
    ns = _check_ascending(checkpoint_ns, "checkpoints")
    if ns[-1] > MAX_CHECKPOINT:
        raise DomainError(f"checkpoints must not exceed {MAX_CHECKPOINT}, got {ns[-1]}")
    probes = [_check_finite(x, "probe") for x in probes]
    draws = draw_values(model, ns[-1], seed)
    out = []
    for n in ns:
        ecdf = build_ecdf(Sample(draws[:n]))
        errs = tuple((x, pointwise_error(ecdf, model, x)) for x in probes)
        out.append(Checkpoint(n, sup_distance(ecdf, model).distance, errs))
    return Trajectory(model.spec(), seed, tuple(out))


def pointwise_moments(
    model: DistributionModel,
    x: float,
    n: int,
    trials: int,
    seed: SeedSpec,
    threads: int = 1,
) -> Moments:
    """Across-trial mean and unbiased variance of ``F_n(x)``.

    Each observation contributes the indicator ``X_i <= x``, a Bernoulli
    variable with mean ``F(x)`` and variance ``F(x)(1 - F(x))``; the
    targets are therefore ``F(x)`` and ``F(x)(1 - F(x)) / n``.
    """
    x = _check_finite(x)
    n = _check_count(n, "n", 1)
    trials = _check_count(trials, "trials", 2)

    def one(t: int) -> int:
        return int(np.count_nonzero(draw_values(model, n, seed.child(t)) <= x))

    counts = np.array(map_trials(one, trials, threads), dtype=np.float64)
    values = counts / n
    return Moments(float(values.mean()), float(values.var(ddof=1)))


def trial_sup_distances(
    model: DistributionModel, n: int, trials: int, seed: SeedSpec, threads: int = 1
) -> np.ndarray:
    """Sup distance at size ``n`` for each of ``trials`` independent streams."""
    n = _check_count(n, "n", 1)
    trials = _check_count(trials, "trials", 1)

    def one(t: int) -> float:
        return sup_distance(build_ecdf(Sample(draw_values(model, n, seed.child(t)))), model).distance

    return np.array(map_trials(one, trials, threads), dtype=np.float64)


def _escape_report(sups: np.ndarray, epsilon: float, n: int) -> EscapeReport:
    trials = sups.size
    frac = int(np.count_nonzero(sups >= epsilon)) / trials
    return EscapeReport(epsilon, n, trials, frac, standard_error(frac, trials))


def escape_probability(
    model: DistributionModel,
    epsilon: float,
    n: int,
    trials: int,
    seed: SeedSpec,
    threads: int = 1,
) -> EscapeReport:
    """Fraction of independent samples of size ``n`` whose sup distance is at least ``epsilon``."""
    epsilon = _check_epsilon(epsilon)
    return _escape_report(trial_sup_distances(model, n, trials, seed, threads), epsilon, n)


def escape_table(
    model: DistributionModel,
    epsilons: Sequence[float],
    ns: Sequence[int],
    trials: int,
    seed: SeedSpec,
    threads: int = 1,
) -> list[EscapeReport]:
    """Escape reports for every (epsilon, n) pair, sharing trials per ``n``."""
    epsilons = [_check_epsilon(e) for e in epsilons]
    reports = []
    for n in ns:
        sups = trial_sup_distances(model, n, trials, seed, threads)
        reports.extend(_escape_report(sups, e, n) for e in epsilons)
    return reports


def entry_index(trajectory: Trajectory, epsilon: float) -> int | None:
    """Smallest checkpoint after which every observed sup distance is below ``epsilon``."""
    epsilon = _check_epsilon(epsilon)
    entry = None
    for c in reversed(trajectory.checkpoints):
        if c.sup_distance >= epsilon:
            break
        entry = c.n
    return entry


def certificate_schedule(
    model: DistributionModel,
    eps_tilde: float,
    m_max: int,
    trials: int,
    n_grid: Sequence[int],
    seed: SeedSpec,
    threads: int = 1,
) -> CertificateSchedule:
    """For ``m = 1 .. m_max`` find the smallest grid size whose estimated
    probability of a sup distance ``>= 1/m`` is below ``eps_tilde / 2**m``.

    The budgets sum to ``eps_tilde * (1 - 2**-m_max) < eps_tilde``.  Escape
    estimates at a fixed ``n`` grow as ``1/m`` shrinks while budgets halve, so
    the search for ``m + 1`` can resume where ``m`` stopped.
    """
    eps_tilde = _check_epsilon(eps_tilde)
    m_max = _check_count(m_max, "m_max", 1)
    trials = _check_count(trials, "trials", 1)
    grid = _check_ascending(n_grid, "n_grid")

    cache: dict[int, np.ndarray] = {}

    def sups_at(n: int) -> np.ndarray:
        if n not in cache:
            cache[n] = trial_sup_distances(model, n, trials, seed, threads)
        return cache[n]

    # budgets are exact rationals of the decimal eps_tilde, rounded once, so
    # eps_tilde=0.1, m_max=3 gives a total of exactly 0.0875
    eps_dec = Fraction(repr(eps_tilde))
    rows = []
    start = 0
    for m in range(1, m_max + 1):
        eps_m = 1.0 / m
        budget = float(eps_dec / 2**m)
        estimate = math.nan
        for j in range(start, len(grid)):
            estimate = _escape_report(sups_at(grid[j]), eps_m, grid[j]).escape_fraction
            if estimate < budget:
                rows.append(CertificateRow(m, eps_m, grid[j], estimate, budget))
                start = j
                break
        else:
            raise GridInsufficientError(m, eps_m, budget, grid[-1], estimate)
    return CertificateSchedule(eps_tilde, tuple(rows), float(eps_dec * (1 - Fraction(1, 2**m_max))))


def verify_schedule(
    model: DistributionModel,
    schedule: CertificateSchedule,
    trials: int,
    seed: SeedSpec,
    threads: int = 1,
) -> list[float]:
    """Re-estimate each row's escape probability on fresh streams."""
    return [
        escape_probability(model, row.eps_m, row.n_m, trials, seed, threads).escape_fraction
        for row in schedule.rows
    ]
