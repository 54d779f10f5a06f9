"""Empirical distribution functions and their exact sup-norm distance to a model."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .distributions import DistributionModel, _check_finite
from .errors import DomainError


class Sample:
    """An ascending, finite, nonempty collection of observations."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[float]):
        arr = np.array(values if isinstance(values, np.ndarray) else list(values), dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("a sample needs at least one observation")
        arr.sort()
        if not np.all(np.isfinite(arr)):
            raise DomainError("sample values must be finite")
        arr.setflags(write=False)
        self.values = arr

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Sample(n={self.n})"


@dataclass(frozen=True, eq=False)
class Ecdf:
    """Right-continuous step function ``x -> #{X_i <= x} / n``.

    ``points`` holds the distinct sample values and ``cum_counts[i]`` the
    number of observations ``<= points[i]``; counts stay integral until
    evaluation.
    """

    points: np.ndarray
    cum_counts: np.ndarray
    n: int

    def count_le(self, x: float) -> int:
        k = int(np.searchsorted(self.points, x, side="right"))
        return int(self.cum_counts[k - 1]) if k else 0

    def count_lt(self, x: float) -> int:
        k = int(np.searchsorted(self.points, x, side="left"))
        return int(self.cum_counts[k - 1]) if k else 0

    def __call__(self, x: float) -> float:
        return ecdf_eval(self, x)

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        k = np.searchsorted(self.points, np.asarray(xs, dtype=np.float64), side="right")
        counts = np.where(k > 0, self.cum_counts[np.maximum(k - 1, 0)], 0)
        return counts / self.n


class Side(enum.Enum):
    AT_POINT = "at_point"
    LEFT_LIMIT = "left_limit"


@dataclass(frozen=True)
class SupDistanceResult:
    distance: float
    witness_x: float
    side: Side


def build_ecdf(sample: Sample) -> Ecdf:
    points, counts = np.unique(sample.values, return_counts=True)
    cum = np.cumsum(counts, dtype=np.int64)
    points.setflags(write=False)
    cum.setflags(write=False)
    return Ecdf(points=points, cum_counts=cum, n=sample.n)


def ecdf_eval(ecdf: Ecdf, x: float) -> float:
    x = _check_finite(x)
    return ecdf.count_le(x) / ecdf.n


def pointwise_error(ecdf: Ecdf, model: DistributionModel, x: float) -> float:
    """Signed error ``F_n(x) - F(x)``."""
    x = _check_finite(x)
    return ecdf.count_le(x) / ecdf.n - model.cdf(x)


def sup_distance(ecdf: Ecdf, model: DistributionModel) -> SupDistanceResult:
    """Exact ``sup_x |F_n(x) - F(x)|``.

    Both sides of every jump are checked.  Left limits come from the previous
    cumulative count (and ``P(X < x)`` for discrete models); ``x`` itself is
    never nudged.  Candidates are scanned in ascending ``x`` with the left
    limit before the point value, and the first maximum wins.
    """
    n = ecdf.n
    if model.is_discrete:
        xs = np.union1d(ecdf.points, model.values)
        k_le = np.searchsorted(ecdf.points, xs, side="right")
        k_lt = np.searchsorted(ecdf.points, xs, side="left")
        cum0 = np.concatenate(([0], ecdf.cum_counts))
        at_point = np.abs(cum0[k_le] / n - model.cdf_array(xs))
        left = np.abs(cum0[k_lt] / n - model.cdf_left_array(xs))
    else:
        xs = ecdf.points
        f = model.cdf_array(xs)
        below = np.concatenate(([0], ecdf.cum_counts[:-1]))
        at_point = np.abs(ecdf.cum_counts / n - f)
        left = np.abs(f - below / n)
    # interleave as [left_0, at_0, left_1, at_1, ...]
    both = np.empty(2 * xs.size)
    both[0::2] = left
    both[1::2] = at_point
    i = int(np.argmax(both))
    side = Side.LEFT_LIMIT if i % 2 == 0 else Side.AT_POINT
    return SupDistanceResult(float(both[i]), float(xs[i // 2]), side)


def read_sample_file(path: str | Path) -> Sample:
    """Read one decimal value per line; blank lines are ignored."""
    values = []
    for lineno, line in enumerate(Path(path).read_text(encoding="ascii").splitlines(), 1):
        text = line.strip()
        if not text:
            continue
        try:
            v = float(text)
        except ValueError:
            raise DomainError(f"{path}:{lineno}: not a decimal value: {text!r}") from None
        if not math.isfinite(v):
            raise DomainError(f"{path}:{lineno}: sample values must be finite")
        values.append(v)
    return Sample(values)


def format_sample(values: Iterable[float]) -> str:
    return "".join(f"{float(v)!r}\n" for v in values)
