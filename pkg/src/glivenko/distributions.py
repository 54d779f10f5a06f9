"""Analytic distribution models with closed-form CDFs and quantiles.

Only families whose quantile function is available in closed form are
provided, so inverse-transform sampling is exact up to floating point.
Transcendental functions go through :mod:`math` element by element instead of
numpy ufuncs, whose SIMD kernels are allowed to differ between CPUs.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError
from .rng import SeedSpec, uniform_stream

MASS_TOLERANCE = 1e-9


class Kind(enum.Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"


def _check_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


def _map(fn: Callable[[float], float], xs: np.ndarray) -> np.ndarray:
    return np.fromiter((fn(v) for v in xs.tolist()), dtype=np.float64, count=len(xs))


class DistributionModel:
    """Base class; subclasses are immutable dataclasses."""

    kind: Kind

    @property
    def is_discrete(self) -> bool:
        return self.kind is Kind.DISCRETE

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def quantile(self, p: float) -> float:
        raise NotImplementedError

    def cdf_array(self, xs: np.ndarray) -> np.ndarray:
        return _map(self.cdf, np.asarray(xs, dtype=np.float64))

    def quantile_array(self, ps: np.ndarray) -> np.ndarray:
        return _map(self.quantile, np.asarray(ps, dtype=np.float64))

    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def spec(self) -> str:
        """The model in CLI grammar, e.g. ``uniform:0,1``."""
        raise NotImplementedError

    def _check_p(self, p: float) -> float:
        p = float(p)
        upper_ok = p <= 1.0 if self.is_discrete else p < 1.0
        if not (0.0 < p and upper_ok):
            interval = "(0, 1]" if self.is_discrete else "(0, 1)"
            raise DomainError(f"quantile level must lie in {interval}, got {p}")
        return p


def _fmt(v: float) -> str:
    return repr(float(v))


@dataclass(frozen=True)
class Uniform(DistributionModel):
    a: float = 0.0
    b: float = 1.0
    kind = Kind.CONTINUOUS

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DomainError(f"uniform needs finite a < b, got a={self.a}, b={self.b}")

    def cdf(self, x):
        x = _check_finite(x)
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return 1.0
        return (x - self.a) / (self.b - self.a)

    def cdf_array(self, xs):
        xs = np.asarray(xs, dtype=np.float64)
        return np.clip((xs - self.a) / (self.b - self.a), 0.0, 1.0)

    def quantile(self, p):
        p = self._check_p(p)
        return self.a + p * (self.b - self.a)

    def quantile_array(self, ps):
        return self.a + np.asarray(ps, dtype=np.float64) * (self.b - self.a)

    def support(self):
        return (self.a, self.b)

    def spec(self):
        return f"uniform:{_fmt(self.a)},{_fmt(self.b)}"


@dataclass(frozen=True)
class Exponential(DistributionModel):
    rate: float = 1.0
    kind = Kind.CONTINUOUS

    def __post_init__(self):
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise DomainError(f"exponential rate must be positive, got {self.rate}")

    def cdf(self, x):
        x = _check_finite(x)
        if x <= 0.0:
            return 0.0
        return -math.expm1(-self.rate * x)

    def quantile(self, p):
        p = self._check_p(p)
        return -math.log1p(-p) / self.rate

    def support(self):
        return (0.0, math.inf)

    def spec(self):
        return f"exp:{_fmt(self.rate)}"


@dataclass(frozen=True)
class Pareto(DistributionModel):
    """Pareto type I with scale ``xm`` and tail index ``alpha``."""

    xm: float = 1.0
    alpha: float = 1.0
    kind = Kind.CONTINUOUS

    def __post_init__(self):
        if not (math.isfinite(self.xm) and self.xm > 0):
            raise DomainError(f"pareto scale must be positive, got {self.xm}")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"pareto shape must be positive, got {self.alpha}")

    def cdf(self, x):
        x = _check_finite(x)
        if x <= self.xm:
            return 0.0
        return 1.0 - (self.xm / x) ** self.alpha

    def quantile(self, p):
        p = self._check_p(p)
        return self.xm * (1.0 - p) ** (-1.0 / self.alpha)

    def support(self):
        return (self.xm, math.inf)

    def spec(self):
        return f"pareto:{_fmt(self.xm)},{_fmt(self.alpha)}"


class _AtomicLaw(DistributionModel):
    """Shared machinery for laws given by a finite list of atoms."""

    kind = Kind.DISCRETE

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        raise NotImplementedError

    @cached_property
    def values(self) -> np.ndarray:
        v = np.array([a for a, _ in self.atoms], dtype=np.float64)
        v.setflags(write=False)
        return v

    @cached_property
    def cumulative(self) -> np.ndarray:
        """Running mass; the last entry is pinned to exactly 1."""
        masses = [m for _, m in self.atoms]
        cum = np.array([math.fsum(masses[: i + 1]) for i in range(len(masses))])
        cum[-1] = 1.0
        cum.setflags(write=False)
        return cum

    def mass(self, x: float) -> float:
        """Probability mass at ``x`` (0 off the atoms)."""
        x = _check_finite(x)
        for v, m in self.atoms:
            if v == x:
                return m
        return 0.0

    def cdf(self, x):
        x = _check_finite(x)
        k = bisect.bisect_right(self.values, x)
        return float(self.cumulative[k - 1]) if k else 0.0

    def cdf_left(self, x: float) -> float:
        """P(X < x)."""
        k = bisect.bisect_left(self.values, x)
        return float(self.cumulative[k - 1]) if k else 0.0

    def cdf_array(self, xs):
        k = np.searchsorted(self.values, np.asarray(xs, dtype=np.float64), side="right")
        return np.where(k > 0, self.cumulative[np.maximum(k - 1, 0)], 0.0)

    def cdf_left_array(self, xs: np.ndarray) -> np.ndarray:
        k = np.searchsorted(self.values, np.asarray(xs, dtype=np.float64), side="left")
        return np.where(k > 0, self.cumulative[np.maximum(k - 1, 0)], 0.0)

    def quantile(self, p):
        p = self._check_p(p)
        return float(self.values[bisect.bisect_left(self.cumulative, p)])

    def quantile_array(self, ps):
        return self.values[np.searchsorted(self.cumulative, np.asarray(ps, dtype=np.float64), side="left")]

    def support(self):
        return (float(self.values[0]), float(self.values[-1]))


@dataclass(frozen=True)
class Bernoulli(_AtomicLaw):
    p: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"bernoulli p must lie in [0, 1], got {self.p}")

    @property
    def atoms(self):
        return tuple((v, m) for v, m in ((0.0, 1.0 - self.p), (1.0, self.p)) if m > 0)

    def spec(self):
        return f"bern:{_fmt(self.p)}"


@dataclass(frozen=True)
class FiniteDiscrete(_AtomicLaw):
    """A law on finitely many atoms ``(value, mass)``.

    Atoms are sorted by value.  Masses must be positive and sum to one within
    ``MASS_TOLERANCE``; any residual is removed by renormalising.
    """

    points: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        pts = sorted((float(v), float(m)) for v, m in self.points)
        if not pts:
            raise DomainError("a discrete law needs at least one atom")
        for v, m in pts:
            if not math.isfinite(v):
                raise DomainError(f"atom values must be finite, got {v}")
            if not (m > 0 and math.isfinite(m)):
                raise DomainError(f"atom masses must be strictly positive, got {m} at {v}")
        if any(a[0] == b[0] for a, b in zip(pts, pts[1:])):
            raise DomainError("atom values must be distinct")
        total = math.fsum(m for _, m in pts)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise DomainError(f"atom masses must sum to 1 within {MASS_TOLERANCE}, got {total!r}")
        if total != 1.0:
            pts = [(v, m / total) for v, m in pts]
        object.__setattr__(self, "points", tuple(pts))

    @property
    def atoms(self):
        return self.points

    def spec(self):
        return "disc:" + ",".join(f"{_fmt(v)}:{_fmt(m)}" for v, m in self.points)


def cdf_eval(model: DistributionModel, x: float) -> float:
    return model.cdf(x)


def quantile(model: DistributionModel, p: float) -> float:
    return model.quantile(p)


def draw_sample(model: DistributionModel, n: int, seed: SeedSpec):
    """Draw ``n`` values by pushing the seeded uniform stream through the quantile."""
    from .ecdf import Sample

    return Sample(draw_values(model, n, seed))


def draw_values(model: DistributionModel, n: int, seed: SeedSpec) -> np.ndarray:
    """Unsorted draws in stream order."""
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    return model.quantile_array(uniform_stream(seed, n))


def _floats(parts: Iterable[str], spec: str) -> list[float]:
    try:
        return [float(s) for s in parts]
    except ValueError:
        raise DomainError(f"malformed model spec {spec!r}: non-numeric parameter") from None


def parse_model(spec: str) -> DistributionModel:
    """Parse ``uniform:a,b``, ``exp:rate``, ``pareto:xm,alpha``, ``bern:p`` or
    ``disc:v1:m1,v2:m2,...``."""
    name, sep, rest = spec.strip().partition(":")
    if not sep or not rest:
        raise DomainError(f"malformed model spec {spec!r}")
    name = name.lower()
    if name == "disc":
        atoms = []
        for item in rest.split(","):
            pair = item.split(":")
            if len(pair) != 2:
                raise DomainError(f"malformed atom {item!r} in {spec!r}; expected value:mass")
            atoms.append(tuple(_floats(pair, spec)))
        return FiniteDiscrete(tuple(atoms))
    params = _floats(rest.split(","), spec)
    arity: dict[str, tuple[int, type]] = {
        "uniform": (2, Uniform),
        "exp": (1, Exponential),
        "pareto": (2, Pareto),
        "bern": (1, Bernoulli),
    }
    if name not in arity:
        raise DomainError(f"unknown model family {name!r} in {spec!r}")
    count, cls = arity[name]
    if len(params) != count:
        raise DomainError(f"{name} takes {count} parameter(s), got {len(params)} in {spec!r}")
    return cls(*params)


def check_models_continuous(models: Sequence[DistributionModel], op: str) -> None:
    for m in models:
        if m.is_discrete:
            raise DomainError(f"{op} requires a continuous model, got {m.spec()}")
