"""Brute-force reference computations, kept independent of the package internals."""

import math

import numpy as np


def naive_ecdf(values, x):
    return sum(1 for v in values if v <= x) / len(values)


def naive_ecdf_left(values, x):
    return sum(1 for v in values if v < x) / len(values)


def naive_discrete_cdf(atoms, x, strict=False):
    return math.fsum(w for v, w in atoms if (v < x if strict else v <= x))


def grid_sup_continuous(values, model, points=100_000):
    """max |F_n - F| over a dense grid spanning the central quantile range,
    plus every sample point and the left limit at every sample point."""
    values = np.sort(np.asarray(values, dtype=float))
    lo = model.quantile(1e-6)
    hi = model.quantile(1 - 1e-6)
    grid = np.linspace(lo, hi, points)
    n = values.size
    f_grid = np.array([model.cdf(x) for x in grid])
    fn_grid = np.searchsorted(values, grid, side="right") / n
    best = np.max(np.abs(fn_grid - f_grid))
    for x in np.unique(values):
        fx = model.cdf(x)
        best = max(best, abs(naive_ecdf(values, x) - fx), abs(naive_ecdf_left(values, x) - fx))
    return float(best)


def candidate_sup_discrete(values, atoms):
    """max |F_n - F| over atoms and sample points, both sides of each."""
    values = list(values)
    best = 0.0
    for x in set(values) | {v for v, _ in atoms}:
        best = max(
            best,
            abs(naive_ecdf(values, x) - naive_discrete_cdf(atoms, x)),
            abs(naive_ecdf_left(values, x) - naive_discrete_cdf(atoms, x, strict=True)),
        )
    return best


def dkw_bound(n, eps):
    """Dvoretzky-Kiefer-Wolfowitz (Massart constant): P(sup >= eps) <= 2 exp(-2 n eps^2)."""
    return 2.0 * math.exp(-2.0 * n * eps * eps)
