"""Counter-based SplitMix64 uniform streams.

Every random quantity in the package is a deterministic function of a
:class:`SeedSpec`.  Draw ``j`` of a stream is ``mix(stream_seed + (j + 1) * GAMMA)``,
which is exactly the SplitMix64 output sequence started from ``stream_seed``.
Because draws are addressed by counter, a stream of length ``n`` is a prefix of
the same stream of length ``m > n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int, count: int) -> list[int]:
    """First ``count`` outputs of a SplitMix64 generator seeded with ``state``."""
    out = []
    for _ in range(count):
        state = (state + GAMMA) & MASK64
        out.append(mix64(state))
    return out


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed <= MASK64:
            raise DomainError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if self.stream_index < 0:
            raise DomainError(f"stream_index must be nonnegative, got {self.stream_index}")

    @property
    def stream_seed(self) -> int:
        # GAMMA is odd, so (stream_index + 1) * GAMMA is injective mod 2^64 and
        # mix64 is a bijection: distinct indices give distinct stream seeds.
        return mix64(self.master_seed + (self.stream_index + 1) * GAMMA)

    def child(self, offset: int) -> SeedSpec:
        """Seed of the ``offset``-th independent trial relative to this one."""
        return SeedSpec(self.master_seed, self.stream_index + offset)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def raw_stream(seed: SeedSpec, n: int, start: int = 0) -> np.ndarray:
    """Raw 64-bit outputs ``start .. start + n - 1`` of the stream."""
    counters = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed.stream_seed) + counters * np.uint64(GAMMA)
        return _mix64_array(z)


def uniform_stream(seed: SeedSpec, n: int, start: int = 0) -> np.ndarray:
    """Uniform draws strictly inside (0, 1).

    The top 52 bits ``k`` map to ``(k + 0.5) / 2**52``, which is exact in
    double precision and never hits either endpoint.
    """
    k = raw_stream(seed, n, start) >> np.uint64(12)
    return (k.astype(np.float64) + 0.5) * 2.0**-52
