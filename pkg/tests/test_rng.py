import numpy as np
import pytest
from hypothesis import given, strategies as st

from glivenko.errors import DomainError
from glivenko.rng import MASK64, SeedSpec, raw_stream, splitmix64, uniform_stream

# Reference SplitMix64 outputs for state 1234567 (Vigna's test vector).
REFERENCE = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]


def test_splitmix_reference_vector():
    assert splitmix64(1234567, 5) == REFERENCE


def test_vectorised_stream_matches_scalar_generator():
    seed = SeedSpec(99, 3)
    assert raw_stream(seed, 50).tolist() == splitmix64(seed.stream_seed, 50)


def test_stream_offsets_are_prefix_consistent():
    seed = SeedSpec(7, 1)
    full = uniform_stream(seed, 1000)
    assert np.array_equal(full[:300], uniform_stream(seed, 300))
    assert np.array_equal(full[300:], uniform_stream(seed, 700, start=300))


def test_uniforms_strictly_inside_unit_interval():
    u = uniform_stream(SeedSpec(0), 100_000)
    assert u.min() > 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 4 * np.sqrt(1 / 12 / u.size)


def test_distinct_stream_indices_give_distinct_seeds():
    seeds = {SeedSpec(12345, i).stream_seed for i in range(20_000)}
    assert len(seeds) == 20_000


@given(st.integers(0, MASK64), st.integers(0, 2**32 - 1))
def test_seed_derivation_is_deterministic(master, index):
    assert SeedSpec(master, index).stream_seed == SeedSpec(master, index).stream_seed
    if index > 0:
        assert SeedSpec(master, index).stream_seed != SeedSpec(master, index - 1).stream_seed


@pytest.mark.parametrize("master,index", [(-1, 0), (MASK64 + 1, 0), (0, -1)])
def test_bad_seeds_rejected(master, index):
    with pytest.raises(DomainError):
        SeedSpec(master, index)
