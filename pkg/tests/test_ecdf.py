import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glivenko.distributions import Bernoulli, Exponential, FiniteDiscrete, Pareto, Uniform, draw_sample
from glivenko.ecdf import (
    Sample,
    Side,
    build_ecdf,
    ecdf_eval,
    format_sample,
    pointwise_error,
    read_sample_file,
    sup_distance,
)
from glivenko.errors import DomainError
from glivenko.rng import SeedSpec, uniform_stream

from oracles import candidate_sup_discrete, grid_sup_continuous, naive_ecdf

CONTINUOUS = [Uniform(0, 1), Uniform(-2, 7), Exponential(1.5), Pareto(1, 2), Pareto(0.5, 1.1)]
DISCRETE = [Bernoulli(0.3), FiniteDiscrete(((-1.0, 0.25), (0.5, 0.5), (3.0, 0.25)))]


def test_build_steps():
    e = build_ecdf(Sample([3, 1, 2]))
    assert e.points.tolist() == [1, 2, 3]
    assert e.cum_counts.tolist() == [1, 2, 3]
    assert [ecdf_eval(e, x) for x in (0.5, 1, 1.5, 2, 3, 4)] == [0, 1 / 3, 1 / 3, 2 / 3, 1, 1]


def test_ties_collapse():
    e = build_ecdf(Sample([5, 5, 5]))
    assert e.points.tolist() == [5]
    assert e.cum_counts.tolist() == [3]
    assert ecdf_eval(e, 4.999) == 0 and ecdf_eval(e, 5) == 1


def test_random_sample_matches_counting():
    vals = Uniform(0, 1).quantile_array(uniform_stream(SeedSpec(8), 20))
    e = build_ecdf(Sample(vals))
    for x in uniform_stream(SeedSpec(9), 100) * 1.2 - 0.1:
        assert ecdf_eval(e, x) == naive_ecdf(vals, x)


@pytest.mark.parametrize("x,expected", [(2, 2 / 3), (0.5, 0), (3, 1)])
def test_ecdf_eval_examples(x, expected):
    assert ecdf_eval(build_ecdf(Sample([1, 2, 3])), x) == expected


@pytest.mark.parametrize("x", [math.inf, math.nan])
def test_ecdf_eval_rejects_non_finite(x):
    e = build_ecdf(Sample([1.0]))
    with pytest.raises(DomainError):
        ecdf_eval(e, x)
    with pytest.raises(DomainError):
        pointwise_error(e, Uniform(0, 1), x)


def test_sample_validation():
    with pytest.raises(DomainError):
        Sample([])
    with pytest.raises(DomainError):
        Sample([1.0, math.nan])
    s = Sample([3.0, -1.0, 2.0])
    assert s.values.tolist() == [-1.0, 2.0, 3.0] and s.n == 3


@given(
    st.lists(st.integers(-5, 5).map(lambda k: k / 2), min_size=1, max_size=20),
    st.lists(st.floats(-4, 4), min_size=1, max_size=10),
)
@settings(max_examples=1000)
def test_eval_matches_definition(values, probes):
    e = build_ecdf(Sample(values))
    for x in probes + values:
        assert ecdf_eval(e, x) == naive_ecdf(values, x)
        assert ecdf_eval(e, x) * len(values) == e.count_le(x)


def test_sup_single_point_uniform():
    r = sup_distance(build_ecdf(Sample([0.5])), Uniform(0, 1))
    assert r == type(r)(0.5, 0.5, Side.LEFT_LIMIT)
    assert r.distance == grid_sup_continuous([0.5], Uniform(0, 1))


def test_sup_degenerate_is_zero():
    m = FiniteDiscrete(((4.0, 1.0),))
    r = sup_distance(build_ecdf(draw_sample(m, 30, SeedSpec(1))), m)
    assert r.distance == 0.0


def test_sup_two_points_uniform():
    r = sup_distance(build_ecdf(Sample([0.25, 0.75])), Uniform(0, 1))
    assert r.distance == 0.25
    assert grid_sup_continuous([0.25, 0.75], Uniform(0, 1)) == 0.25


def test_pointwise_examples():
    assert pointwise_error(build_ecdf(Sample([1, 2, 3])), Uniform(0, 4), 2) == pytest.approx(1 / 6, abs=1e-15)
    assert pointwise_error(build_ecdf(Sample([2.0, 3.0])), Pareto(1, 2), -10) == 0
    assert pointwise_error(build_ecdf(Sample([0.5])), Uniform(0, 1), 0.5) == 0.5


def _witness_value(ecdf, model, r):
    if r.side is Side.AT_POINT:
        return abs(ecdf.count_le(r.witness_x) / ecdf.n - model.cdf(r.witness_x))
    left_f = model.cdf_left(r.witness_x) if model.is_discrete else model.cdf(r.witness_x)
    return abs(ecdf.count_lt(r.witness_x) / ecdf.n - left_f)


@pytest.mark.parametrize("model", CONTINUOUS + DISCRETE)
@pytest.mark.parametrize("n", [1, 7, 50])
def test_sup_dominates_pointwise_and_witness_is_consistent(model, n):
    for i in range(5):
        e = build_ecdf(draw_sample(model, n, SeedSpec(31, i)))
        r = sup_distance(e, model)
        assert 0 <= r.distance <= 1
        assert abs(_witness_value(e, model, r) - r.distance) <= 1e-12
        lo = model.quantile(0.001)
        hi = model.quantile(0.999)
        for x in np.linspace(lo - 1, hi + 1, 100):
            assert r.distance >= abs(pointwise_error(e, model, x))


@pytest.mark.parametrize("model", CONTINUOUS)
def test_sup_matches_dense_grid_continuous(model):
    for i in range(4):
        vals = draw_sample(model, 25, SeedSpec(77, i)).values
        got = sup_distance(build_ecdf(Sample(vals)), model).distance
        assert abs(got - grid_sup_continuous(vals, model)) <= 1e-9


@pytest.mark.parametrize("model", DISCRETE)
def test_sup_matches_candidates_discrete(model):
    for i in range(10):
        vals = draw_sample(model, 15, SeedSpec(78, i)).values
        got = sup_distance(build_ecdf(Sample(vals)), model).distance
        assert got == candidate_sup_discrete(vals, model.atoms)


def test_discrete_sup_with_off_atom_sample_points():
    # sample values that are not atoms still enter the candidate set
    model = Bernoulli(0.5)
    vals = [0.0, 0.4, 1.0, 2.0]
    got = sup_distance(build_ecdf(Sample(vals)), model)
    assert got.distance == candidate_sup_discrete(vals, model.atoms) == 0.25


affine = st.tuples(st.floats(0.1, 10), st.floats(-50, 50))


@given(affine, st.integers(0, 1000))
@settings(max_examples=50, deadline=None)
def test_uniform_affine_equivariance(ab, stream):
    a, b = ab
    base = Uniform(0, 1)
    vals = draw_sample(base, 30, SeedSpec(5, stream)).values
    moved = Uniform(b, a + b)
    d0 = sup_distance(build_ecdf(Sample(vals)), base).distance
    d1 = sup_distance(build_ecdf(Sample(a * vals + b)), moved).distance
    assert abs(d0 - d1) <= 1e-12


@given(st.floats(0.1, 10), st.integers(0, 1000))
@settings(max_examples=50, deadline=None)
def test_scale_equivariance_exponential_pareto(a, stream):
    for base, moved in ((Exponential(2.0), Exponential(2.0 / a)), (Pareto(1.0, 1.5), Pareto(a, 1.5))):
        vals = draw_sample(base, 30, SeedSpec(6, stream)).values
        d0 = sup_distance(build_ecdf(Sample(vals)), base).distance
        d1 = sup_distance(build_ecdf(Sample(a * vals)), moved).distance
        assert abs(d0 - d1) <= 1e-12


def test_sample_file_round_trip(tmp_path):
    vals = [0.1, -2.5, 1e-300, 3.0]
    p = tmp_path / "s.txt"
    p.write_text(format_sample(vals))
    assert p.read_text() == "0.1\n-2.5\n1e-300\n3.0\n"
    assert read_sample_file(p).values.tolist() == sorted(vals)


@pytest.mark.parametrize("body", ["1.0\nabc\n", "1.0\ninf\n", "\n\n"])
def test_sample_file_rejects(tmp_path, body):
    p = tmp_path / "bad.txt"
    p.write_text(body)
    with pytest.raises(DomainError):
        read_sample_file(p)
