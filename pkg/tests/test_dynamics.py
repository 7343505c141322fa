from fractions import Fraction as F

import numpy as np
import pytest
from scipy import stats

from spin_limit_shapes.branching import NazarovLabel, plancherel_spin
from spin_limit_shapes.dynamics import (
    InitialSampler,
    chain_step,
    concentration_report,
    label_histogram,
    named_initial,
    pde_residual,
    predicted_moments,
    random_initial_cumulants,
    residual_vanishes,
    run_replicas,
    simulate,
)
from spin_limit_shapes.errors import DomainError
from spin_limit_shapes.freeprob import CumulantVector, semicircle
from spin_limit_shapes.pausing import PausingSpec
from spin_limit_shapes.spcore import StrictPartition

EXPONENTIAL = PausingSpec.exponential(1.0)


def test_initial_sampler_parsing():
    start = InitialSampler.parse("delta:4,1;-")
    assert start.kind == "delta"
    assert start.label == NazarovLabel(StrictPartition((4, 1)), -1)
    assert str(InitialSampler.parse("Uniform")) == "uniform"
    with pytest.raises(DomainError):
        InitialSampler.parse("poisson")
    with pytest.raises(DomainError):
        InitialSampler("delta")


def test_delta_start_must_match_level():
    start = InitialSampler.parse("delta:3,1")
    rng = np.random.default_rng(0)
    assert start.sample(4, rng) == NazarovLabel(StrictPartition((3, 1)))
    with pytest.raises(DomainError):
        start.sample(5, rng)


def test_samplers_stay_on_level():
    rng = np.random.default_rng(1)
    for kind in ("plancherel", "uniform"):
        for _ in range(20):
            assert InitialSampler(kind).sample(7, rng).n == 7


def test_chain_step_keeps_level():
    rng = np.random.default_rng(2)
    label = NazarovLabel(StrictPartition((4, 2, 1)))
    for _ in range(50):
        label = chain_step(label, rng)
        assert label.n == 7


def test_zero_time_keeps_the_start():
    start = InitialSampler.parse("delta:5,2")
    records = simulate(7, 0.0, EXPONENTIAL, start, 5, seed=3)
    assert all(r.jumps == 0 and r.label == start.label for r in records)
    assert all(r.m2 == 1.0 for r in records)
    assert label_histogram(records) == {start.label: 5}


def test_simulation_is_reproducible():
    first = simulate(8, 0.5, EXPONENTIAL, InitialSampler(), 6, seed=9)
    second = simulate(8, 0.5, EXPONENTIAL, InitialSampler(), 6, seed=9)
    assert first == second
    assert first[0].to_row()["M2"] == "1.000000000000"


@pytest.mark.asyncio
async def test_threaded_replicas_match_sequential_ones():
    sequential = simulate(8, 0.5, EXPONENTIAL, InitialSampler("uniform"), 8, seed=4)
    threaded = await run_replicas(8, 0.5, EXPONENTIAL, InitialSampler("uniform"), 8, seed=4, threads=3)
    assert threaded == sequential


def test_walk_needs_two_boxes():
    with pytest.raises(DomainError):
        simulate(1, 1.0, EXPONENTIAL, InitialSampler(), 1, seed=0)
    with pytest.raises(DomainError):
        simulate(5, -1.0, EXPONENTIAL, InitialSampler(), 1, seed=0)


def test_plancherel_start_stays_plancherel():
    replicas = 3000
    records = simulate(5, 1.0, EXPONENTIAL, InitialSampler(), replicas, seed=21)
    histogram = label_histogram(records)
    weights = plancherel_spin(5).weights
    assert set(histogram) <= {label for label, _ in weights}
    observed = [histogram.get(label, 0) for label, _ in weights]
    expected = [float(mass) * replicas for label, mass in weights]
    assert stats.chisquare(observed, expected).pvalue > 1e-3
    assert sum(r.jumps > 0 for r in records) > 0.9 * replicas


def test_exponential_jump_counts_are_poisson():
    replicas, rate = 2000, 6.0
    records = simulate(10, 0.6, EXPONENTIAL, InitialSampler(), replicas, seed=17)
    jumps = np.array([r.jumps for r in records])
    assert abs(jumps.mean() - rate) < 3 * np.sqrt(rate / replicas)
    law = stats.poisson(rate)
    # bins: ≤ 2, then 3..10 one by one, then ≥ 11
    observed = [np.sum(jumps <= 2)] + [np.sum(jumps == k) for k in range(3, 11)] + [np.sum(jumps >= 11)]
    probs = [law.cdf(2)] + [law.pmf(k) for k in range(3, 11)] + [law.sf(10)]
    assert stats.chisquare(observed, np.array(probs) * replicas).pvalue > 1e-3


def test_semicircle_is_stationary():
    moments = predicted_moments(semicircle(1, 6), t=2.0)
    assert moments == pytest.approx([1, 0, 1, 0, 2, 0, 5])
    assert predicted_moments(semicircle(1, 6)).fractions() == [1, 0, 1, 0, 2, 0, 5]
    with pytest.raises(DomainError):
        predicted_moments(semicircle(1, 6), t=1.0, m=0.0)


def test_predicted_moments_interpolate():
    initial = CumulantVector.of([0, 1, 0, 2])
    at_zero = predicted_moments(initial, t=0.0)
    late = predicted_moments(initial, t=50.0)
    assert at_zero[4] == pytest.approx(4.0)
    assert late[4] == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("name", ["semicircle", "vershik", "thoma:1/2", "thoma"])
def test_pde_holds_for_named_starts(name):
    assert residual_vanishes(pde_residual(named_initial(name, 10)))


def test_pde_holds_for_random_starts():
    rng = np.random.default_rng(6)
    for _ in range(3):
        initial = random_initial_cumulants(10, rng)
        assert initial[1] == 0 and initial[2] == 1
        assert residual_vanishes(pde_residual(initial))


def test_named_initial_values():
    assert named_initial("thoma:1/2", 6).fractions() == [0, 1, 0, F(1, 4), 0, F(1, 16)]
    assert named_initial("vershik", 4).fractions()[1] == 1
    with pytest.raises(DomainError):
        named_initial("cauchy", 6)


def test_concentration_report_rows():
    records = simulate(6, 0.2, EXPONENTIAL, InitialSampler(), 12, seed=1)
    rows = concentration_report(records, semicircle(1, 8), 0.2, 1.0)
    assert [row.moment for row in rows] == [2, 4, 6]
    assert rows[0].mean == pytest.approx(1.0)
    assert rows[0].variance == pytest.approx(0.0, abs=1e-20)
    with pytest.raises(DomainError):
        concentration_report([], semicircle(1, 8), 0.2, 1.0)


@pytest.mark.slow
def test_large_walk_concentrates_near_semicircle():
    records = simulate(120, 1.0, EXPONENTIAL, InitialSampler(), 60, seed=8)
    rows = concentration_report(records, semicircle(1, 8), 1.0, 1.0)
    assert rows[1].relative_error < 0.15
