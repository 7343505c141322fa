from math import exp

import numpy as np
import pytest

from spin_limit_shapes.errors import DomainError
from spin_limit_shapes.pausing import PausingSpec, a_factor, renewal_count


@pytest.mark.parametrize(
    "family, params, mean",
    [("exponential", "2", 2.0), ("gamma", "2,0.5", 1.0), ("uniform", "0,3", 1.5), ("deterministic", "1", 1.0)],
)
def test_parse_and_mean(family, params, mean):
    spec = PausingSpec.parse(family, params)
    assert spec.mean == pytest.approx(mean)
    assert spec.integrable == (family != "deterministic")


def test_histogram_law():
    spec = PausingSpec.parse("histogram", "0,1,2|1,3")
    assert spec.weights == (0.25, 0.75)
    assert spec.mean == pytest.approx(1.25)
    assert spec.cdf(1.0) == pytest.approx(0.25)
    draws = spec.sample(np.random.default_rng(0), 1000)
    assert ((draws >= 0) & (draws <= 2)).all()


@pytest.mark.parametrize(
    "family, params",
    [("cauchy", "1"), ("gamma", "1"), ("uniform", "2,1"), ("exponential", "-1"), ("exponential", "x")],
)
def test_bad_laws_rejected(family, params):
    with pytest.raises(DomainError):
        PausingSpec.parse(family, params)


def test_deterministic_renewal_count():
    rng = np.random.default_rng(0)
    assert renewal_count(10, 1.0, PausingSpec.deterministic(1.0), rng) == 10
    assert renewal_count(10, 0.0, PausingSpec.deterministic(1.0), rng) == 0


def test_renewal_count_mean():
    rng = np.random.default_rng(5)
    counts = [renewal_count(50, 1.0, PausingSpec.exponential(1.0), rng) for _ in range(400)]
    assert np.mean(counts) == pytest.approx(50, abs=2.0)


def test_closed_form_is_exact_for_exponential():
    result = a_factor(3, 1.0, 100, PausingSpec.exponential(1.0))
    assert result.method == "closed"
    assert result.value == pytest.approx(exp(-3.0))
    assert result.deviation < 1e-15


def test_gamma_method_reproduces_poisson_case():
    spec = PausingSpec.exponential(1.0)
    closed = a_factor(3, 1.0, 100, spec, method="closed").value
    assert a_factor(3, 1.0, 100, spec, method="gamma").value == pytest.approx(closed, abs=1e-10)
    assert a_factor(3, 1.0, 50, spec, method="grid").value == pytest.approx(
        a_factor(3, 1.0, 50, spec, method="closed").value, abs=1e-3
    )


def test_gamma_pausing_converges():
    result = a_factor(2, 1.0, 10000, PausingSpec.gamma(2, 0.5))
    assert result.method == "gamma"
    assert result.deviation < 1e-3
    assert result.tail_mass < 1e-8


def test_grid_method_for_uniform_pausing():
    result = a_factor(2, 1.0, 50, PausingSpec.uniform(0.0, 2.0))
    assert result.method == "grid"
    assert 0 < result.value < 1
    assert result.deviation < 0.05


def test_deterministic_pausing_gives_binomial_power():
    result = a_factor(2, 1.0, 20, PausingSpec.deterministic(1.0), method="grid")
    assert result.value == pytest.approx(0.9**20, rel=1e-6)


def test_trivial_and_invalid_arguments():
    spec = PausingSpec.exponential(1.0)
    assert a_factor(0, 1.0, 10, spec).value == 1.0
    assert a_factor(3, 0.0, 10, spec).method == "trivial"
    with pytest.raises(DomainError):
        a_factor(11, 1.0, 10, spec)
    with pytest.raises(DomainError):
        a_factor(1, 1.0, 10, PausingSpec.gamma(2, 0.5), method="closed")
    with pytest.raises(DomainError):
        a_factor(1, 1.0, 10, spec, method="saddle")
