from fractions import Fraction as F

import numpy as np
import pytest

from spin_limit_shapes.errors import DomainError, SizeLimitError
from spin_limit_shapes.freeprob import (
    CumulantVector,
    carleman_bound,
    catalan,
    count_nc_pairings,
    count_nc_type,
    cumulants_to_moments,
    enumerate_nc,
    evolve,
    free_compress,
    free_convolve,
    growth_constants,
    moments_to_cumulants,
    nc_moment,
    r_transform_from_stieltjes,
    semicircle,
    series_pair_from_cumulants,
    stationary_residual,
    stieltjes_coefficients,
    stieltjes_series,
)
from spin_limit_shapes.series import Q, SERIES_RING

GENERIC = CumulantVector.of([0, 1, F(1, 2), F(-1, 3), 2, 0, F(5, 7), 1])


def test_noncrossing_counts_are_catalan():
    for n in range(0, 8):
        partitions = enumerate_nc(n)
        assert len(partitions) == catalan(n)
        assert all(pi.is_noncrossing() for pi in partitions)
    assert len(enumerate_nc(4)) == 14


def test_noncrossing_types_and_pairings():
    assert count_nc_type((2, 2)) == 2
    assert count_nc_type((3, 1)) == 4
    assert count_nc_pairings(6) == 5
    assert count_nc_pairings(5) == 0


def test_enumeration_limit():
    with pytest.raises(SizeLimitError):
        enumerate_nc(15)


def test_semicircle_moments_are_catalan():
    moments = cumulants_to_moments(semicircle(1, 10)).fractions()
    assert moments == [1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42]


def test_block_recursion_matches_literal_sum():
    moments = cumulants_to_moments(GENERIC)
    for n in range(1, 8):
        assert moments[n] == nc_moment(GENERIC, n)


def test_cumulants_recovered_from_moments():
    assert moments_to_cumulants(cumulants_to_moments(GENERIC)) == GENERIC
    with pytest.raises(DomainError):
        moments_to_cumulants([2, 0, 1])


def test_even_block_partitions_for_symmetric_laws():
    symmetric = CumulantVector.of([0, 1, 0, F(-1, 2), 0, 3])
    moments = cumulants_to_moments(symmetric)
    for n in (2, 4, 6):
        assert moments[n] == nc_moment(symmetric, n, even_blocks_only=True)


def test_free_convolution_and_compression():
    assert free_convolve(semicircle(1, 6), semicircle(2, 6)) == semicircle(3, 6)
    assert free_convolve(semicircle(1, 6), semicircle(1, 4)).order == 4
    compressed = free_compress(GENERIC, F(1, 2)).fractions()
    assert compressed[:4] == [0, F(1, 2), F(1, 8), F(-1, 24)]
    with pytest.raises(DomainError):
        free_compress(GENERIC, 0)


def test_evolution_shrinks_higher_cumulants():
    evolved = evolve(GENERIC)
    assert evolved[1] == SERIES_RING.zero
    assert evolved[2] == SERIES_RING.one
    assert evolved[4] == GENERIC[4] * Q**3
    assert evolve(GENERIC, 1) == GENERIC
    assert evolve(GENERIC, 0) == semicircle(1, GENERIC.order)
    assert evolved.is_symbolic() and not evolve(GENERIC, F(1, 2)).is_symbolic()


def test_evolution_is_compression_then_semicircle():
    order = 8
    expected = free_convolve(free_compress(GENERIC, Q), semicircle(1 - Q, order))
    assert evolve(GENERIC) == expected
    assert evolve(GENERIC).at(F(1, 3)) == evolve(GENERIC, F(1, 3))


def test_evolution_needs_normalised_start():
    with pytest.raises(DomainError):
        evolve(CumulantVector.of([1, 1, 0]))
    with pytest.raises(DomainError):
        evolve(semicircle(2, 6))


def test_stieltjes_series_and_back():
    moments = cumulants_to_moments(GENERIC)
    g = stieltjes_series(moments)
    assert r_transform_from_stieltjes(g, GENERIC.order) == GENERIC
    coefficients = stieltjes_coefficients([1, 0, 1])
    assert coefficients == [0, 1, 0, 1]


def test_semicircle_solves_stationary_equation():
    g = stieltjes_series(cumulants_to_moments(semicircle(1, 12)))
    assert all(not c for c in stationary_residual(g, 12))
    g_other = stieltjes_series(cumulants_to_moments(GENERIC))
    assert any(stationary_residual(g_other, 8))


def test_growth_constants():
    assert growth_constants([F(0), F(4)], start=1) == [0.0, 1.0]


def test_carleman_bound_of_semicircle():
    bound = carleman_bound(semicircle(1, 16))
    assert bound.cumulant_constant == pytest.approx(0.5)
    assert bound.constant == pytest.approx(2.0)
    assert bound.kmax == 8
    assert bound.moments == pytest.approx([1, 2, 5, 14, 42, 132, 429, 1430])
    assert bound.holds


def test_carleman_bound_holds_for_generated_cumulants():
    rng = np.random.default_rng(5)
    for _ in range(5):
        values = [F(0)] + [F(int(rng.integers(-9, 10)), int(rng.integers(1, 4))) for _ in range(15)]
        bound = carleman_bound(CumulantVector.of(values))
        ratios = bound.ratios()
        assert len(ratios) == 8
        assert max(ratios) <= 1.0
        assert bound.constant == pytest.approx(4 * max(growth_constants(values)))


def test_carleman_bound_of_evolved_cumulants():
    evolved = evolve(CumulantVector.of([0, 1, 0, 3] + [0] * 12))
    assert carleman_bound(evolved, q_value=0.5).holds
    with pytest.raises(DomainError):
        carleman_bound(semicircle(1, 12))


def test_series_pair_export():
    pair = series_pair_from_cumulants(semicircle(1, 4))
    assert pair.to_dict() == {
        "cumulants": ["0", "1", "0", "0"],
        "moments": ["1", "0", "1", "0", "2"],
        "order": 4,
        "q": "rational",
    }
    assert series_pair_from_cumulants(evolve(GENERIC)).to_dict()["q"] == "symbolic"
