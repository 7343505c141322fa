from fractions import Fraction as F

import numpy as np
import pytest

from spin_limit_shapes.curves import semicircle_density, vkls
from spin_limit_shapes.errors import DomainError
from spin_limit_shapes.freeprob import cumulants_to_moments, semicircle
from spin_limit_shapes.shape import continued_fraction, density_from_moments, jacobi_coefficients, shape_from_moments

CATALAN_MOMENTS = cumulants_to_moments(semicircle(1, 12)).fractions()
DELTA_MOMENTS = [1] + [0] * 12


def test_jacobi_coefficients_of_semicircle():
    alphas, betas = jacobi_coefficients(CATALAN_MOMENTS)
    assert alphas == [0] * 6
    assert betas == [1] * 5


def test_jacobi_coefficients_stop_at_finite_support():
    assert jacobi_coefficients(DELTA_MOMENTS) == ([0], [])
    two_point = [1, 0, 1, 0, 1, 0, 1]
    assert jacobi_coefficients(two_point) == ([0, 0], [1])
    with pytest.raises(DomainError):
        jacobi_coefficients([2, 0, 1])


def test_continued_fraction_of_point_mass():
    z = np.array([1 + 1j, -2 + 0.5j])
    np.testing.assert_allclose(continued_fraction(z, [F(0)], []), 1 / z)


def test_semicircle_moments_give_vkls():
    curve = shape_from_moments(CATALAN_MOMENTS)
    assert curve.sup_distance(vkls) < 0.05
    assert curve.meta["levels"] == 6
    assert curve.meta["min_beta"] == 1.0


def test_point_mass_gives_absolute_value():
    curve = shape_from_moments(DELTA_MOMENTS)
    assert curve.sup_distance(np.abs) < 0.1


def test_density_reconstruction():
    grid = np.linspace(-1.5, 1.5, 31)
    density = density_from_moments(CATALAN_MOMENTS, grid)
    np.testing.assert_allclose(density, semicircle_density(grid), atol=0.02)


def test_grid_must_increase():
    with pytest.raises(DomainError):
        shape_from_moments(CATALAN_MOMENTS, np.array([1.0, 0.0]))
