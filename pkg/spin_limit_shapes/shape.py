# spin_limit_shapes/shape.py

"""
Diagnostic reconstruction of a diagram from finitely many moments of its transition
measure: Jacobi continued fraction for G, evaluation at x + iy, Richardson extrapolation
y ↘ 0, then ω' = 2F − 1 with the Rayleigh distribution F(x) = 1 + arg G(x + i0)/π.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .curves import DEFAULT_GRID, CurveFn
from .errors import DomainError

Y_SCHEDULE = (0.1, 0.05, 0.025)
Poly = List[Fraction]


def _functional(moments: Sequence[Fraction], p: Poly) -> Fraction:
    if len(p) > len(moments):
        raise DomainError(f"need {len(p)} moments, only {len(moments)} given")
    return sum((c * moments[i] for i, c in enumerate(p)), Fraction(0))


def _times_x(p: Poly) -> Poly:
    return [Fraction(0)] + p


def _mul(p: Poly, r: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(r):
            out[i + j] += a * b
    return out


def _combine(a: Poly, b: Poly, sb: Fraction) -> Poly:
    """a + sb·b."""
    size = max(len(a), len(b))
    a = a + [Fraction(0)] * (size - len(a))
    b = b + [Fraction(0)] * (size - len(b))
    return [x + sb * y for x, y in zip(a, b)]


def jacobi_coefficients(moments: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    """
    Recurrence coefficients (α_0, α_1, …), (β_1, β_2, …) of the monic orthogonal polynomials
    of the moment functional, by the Stieltjes procedure in exact arithmetic.

    Stops when the moments run out or the functional degenerates (finite support).
    """
    moments = [Fraction(m) for m in moments]
    if not moments or moments[0] != 1:
        raise DomainError("moments must start with M_0 = 1")
    alphas: List[Fraction] = []
    betas: List[Fraction] = []
    previous: Poly = []
    current: Poly = [Fraction(1)]
    norm_prev = Fraction(1)
    while 2 * len(current) <= len(moments):
        square = _mul(current, current)
        norm = _functional(moments, square)
        if norm <= 0:
            break
        if alphas:
            betas.append(norm / norm_prev)
        alpha = _functional(moments, _times_x(square)) / norm
        alphas.append(alpha)
        following = _combine(_times_x(current), current, -alpha)
        if previous:
            following = _combine(following, previous, -betas[-1])
        previous, current, norm_prev = current, following, norm
    return alphas, betas


def continued_fraction(z: np.ndarray, alphas: Sequence[Fraction], betas: Sequence[Fraction]) -> np.ndarray:
    """G(z) = 1/(z − α_0 − β_1/(z − α_1 − …)), the last level closed by its square-root fixed point."""
    z = np.asarray(z, dtype=complex)
    a = [float(x) for x in alphas]
    b = [float(x) for x in betas]
    if b:
        shifted = z - a[-1]
        root = np.sqrt(shifted**2 - 4 * b[-1])
        # branch with Im tail ≤ 0 for Im z > 0
        root = np.where((shifted * np.conj(root)).real < 0, -root, root)
        tail = (shifted - root) / (2 * b[-1])
        levels = len(b)
    else:
        tail = np.zeros_like(z)
        levels = 0
    for k in range(levels - 1, -1, -1):
        tail = 1.0 / (z - a[k] - b[k] * tail)
    if not b:
        tail = 1.0 / (z - a[0])
    return tail


def _richardson(values: Sequence[np.ndarray]) -> np.ndarray:
    """Two-level extrapolation for a first-order error in y with halving steps."""
    if len(values) == 1:
        return values[0]
    first = [2 * b - a for a, b in zip(values, values[1:])]
    if len(first) == 1:
        return first[0]
    return (4 * first[1] - first[0]) / 3


def _boundary_values(
    moments: Sequence, grid: np.ndarray, ys: Sequence[float]
) -> Tuple[np.ndarray, np.ndarray, int, float]:
    alphas, betas = jacobi_coefficients(moments)
    slopes, densities = [], []
    for y in ys:
        g = continued_fraction(grid + 1j * y, alphas, betas)
        slopes.append(1 + 2 * np.angle(g) / np.pi)
        densities.append(-g.imag / np.pi)
    min_beta = float(min(betas)) if betas else 0.0
    return _richardson(slopes), _richardson(densities), len(alphas), min_beta


def density_from_moments(moments: Sequence, grid: Optional[np.ndarray] = None, ys: Sequence[float] = Y_SCHEDULE) -> np.ndarray:
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    return np.clip(_boundary_values(moments, grid, ys)[1], 0.0, None)


def shape_from_moments(moments: Sequence, grid: Optional[np.ndarray] = None, ys: Sequence[float] = Y_SCHEDULE) -> CurveFn:
    """
    The diagram ω with ω(x_0) = |x_0| at the left grid end and ω' = 2F − 1 = 1 + 2 arg G/π.

    `meta` carries the continued-fraction depth and min β as a condition estimate.
    """
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    if len(grid) < 2 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be increasing with at least two points")
    slope, _, levels, min_beta = _boundary_values(moments, grid, ys)
    slope = np.clip(slope, -1.0, 1.0)
    values = abs(grid[0]) + cumulative_trapezoid(slope, grid, initial=0.0)
    return CurveFn(
        "numeric-grid",
        grid,
        values,
        {"levels": levels, "min_beta": min_beta, "y_schedule": list(ys)},
    )
