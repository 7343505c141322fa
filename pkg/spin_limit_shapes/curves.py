# spin_limit_shapes/curves.py

"""
Closed-form limit curves: VKLS and the doubled Vershik curve, with the Rayleigh measure of
the latter, its Bernoulli-number moments and free cumulants.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, pi, sqrt
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate
from sympy import bernoulli as sympy_bernoulli

from .errors import DomainError
from .freeprob import CumulantVector
from .measures import compositions, rayleigh_to_cumulants
from .spcore import StrictPartition, profile_values

# Exponent scale of the doubled Vershik curve: π / (2√6).
VERSHIK_RATE = pi / (2 * sqrt(6))
DEFAULT_GRID = np.linspace(-3.0, 3.0, 601)


def vkls(x):
    """(2/π)(x arcsin(x/2) + √(4 − x²)) on |x| ≤ 2, |x| beyond."""
    x = np.asarray(x, dtype=float)
    inside = np.clip(x, -2.0, 2.0)
    curve = 2 / pi * (inside * np.arcsin(inside / 2) + np.sqrt(4 - inside**2))
    return np.where(np.abs(x) <= 2, curve, np.abs(x))


def semicircle_density(x):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) <= 2, np.sqrt(np.clip(4 - x**2, 0, None)) / (2 * pi), 0.0)


def vershik(x):
    """Ω_V(x) = (2√6/π) log(e^{ax} + e^{−ax}), a = π/(2√6)."""
    x = np.asarray(x, dtype=float)
    a = VERSHIK_RATE * np.abs(x)
    return 2 * sqrt(6) / pi * (a + np.log1p(np.exp(-2 * a)))


def vershik_density(x):
    """Density of the Rayleigh measure τ_V: (π/√6)(e^{ax} + e^{−ax})^{−2}."""
    x = np.asarray(x, dtype=float)
    a = VERSHIK_RATE * np.abs(x)
    return pi / sqrt(6) * np.exp(-2 * a) / (1 + np.exp(-2 * a)) ** 2


@lru_cache(maxsize=None)
def bernoulli(j: int) -> Fraction:
    """B_j from t/(e^t − 1) = Σ B_j t^j / j!, i.e. Σ_{k=0}^{m} C(m+1, k) B_k = 0 (so B_1 = −1/2)."""
    if j < 0:
        raise DomainError(f"Bernoulli index must be nonnegative, got {j}")
    if j == 0:
        return Fraction(1)
    total = sum((comb(j + 1, k) * bernoulli(k) for k in range(j)), Fraction(0))
    return -total / (j + 1)


def bernoulli_oracle(j: int) -> Fraction:
    """Even-index Bernoulli numbers from sympy (its B_1 sign convention differs)."""
    value = sympy_bernoulli(j)
    return Fraction(int(value.p), int(value.q))


def _half(order: int) -> int:
    if order < 2 or order % 2:
        raise DomainError(f"expected an even order ≥ 2, got {order}")
    return order // 2


def tau_v_moment(order: int) -> Fraction:
    """M_{2k}(τ_V) = (2^{2k} − 2) 6^k |B_{2k}|."""
    k = _half(order)
    return (2 ** (2 * k) - 2) * 6**k * abs(bernoulli(2 * k))


def vershik_bounds(order: int) -> Tuple[float, float, float]:
    """(lower, M_{2k}(τ_V), upper) with upper = 2·6^k (2k)!/π^{2k} and lower = (1 − 2^{1−2k})·upper."""
    k = _half(order)
    upper = 2 * 6**k * factorial(2 * k) / pi ** (2 * k)
    return (1 - 2.0 ** (1 - 2 * k)) * upper, float(tau_v_moment(order)), upper


def vershik_rayleigh_moment_numeric(order: int) -> float:
    """∫ x^{2k} dτ_V by quadrature over the half line."""
    _half(order)
    value, _ = integrate.quad(lambda x: x**order * float(vershik_density(x)), 0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    return 2 * value


def vershik_cumulant(order: int) -> Fraction:
    """
    R_{2k} of the transition measure of Ω_V in closed form:
    (−1)^{k+1} 6^k Σ_l (2k−1)^{l−1}/l! Σ_{j_1+…+j_l=k} Π (2^{2j_i−1} − 1) B_{2j_i} / j_i.
    """
    k = _half(order)
    total = Fraction(0)
    for l in range(1, k + 1):
        inner = Fraction(0)
        for js in compositions(k, l):
            term = Fraction(1)
            for j in js:
                term *= (2 ** (2 * j - 1) - 1) * bernoulli(2 * j) / j
            inner += term
        total += Fraction((2 * k - 1) ** (l - 1), factorial(l)) * inner
    return (-1) ** (k + 1) * 6**k * total


def vershik_cumulants(count: int) -> CumulantVector:
    """R_1..R_{2·count} of the Vershik transition measure (odd ones vanish)."""
    values = [Fraction(0)] * (2 * count)
    for k in range(1, count + 1):
        values[2 * k - 1] = vershik_cumulant(2 * k)
    return CumulantVector.of(values)


def vershik_cumulants_from_moments(count: int) -> CumulantVector:
    """The same cumulants pushed through the Rayleigh-moment to free-cumulant formula."""
    return rayleigh_to_cumulants([tau_v_moment(2 * j) for j in range(1, count + 1)], 2 * count)


def vershik_growth_constant(count: int) -> float:
    """C = max_k |R_{2k}|^{1/(2k)} / (2k), the constant in |R_{2k}|^{1/(2k)} ≤ C·2k."""
    return max(
        abs(float(vershik_cumulant(2 * k))) ** (1 / (2 * k)) / (2 * k) for k in range(1, count + 1)
    )


@dataclass
class CurveFn:
    """A curve sampled on a real grid."""

    tag: str
    grid: np.ndarray
    values: np.ndarray
    meta: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_function(cls, tag: str, fn: Callable, grid: Optional[np.ndarray] = None) -> "CurveFn":
        grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
        return cls(tag, grid, np.asarray(fn(grid), dtype=float))

    def lipschitz_excess(self) -> float:
        """max(|Δω|/|Δx| − 1, 0) over consecutive grid points."""
        slopes = np.abs(np.diff(self.values) / np.diff(self.grid))
        return float(max(slopes.max() - 1.0, 0.0))

    def below_abs(self) -> float:
        """max(|x| − ω(x), 0)."""
        return float(max((np.abs(self.grid) - self.values).max(), 0.0))

    def is_diagram(self, tol: float = 1e-9) -> bool:
        return self.lipschitz_excess() <= tol and self.below_abs() <= tol

    def sup_distance(self, other) -> float:
        theirs = other.values if isinstance(other, CurveFn) else np.asarray(other(self.grid), dtype=float)
        return float(np.max(np.abs(self.values - theirs)))

    def to_rows(self) -> List[Dict[str, str]]:
        return [{"x": f"{x:.12f}", "value": f"{v:.12f}"} for x, v in zip(self.grid, self.values)]

    def to_dict(self) -> Dict:
        return {
            "tag": self.tag,
            "grid": {"start": float(self.grid[0]), "stop": float(self.grid[-1]), "points": len(self.grid)},
            **self.meta,
        }


def diagram_curve(lam: StrictPartition, grid: Optional[np.ndarray] = None) -> CurveFn:
    """D(λ)^{√(2n)} on a grid."""
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    return CurveFn(f"D({lam})", grid, profile_values(lam, grid))


def profile_distance(lam: StrictPartition, curve: Callable, grid: Optional[np.ndarray] = None) -> float:
    """sup_x |D(λ)^{√(2n)}(x) − curve(x)| on the grid."""
    return diagram_curve(lam, grid).sup_distance(curve)


def mean_profile_distance(partitions: Sequence[StrictPartition], curve: Callable, grid: Optional[np.ndarray] = None) -> float:
    if not partitions:
        raise DomainError("no partitions to compare")
    return float(np.mean([profile_distance(lam, curve, grid) for lam in partitions]))
