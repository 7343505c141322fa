# spin_limit_shapes/thoma.py

"""
Thoma-type spin characters f_α of S̃_∞, their measures ν_α, the R-transform of the
evolved limit shape they generate, and the density of the uniform (c = 1) case.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import pi, sqrt
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate, optimize

from . import series
from .errors import DomainError
from .freeprob import CumulantVector, cumulants_to_moments, stieltjes_series
from .measures import FiniteMeasure
from .series import Q, SERIES_RING, W, Scalar

UNIFORM_EDGE = 3 * sqrt(3) / 2


@dataclass(frozen=True)
class ThomaAlpha:
    """
    A point of Δ: nonincreasing α_i ≥ 0 with Σα_i ≤ 1.

    Either finitely many `entries`, or the geometric sequence α_i = (1 − ratio) ratio^{i−1}.
    """

    entries: Tuple[Fraction, ...] = ()
    ratio: Optional[Fraction] = None

    def __post_init__(self):
        entries = tuple(Fraction(a) for a in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.ratio is not None:
            ratio = Fraction(self.ratio)
            if entries:
                raise DomainError("a geometric α carries no explicit entries")
            if not 0 <= ratio < 1:
                raise DomainError(f"geometric ratio must lie in [0, 1), got {ratio}")
            object.__setattr__(self, "ratio", ratio)
            return
        if any(a < 0 for a in entries):
            raise DomainError(f"α has a negative entry: {entries}")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise DomainError(f"α must be nonincreasing: {entries}")
        if sum(entries) > 1:
            raise DomainError(f"Σα = {sum(entries)} exceeds 1")

    @property
    def is_geometric(self) -> bool:
        return self.ratio is not None

    def total(self) -> Fraction:
        return Fraction(1) if self.is_geometric else sum(self.entries, Fraction(0))

    def power_sum(self, k: int) -> Fraction:
        """Σ α_i^k; for the geometric case (1 − q)^k / (1 − q^k)."""
        if k < 1:
            raise DomainError(f"power sums start at k = 1, got {k}")
        if self.is_geometric:
            q = self.ratio
            return (1 - q) ** k / (1 - q**k)
        return sum((a**k for a in self.entries), Fraction(0))

    def __str__(self) -> str:
        if self.is_geometric:
            return f"geometric(q={self.ratio})"
        return "(" + ", ".join(str(a) for a in self.entries) + ")"


def uniform_alpha(size: int) -> ThomaAlpha:
    """The first `size` entries equal 1/size."""
    if size < 1:
        raise DomainError(f"need at least one entry, got {size}")
    return ThomaAlpha(tuple(Fraction(1, size) for _ in range(size)))


def geometric_alpha(r: float, n: int) -> ThomaAlpha:
    """α_i = (1 − q) q^{i−1} with 1 − q = r·√(2/n), so that ν_α(√(2/n)·) tends to the uniform law on [−r, r]."""
    step = r * sqrt(2 / n)
    if not 0 < step < 1:
        raise DomainError(f"r·√(2/n) = {step} must lie in (0, 1)")
    return ThomaAlpha(ratio=Fraction(1 - step).limit_denominator(10**12))


def uniform_size_for(c: float, n: int) -> int:
    """N with √(n/2)/N ≈ c."""
    return max(1, round(sqrt(n / 2) / c))


def thoma_measure(alpha: ThomaAlpha) -> FiniteMeasure:
    """ν_α = (1 − Σα)δ_0 + Σ α_i/2 (δ_{α_i} + δ_{−α_i}), repeated atoms merged."""
    if alpha.is_geometric:
        raise DomainError("ν_α of a geometric α has infinitely many atoms")
    masses = {Fraction(0): 1 - alpha.total()}
    for a in alpha.entries:
        if a == 0:
            continue
        masses[a] = masses.get(a, Fraction(0)) + a / 2
        masses[-a] = masses.get(-a, Fraction(0)) + a / 2
    return FiniteMeasure(tuple((x, m) for x, m in masses.items() if m))


def thoma_moments(alpha: ThomaAlpha, order: int) -> Fraction:
    """M_{2k}(ν_α) = Σ α_i^{2k+1}; odd moments vanish."""
    if order < 0:
        raise DomainError(f"moment order must be nonnegative, got {order}")
    if order == 0:
        return Fraction(1)
    if order % 2:
        return Fraction(0)
    return alpha.power_sum(order + 1)


def f_alpha(alpha: ThomaAlpha, k: int) -> Fraction:
    """f_α([1 2 ⋯ k]) = 2^{−(k−1)/2} Σ α_i^k for odd k ≥ 3."""
    if k < 3 or k % 2 == 0:
        raise DomainError(f"f_α is evaluated on odd cycles of length ≥ 3, got {k}")
    return alpha.power_sum(k) / 2 ** ((k - 1) // 2)


def scaled_character(alpha: ThomaAlpha, k: int, n: int) -> Fraction:
    """n^{(k−1)/2} f_α([1 ⋯ k]) = M_{k−1}(ν_α(√(2/n)·))."""
    return n ** ((k - 1) // 2) * f_alpha(alpha, k)


def thoma_cumulants(moments: Sequence[Scalar], order: int) -> CumulantVector:
    """r_{k+1} = M_{k−1}(ν) for k ≥ 1, r_1 = 0; `moments[j]` is M_j(ν)."""
    values: List[Scalar] = [0]
    for k in range(1, order):
        values.append(moments[k - 1] if k - 1 < len(moments) else 0)
    return CumulantVector.of(values)


@dataclass(frozen=True)
class UniformLaw:
    """The uniform probability on [−r, r]."""

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r <= 0:
            raise DomainError(f"half-width must be positive, got {self.r}")

    def moment(self, j: int) -> Fraction:
        return Fraction(0) if j % 2 else self.r**j / (j + 1)


Law = Union[FiniteMeasure, UniformLaw]


def law_moments(nu: Law, order: int) -> List[Fraction]:
    """[M_0(ν), …, M_order(ν)]."""
    return [nu.moment(j) for j in range(order + 1)]


def r_transform_evolved(nu: Law, q: Scalar = Q, order: int = 12) -> CumulantVector:
    """
    Coefficients of ∫ ζ(1 − (1 − q)(qζx)²)/(1 − (qζx)²) ν(dx), expanded in ζ under the
    integral: entry k is the coefficient of ζ^{k−1}.
    """
    q = series.scalar(q)
    kernel = (SERIES_RING.one - (1 - q) * q**2 * W**2) * series.rs_series_inversion(
        SERIES_RING.one - q**2 * W**2, W, order
    )
    kernel = series.rs_trunc(kernel, W, order)
    moments = law_moments(nu, order)
    total = SERIES_RING.zero
    for j in range(order):
        total += series.coefficient(kernel, j) * series.scalar(moments[j]) * W ** (j + 1)
    values = series.coefficients(series.rs_trunc(total, W, order), order - 1)
    return CumulantVector(tuple(values))


def r_transform_uniform_closed(r: Fraction, q: Scalar = Q, order: int = 12) -> CumulantVector:
    """(1 − q)ζ + (1/2r) log((1 + rqζ)/(1 − rqζ)), same indexing as r_transform_evolved."""
    r = Fraction(r)
    q = series.scalar(q)
    a = series.scalar(r) * q * W
    logs = series.rs_log(SERIES_RING.one + a, W, order) - series.rs_log(SERIES_RING.one - a, W, order)
    closed = (1 - q) * W + series.scalar(1 / (2 * r)) * logs
    values = series.coefficients(series.rs_trunc(closed, W, order), order - 1)
    return CumulantVector(tuple(values))


def two_point_cumulants(c: Fraction, order: int) -> CumulantVector:
    """Cumulants of ν = (δ_c + δ_{−c})/2 at t = 0: R_{2j} = c^{2j−2}."""
    c = Fraction(c)
    return thoma_cumulants([Fraction(0) if j % 2 else c**j for j in range(order)], order)


def cubic_residual(c: Fraction, order: int) -> List[Fraction]:
    """
    Coefficients of c²ζ³ + (1 − c²)wζ² − ζ + w with ζ = G(z) the Stieltjes series of the
    two-point cumulants (the cubic in z multiplied by w = 1/z); all vanish through w^order.
    """
    c = Fraction(c)
    moments = cumulants_to_moments(two_point_cumulants(c, order + 1))
    g = series.rs_trunc(stieltjes_series(moments), W, order + 1)
    cc = series.scalar(c * c)
    residual = cc * series.rs_pow(g, 3, W, order + 1) + (1 - cc) * W * series.rs_pow(g, 2, W, order + 1) - g + W
    residual = series.rs_trunc(residual, W, order + 1)
    return [series.to_fraction(v) for v in series.coefficients(residual, order)]


def uniform_case_abscissa(u):
    """x(u) = (3√3/2) / ((4π²u² + 1)√(π²u² + 1)), decreasing from 3√3/2 at u = 0."""
    u = np.asarray(u, dtype=float)
    return UNIFORM_EDGE / ((4 * pi**2 * u**2 + 1) * np.sqrt(pi**2 * u**2 + 1))


def density_uniform_case(x: float) -> float:
    """The density u(x) ≥ 0 of the c = 1 transition measure; 0 outside |x| ≤ 3√3/2."""
    target = abs(float(x))
    if target >= UNIFORM_EDGE:
        return 0.0
    if target == 0:
        return float("inf")
    upper = 1.0
    while float(uniform_case_abscissa(upper)) > target:
        upper *= 2
    return float(optimize.brentq(lambda u: float(uniform_case_abscissa(u)) - target, 0.0, upper, xtol=1e-14))


def density_moment(j: int) -> float:
    """
    ∫ x^j u(x) dx over [−3√3/2, 3√3/2].

    Integration by parts in the parametrisation u ↦ x(u) gives 2/(j+1) ∫_0^∞ x(u)^{j+1} du
    for even j; odd moments vanish.
    """
    if j < 0:
        raise DomainError(f"moment order must be nonnegative, got {j}")
    if j % 2:
        return 0.0
    value, _ = integrate.quad(
        lambda u: float(uniform_case_abscissa(u)) ** (j + 1), 0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200
    )
    return 2 * value / (j + 1)


def density_grid(grid: np.ndarray) -> np.ndarray:
    return np.array([density_uniform_case(x) for x in grid])
