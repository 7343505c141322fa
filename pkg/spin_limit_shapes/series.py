# spin_limit_shapes/series.py

"""
Truncated formal power series in w = 1/z whose coefficients are polynomials in q.

Everything lives in the sympy ring QQ[w, q]; truncation is always in w. A coefficient
that does not involve q is an exact rational and converts back to a Fraction.
"""

from fractions import Fraction
from numbers import Integral
from typing import Iterable, List, Union

from sympy import QQ, Rational
from sympy.polys.ring_series import (
    rs_diff,
    rs_exp,
    rs_log,
    rs_pow,
    rs_series_inversion,
    rs_trunc,
)
from sympy.polys.rings import PolyElement, ring

from .errors import DomainError

SERIES_RING, W, Q = ring("w,q", QQ)
ZERO_MONOM = SERIES_RING.zero_monom

Scalar = Union[int, Fraction, Rational, PolyElement]


def scalar(value: Scalar) -> PolyElement:
    """Coerce an int, Fraction, sympy Rational or ring element to an element of QQ[w, q]."""
    if isinstance(value, PolyElement):
        if value.ring != SERIES_RING:
            raise DomainError(f"element of a foreign ring: {value.ring}")
        return value
    if isinstance(value, Fraction):
        return SERIES_RING(QQ(value.numerator, value.denominator))
    if isinstance(value, Rational):
        return SERIES_RING(QQ(int(value.p), int(value.q)))
    if isinstance(value, Integral):
        return SERIES_RING(int(value))
    raise DomainError(f"not an exact scalar: {value!r}")


def is_rational(p: PolyElement) -> bool:
    return all(monom == ZERO_MONOM for monom in p.keys())


def to_fraction(p: Scalar) -> Fraction:
    if not isinstance(p, PolyElement):
        return Fraction(p) if not isinstance(p, Rational) else Fraction(int(p.p), int(p.q))
    if not is_rational(p):
        raise DomainError(f"coefficient depends on w or q: {p}")
    c = p.get(ZERO_MONOM, QQ.zero)
    return Fraction(int(c.numerator), int(c.denominator))


def unwrap(p: PolyElement) -> Union[Fraction, PolyElement]:
    """Fraction when the element is a plain rational, the ring element otherwise."""
    return to_fraction(p) if is_rational(p) else p


def from_coefficients(coeffs: Iterable[Scalar], start: int = 0) -> PolyElement:
    """Σ_j coeffs[j] · w^(j + start)."""
    total = SERIES_RING.zero
    for j, c in enumerate(coeffs):
        total += scalar(c) * W ** (j + start)
    return total


def coefficient(p: PolyElement, j: int) -> PolyElement:
    """Coefficient of w^j, a polynomial in q."""
    return SERIES_RING.from_dict(
        {(0, mq): c for (mw, mq), c in p.items() if mw == j}
    )


def coefficients(p: PolyElement, order: int) -> List[PolyElement]:
    return [coefficient(p, j) for j in range(order + 1)]


def evaluate_q(p: PolyElement, value: Scalar) -> PolyElement:
    """Substitute a rational value for q, keeping the ring."""
    value = to_fraction(scalar(value))
    return p.subs(Q, QQ(value.numerator, value.denominator))


def q_polynomial_float(p: PolyElement, q_value: float) -> float:
    """Numeric value of a q-polynomial (no w) at a real q."""
    total = 0.0
    for (mw, mq), c in p.items():
        if mw:
            raise DomainError(f"w-dependent element: {p}")
        total += float(Fraction(int(c.numerator), int(c.denominator))) * q_value**mq
    return total
