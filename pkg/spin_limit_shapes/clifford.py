# spin_limit_shapes/clifford.py

"""
Sign cocycle of the double cover, computed in the Clifford algebra.

The generator r_i is sent to (e_i − e_{i+1})/√2 with anticommuting e_1..e_n, e_i² = 1.
Every permutation gets a canonical lift (the product of a fixed reduced word), and
the cocycle c(σ, τ) ∈ {0, 1} is defined by L(σ)L(τ) = z^{c(σ, τ)} L(στ) with z ↦ −1.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

from .errors import SpinShapeError

Perm = Tuple[int, ...]


@dataclass(frozen=True)
class CliffordElement:
    """Σ coeff · e_mask / √2^sqrt2_power with integer coefficients."""

    terms: Tuple[Tuple[int, int], ...]
    sqrt2_power: int = 0

    @classmethod
    def from_dict(cls, terms: Dict[int, int], sqrt2_power: int = 0) -> "CliffordElement":
        return cls(tuple(sorted((m, c) for m, c in terms.items() if c)), sqrt2_power)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def coefficient(self, mask: int) -> int:
        return self.as_dict().get(mask, 0)

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        product: Dict[int, int] = {}
        for a, ca in self.terms:
            for b, cb in other.terms:
                m = a ^ b
                product[m] = product.get(m, 0) + monomial_sign(a, b) * ca * cb
        return CliffordElement.from_dict(product, self.sqrt2_power + other.sqrt2_power)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def monomial_sign(a: int, b: int) -> int:
    """Sign of e_A · e_B = ± e_{A △ B}: one factor −1 per pair x ∈ A, y ∈ B with x > y."""
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += _popcount(a & ~((low << 1) - 1))
        rest ^= low
    return -1 if swaps % 2 else 1


def generator_image(i: int) -> CliffordElement:
    """(e_i − e_{i+1}) / √2."""
    return CliffordElement.from_dict({1 << (i - 1): 1, 1 << i: -1}, 1)


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(sigma: Perm, tau: Perm) -> Perm:
    """(στ)(j) = σ(τ(j))."""
    return tuple(sigma[t - 1] for t in tau)


def inverse_perm(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def times_simple(sigma: Perm, i: int) -> Perm:
    """σ · s_i: swap the images of i and i + 1."""
    out = list(sigma)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def first_descent(sigma: Perm) -> Optional[int]:
    for i in range(1, len(sigma)):
        if sigma[i - 1] > sigma[i]:
            return i
    return None


@lru_cache(maxsize=None)
def reduced_word(sigma: Perm) -> Tuple[int, ...]:
    """word(σ) = word(σ s_i) + (i,) with i the smallest right descent of σ."""
    i = first_descent(sigma)
    if i is None:
        return ()
    return reduced_word(times_simple(sigma, i)) + (i,)


@lru_cache(maxsize=None)
def lift(sigma: Perm) -> CliffordElement:
    """Product of the generator images along the reduced word of σ."""
    i = first_descent(sigma)
    if i is None:
        return CliffordElement(((0, 1),), 0)
    return lift(times_simple(sigma, i)) * generator_image(i)


def _relative_sign(value: Dict[int, int], power: int, reference: CliffordElement) -> int:
    """0 if value/√2^power equals the reference, 1 if it equals its negative."""
    mask, ref = reference.terms[0]
    got = value.get(mask, 0)
    gap = power - reference.sqrt2_power
    if gap < 0 or gap % 2 or got == 0 or abs(got) != abs(ref) * 2 ** (gap // 2):
        raise SpinShapeError(f"Clifford images disagree beyond a sign at monomial {mask:b}")
    return 0 if (got > 0) == (ref > 0) else 1


@lru_cache(maxsize=None)
def generator_cocycle(sigma: Perm, i: int) -> int:
    """c with L(σ) r_i = z^c L(σ s_i); only the first monomial of L(σ s_i) is compared."""
    target = lift(times_simple(sigma, i))
    mask = target.terms[0][0]
    source = lift(sigma).as_dict()
    value = 0
    for b, cb in ((1 << (i - 1), 1), (1 << i, -1)):
        a = mask ^ b
        value += source.get(a, 0) * monomial_sign(a, b) * cb
    return _relative_sign({mask: value}, lift(sigma).sqrt2_power + 1, target)


@lru_cache(maxsize=1 << 20)
def cocycle(sigma: Perm, tau: Perm) -> int:
    """Multiply L(σ) by the letters of L(τ) one at a time and collect the signs."""
    sign = 0
    current = sigma
    for i in reduced_word(tau):
        sign ^= generator_cocycle(current, i)
        current = times_simple(current, i)
    return sign


def cocycle_direct(sigma: Perm, tau: Perm) -> int:
    """The same sign from the full Clifford product (slow; used as an oracle)."""
    product = lift(sigma) * lift(tau)
    return _relative_sign(product.as_dict(), product.sqrt2_power, lift(compose(sigma, tau)))


def cocycle_identity_holds(triples: Iterable[Tuple[Perm, Perm, Perm]]) -> bool:
    """c(σ,τ) + c(στ,υ) = c(τ,υ) + c(σ,τυ) mod 2 for every triple."""
    for sigma, tau, upsilon in triples:
        lhs = cocycle(sigma, tau) ^ cocycle(compose(sigma, tau), upsilon)
        rhs = cocycle(tau, upsilon) ^ cocycle(sigma, compose(tau, upsilon))
        if lhs != rhs:
            return False
    return True
