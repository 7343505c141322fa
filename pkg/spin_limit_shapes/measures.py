# spin_limit_shapes/measures.py

"""
Transition and Rayleigh measures of doubled diagrams.

A FiniteMeasure stores exact rational atoms. Rescaling by √s is tracked with the
`scale_sq` field (true location = location / √scale_sq), so even moments of the
√(2n)-rescaled measures stay rational.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from . import series
from .errors import DomainError, PartitionError
from .freeprob import CumulantVector, MomentSequence
from .series import SERIES_RING, W
from .spcore import DoubledDiagram, StrictPartition, addable_boxes, doubled_profile, g_hook

Atom = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Sqrt:
    """The positive square root of a rational, used as a rescaling factor."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 0:
            raise DomainError(f"√{self.value} is not a positive scale")

    def __str__(self) -> str:
        return f"√{self.value}"


@dataclass(frozen=True)
class FiniteMeasure:
    """Finitely many atoms (location, mass); true locations are location / √scale_sq."""

    atoms: Tuple[Atom, ...]
    scale_sq: Fraction = Fraction(1)

    def __post_init__(self):
        atoms = tuple(sorted((Fraction(x), Fraction(m)) for x, m in self.atoms))
        locations = [x for x, _ in atoms]
        if len(set(locations)) != len(locations):
            raise DomainError(f"atom locations must be distinct: {locations}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "scale_sq", Fraction(self.scale_sq))

    @classmethod
    def delta(cls, x=0) -> "FiniteMeasure":
        return cls(((Fraction(x), Fraction(1)),))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def mass(self, x) -> Fraction:
        """Mass of the atom whose stored location is x (0 when absent)."""
        x = Fraction(x)
        for loc, m in self.atoms:
            if loc == x:
                return m
        return Fraction(0)

    def total_mass(self) -> Fraction:
        return sum((m for _, m in self.atoms), Fraction(0))

    def is_probability(self) -> bool:
        return self.total_mass() == 1 and all(m >= 0 for _, m in self.atoms)

    def _scale_power(self, k: int) -> Fraction:
        """scale_sq^{k/2} for even k, or when scale_sq is a perfect square."""
        if k % 2 == 0:
            return self.scale_sq ** (k // 2)
        num, den = self.scale_sq.numerator, self.scale_sq.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn != num or rd * rd != den:
            raise DomainError(f"odd moment of a measure rescaled by √{self.scale_sq} is irrational")
        return Fraction(rn, rd) ** k

    def raw_moment(self, k: int) -> Fraction:
        """Σ location^k · mass on the stored (unscaled) locations."""
        return sum((x**k * m for x, m in self.atoms), Fraction(0))

    def moment(self, k: int) -> Fraction:
        return self.raw_moment(k) / self._scale_power(k)

    def moment_float(self, k: int) -> float:
        return float(self.raw_moment(k)) / float(self.scale_sq) ** (k / 2)

    def moments(self, order: int) -> List[Fraction]:
        return [self.moment(k) for k in range(order + 1)]

    def location_label(self, x: Fraction) -> str:
        if self.scale_sq == 1:
            return str(x)
        return f"{x}/√{self.scale_sq}"

    def to_rows(self, decimals: bool = True) -> List[Dict[str, str]]:
        rows = []
        for x, m in self.atoms:
            row = {"location": self.location_label(x), "mass": str(m)}
            if decimals:
                row["location_decimal"] = f"{float(x) / float(self.scale_sq) ** 0.5:.12g}"
                row["mass_decimal"] = f"{float(m):.12g}"
            rows.append(row)
        return rows

    def to_dict(self) -> Dict:
        return {
            "atoms": [[str(x), str(m)] for x, m in self.atoms],
            "scale_sq": str(self.scale_sq),
        }


def _as_diagram(source: Union[StrictPartition, DoubledDiagram]) -> DoubledDiagram:
    return source if isinstance(source, DoubledDiagram) else doubled_profile(source)


def transition_measure(source: Union[StrictPartition, DoubledDiagram]) -> FiniteMeasure:
    """
    Atoms at the valleys x_k with masses Π_j(x_k − y_j) / Π_{i≠k}(x_k − x_i).

    These are the residues of Π(z − peaks)/Π(z − valleys), evaluated directly at each valley.
    """
    diagram = _as_diagram(source)
    atoms = []
    for k, x in enumerate(diagram.valleys):
        num = Fraction(1)
        for y in diagram.peaks:
            num *= x - y
        den = Fraction(1)
        for i, other in enumerate(diagram.valleys):
            if i != k:
                den *= x - other
        atoms.append((Fraction(x), num / den))
    return FiniteMeasure(tuple(atoms))


def rescale(measure: FiniteMeasure, r: Union[int, Fraction, Sqrt]) -> FiniteMeasure:
    """Push the measure forward by x ↦ x / r; r may be a rational or a Sqrt."""
    if isinstance(r, Sqrt):
        return FiniteMeasure(measure.atoms, measure.scale_sq * r.value)
    r = Fraction(r)
    if r <= 0:
        raise DomainError(f"rescaling factor must be positive, got {r}")
    return FiniteMeasure(tuple((x / r, m) for x, m in measure.atoms), measure.scale_sq)


def rescaled_transition_measure(lam: StrictPartition) -> FiniteMeasure:
    """Transition measure of D(λ) reduced by √(2n); δ_0 for the empty partition."""
    measure = transition_measure(lam)
    return rescale(measure, Sqrt(2 * lam.n)) if lam.n else measure


@dataclass(frozen=True)
class RayleighData:
    """The signed counting measure +1 at every valley and −1 at every peak."""

    valleys: Tuple[int, ...]
    peaks: Tuple[int, ...]
    scale_sq: Fraction = field(default=Fraction(1))

    def total_mass(self) -> int:
        return len(self.valleys) - len(self.peaks)

    def raw_moment(self, k: int) -> Fraction:
        return Fraction(sum(v**k for v in self.valleys) - sum(p**k for p in self.peaks))

    def moment(self, k: int) -> Fraction:
        if k % 2 and self.scale_sq != 1:
            raise DomainError("odd Rayleigh moments of a √-rescaled diagram are irrational")
        return self.raw_moment(k) / self.scale_sq ** (k // 2) if k % 2 == 0 else self.raw_moment(k)

    def moments(self, order: int) -> List[Fraction]:
        """[M_1(τ), …, M_order(τ)]."""
        return [self.moment(k) for k in range(1, order + 1)]


def rayleigh_data(source: Union[StrictPartition, DoubledDiagram], rescaled: bool = False) -> RayleighData:
    diagram = _as_diagram(source)
    scale = Fraction(2 * diagram.n) if rescaled and diagram.n else Fraction(1)
    return RayleighData(diagram.valleys, diagram.peaks, scale)


def pair_mass(measure: FiniteMeasure, c: int) -> Fraction:
    """m({c, −c−1}) for c > 0 and m({0}) for c = 0."""
    if c == 0:
        return measure.mass(0)
    return measure.mass(c) + measure.mass(-c - 1)


def growth_weight_check(lam: StrictPartition, mu: StrictPartition) -> Tuple[Fraction, Fraction]:
    """
    Compare g_μ / ((n+1) g_λ) with the transition-measure weight of the added box:
    half the pair mass m({c, −c−1}) when c > 0, the mass m({0}) when c = 0.
    """
    contents = {grown: c for grown, c in addable_boxes(lam)}
    if mu not in contents:
        raise PartitionError(f"{mu} is not obtained from {lam} by adding one box")
    c = contents[mu]
    lhs = Fraction(g_hook(mu), (lam.n + 1) * g_hook(lam))
    weight = pair_mass(transition_measure(lam), c)
    rhs = weight / 2 if c > 0 else weight
    return lhs, rhs


def jm_moment_rhs(lam: StrictPartition, k: int) -> Fraction:
    """Σ over addable boxes of (c(c+1)/2)^k · m_{D(λ)}({c, −c−1})."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    measure = transition_measure(lam)
    total = Fraction(0)
    for _, c in addable_boxes(lam):
        total += Fraction(c * (c + 1), 2) ** k * pair_mass(measure, c)
    return total


def markov_series(tau_moments: Sequence, order: int) -> MomentSequence:
    """
    Moments M_0..M_order of μ from G_μ(z) = (1/z) exp Σ_k M_k(τ)/k · z^{−k}.

    `tau_moments[k-1]` is M_k(τ); missing entries count as zero.
    """
    exponent = SERIES_RING.zero
    for k, value in enumerate(tau_moments[:order], start=1):
        exponent += series.scalar(value) * series.scalar(Fraction(1, k)) * W**k
    expanded = series.rs_exp(exponent, W, order + 1) if exponent else SERIES_RING.one
    return MomentSequence(tuple(series.coefficients(expanded, order)))


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of `parts` positive integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def rayleigh_to_cumulants(tau_even_moments: Sequence, order: int) -> CumulantVector:
    """
    Free cumulants R_1..R_order of μ when the odd moments of τ vanish:
    R_{2k} = Σ_l (1−2k)^{l−1}/l! Σ_{j_1+…+j_l=k} Π M_{2j_i}(τ) / (2^l Π j_i), odd R's zero.

    `tau_even_moments[j-1]` is M_{2j}(τ).
    """
    even = [Fraction(v) for v in tau_even_moments]
    if order // 2 > len(even):
        raise DomainError(f"order {order} needs {order // 2} even moments of τ, got {len(even)}")
    values = [Fraction(0)] * order
    for k in range(1, order // 2 + 1):
        total = Fraction(0)
        for l in range(1, k + 1):
            inner = Fraction(0)
            for js in compositions(k, l):
                term = Fraction(1)
                for j in js:
                    term *= even[j - 1] / j
                inner += term
            total += Fraction((1 - 2 * k) ** (l - 1), factorial(l)) * inner / 2**l
        values[2 * k - 1] = total
    return CumulantVector.of(values)


def balance_check(lam: StrictPartition) -> List[Tuple[int, Fraction, Fraction]]:
    """(x, x·m({x}), (x+1)·m({−x−1})) for every positive valley x of D(λ)."""
    measure = transition_measure(lam)
    rows = []
    for x, m in measure.atoms:
        if x > 0:
            rows.append((int(x), x * m, (x + 1) * measure.mass(-x - 1)))
    return rows


def odd_moment_collapsed(measure: FiniteMeasure, k: int) -> Fraction:
    """Σ over positive atoms x of x(x^{2k} − (x+1)^{2k}) m({x}), on stored locations."""
    total = Fraction(0)
    for x, m in measure.atoms:
        if x > 0:
            total += x * (x ** (2 * k) - (x + 1) ** (2 * k)) * m
    return total


def cotransition_measure(source: Union[StrictPartition, DoubledDiagram]) -> FiniteMeasure:
    """
    Atoms at the peaks y_k with masses −Π_i(y_k − x_i) / Π_{j≠k}(y_k − y_j) / (2n).

    The pair mass at {c, −c−1} (or at −1 for a removable row of length 1) is the
    restriction weight dim(λ − box) / dim λ at shape level.
    """
    diagram = _as_diagram(source)
    if not diagram.peaks:
        return FiniteMeasure(())
    atoms = []
    for k, y in enumerate(diagram.peaks):
        num = Fraction(1)
        for x in diagram.valleys:
            num *= y - x
        den = Fraction(1)
        for j, other in enumerate(diagram.peaks):
            if j != k:
                den *= y - other
        atoms.append((Fraction(y), -num / den / (2 * diagram.n)))
    return FiniteMeasure(tuple(atoms))


def copair_mass(measure: FiniteMeasure, c: int) -> Fraction:
    """Co-transition weight of removing a box of content c."""
    if c == 0:
        return measure.mass(-1)
    return measure.mass(c) + measure.mass(-c - 1)
