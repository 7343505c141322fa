# spin_limit_shapes/freeprob.py

"""
Noncrossing partitions and the free cumulant-moment machinery.

Cumulant and moment sequences carry exact coefficients in QQ[q]; a plain rational is
the special case without q. The formal parameter q stands for e^{-t/m}.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from . import series
from .errors import DomainError, SizeLimitError
from .series import Q, SERIES_RING, W, Scalar

NC_SEARCH_LIMIT = 14
DEFAULT_ORDER = 12

Block = Tuple[int, ...]


@dataclass(frozen=True)
class NCPartition:
    """A set partition of {1..n} given by its blocks (each block sorted, blocks sorted by minimum)."""

    blocks: Tuple[Block, ...]

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def block_type(self) -> Tuple[int, ...]:
        return tuple(sorted(self.sizes, reverse=True))

    def is_noncrossing(self) -> bool:
        owner = {x: k for k, block in enumerate(self.blocks) for x in block}
        points = sorted(owner)
        for a, b, c, d in combinations(points, 4):
            if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
                return False
        return True


@lru_cache(maxsize=None)
def _nc_patterns(m: int) -> Tuple[Tuple[Block, ...], ...]:
    """NC partitions of positions 0..m-1, built from the block that contains position 0."""
    if m == 0:
        return ((),)
    patterns = []
    rest = tuple(range(1, m))
    for size in range(len(rest) + 1):
        for chosen in combinations(range(len(rest)), size):
            block = (0,) + tuple(rest[i] for i in chosen)
            cuts = (-1,) + chosen + (len(rest),)
            segments = [rest[cuts[t] + 1 : cuts[t + 1]] for t in range(len(cuts) - 1)]
            pieces = [
                [tuple(tuple(seg[i] for i in blk) for blk in pattern) for pattern in _nc_patterns(len(seg))]
                for seg in segments
            ]
            for combo in product(*pieces):
                blocks = (block,) + tuple(blk for part in combo for blk in part)
                patterns.append(tuple(sorted(blocks)))
    return tuple(patterns)


def enumerate_nc(n: int, limit: int = NC_SEARCH_LIMIT) -> List[NCPartition]:
    """All noncrossing partitions of {1..n}; there are Catalan(n) of them."""
    if n > limit:
        raise SizeLimitError("enumerate_nc size", n, limit)
    return [
        NCPartition(tuple(tuple(x + 1 for x in blk) for blk in pattern))
        for pattern in _nc_patterns(n)
    ]


def count_nc_type(sigma: Sequence[int], limit: int = NC_SEARCH_LIMIT) -> int:
    """Number of NC partitions of {1..|σ|} whose block sizes form the partition σ."""
    target = tuple(sorted((int(s) for s in sigma), reverse=True))
    return sum(1 for pi in enumerate_nc(sum(target), limit) if pi.block_type == target)


def enumerate_nc_pairings(n: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Noncrossing perfect matchings of {1..n}: 1 pairs with j, inside and outside recurse."""

    def pairings(points: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, int], ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for idx in range(1, len(points), 2):
            inside, outside = points[1:idx], points[idx + 1 :]
            for left in pairings(inside):
                for right in pairings(outside):
                    yield ((first, points[idx]),) + left + right

    if n % 2:
        return iter(())
    return pairings(tuple(range(1, n + 1)))


def count_nc_pairings(n: int) -> int:
    return sum(1 for _ in enumerate_nc_pairings(n))


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


@dataclass(frozen=True)
class CumulantVector:
    """Free cumulants R_1..R_N; `cumulants[k]` is R_k."""

    values: Tuple[PolyElement, ...]

    @classmethod
    def of(cls, values: Sequence[Scalar]) -> "CumulantVector":
        """Build from [R_1, R_2, …, R_N]."""
        return cls(tuple(series.scalar(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> PolyElement:
        if not 1 <= k <= self.order:
            raise IndexError(f"cumulant index {k} outside 1..{self.order}")
        return self.values[k - 1]

    def __len__(self) -> int:
        return len(self.values)

    def is_symbolic(self) -> bool:
        return not all(series.is_rational(v) for v in self.values)

    def fractions(self) -> List[Fraction]:
        return [series.to_fraction(v) for v in self.values]

    def at(self, q_value: Scalar) -> "CumulantVector":
        return CumulantVector(tuple(series.evaluate_q(v, q_value) for v in self.values))

    def floats(self, q_value: float) -> List[float]:
        return [series.q_polynomial_float(v, q_value) for v in self.values]

    def truncate(self, order: int) -> "CumulantVector":
        return CumulantVector(self.values[:order])

    def to_list(self) -> List[str]:
        return [str(series.unwrap(v)) for v in self.values]


@dataclass(frozen=True)
class MomentSequence:
    """Moments M_0..M_N with M_0 = 1; `moments[j]` is M_j."""

    values: Tuple[PolyElement, ...]

    @classmethod
    def of(cls, values: Sequence[Scalar]) -> "MomentSequence":
        return cls(tuple(series.scalar(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, j: int) -> PolyElement:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)

    def is_symbolic(self) -> bool:
        return not all(series.is_rational(v) for v in self.values)

    def fractions(self) -> List[Fraction]:
        return [series.to_fraction(v) for v in self.values]

    def at(self, q_value: Scalar) -> "MomentSequence":
        return MomentSequence(tuple(series.evaluate_q(v, q_value) for v in self.values))

    def floats(self, q_value: float = 1.0) -> List[float]:
        return [series.q_polynomial_float(v, q_value) for v in self.values]

    def to_list(self) -> List[str]:
        return [str(series.unwrap(v)) for v in self.values]


@dataclass(frozen=True)
class SeriesPair:
    """A truncated moment sequence together with its free cumulants."""

    moments: MomentSequence
    cumulants: CumulantVector

    @property
    def order(self) -> int:
        return self.cumulants.order

    def to_dict(self) -> Dict:
        symbolic = self.moments.is_symbolic() or self.cumulants.is_symbolic()
        return {
            "cumulants": self.cumulants.to_list(),
            "moments": self.moments.to_list(),
            "order": self.order,
            "q": "symbolic" if symbolic else "rational",
        }


def _power_coefficient(base: PolyElement, s: int, m: int) -> PolyElement:
    """[w^m] base^s."""
    return series.coefficient(series.rs_pow(base, s, W, m + 1), m)


def cumulants_to_moments(cumulants: CumulantVector) -> MomentSequence:
    """
    M_n = Σ_{π ∈ NC(n)} Π R_{|block|}, summed by the block containing 1:
    M_n = Σ_s R_s [w^{n−s}] M(w)^s.
    """
    moments = [SERIES_RING.one]
    for n in range(1, cumulants.order + 1):
        base = series.from_coefficients(moments)
        total = SERIES_RING.zero
        for s in range(1, n + 1):
            if cumulants[s]:
                total += cumulants[s] * _power_coefficient(base, s, n - s)
        moments.append(total)
    return MomentSequence(tuple(moments))


def moments_to_cumulants(moments: Union[MomentSequence, Sequence[Scalar]]) -> CumulantVector:
    """Triangular back-substitution of the cumulant-moment formula."""
    if not isinstance(moments, MomentSequence):
        moments = MomentSequence.of(moments)
    if moments[0] != SERIES_RING.one:
        raise DomainError(f"M_0 must be 1, got {moments[0]}")
    base = series.from_coefficients(moments.values)
    cumulants: List[PolyElement] = []
    for n in range(1, moments.order + 1):
        total = moments[n]
        for s in range(1, n):
            if cumulants[s - 1]:
                total -= cumulants[s - 1] * _power_coefficient(base, s, n - s)
        cumulants.append(total)
    return CumulantVector(tuple(cumulants))


def nc_moment(cumulants: CumulantVector, n: int, even_blocks_only: bool = False) -> PolyElement:
    """M_n as a literal sum over NC(n); optionally keep only partitions with even blocks."""
    total = SERIES_RING.zero
    for pi in enumerate_nc(n):
        if even_blocks_only and any(size % 2 for size in pi.sizes):
            continue
        total += prod((cumulants[size] for size in pi.sizes), start=SERIES_RING.one)
    return total


def series_pair_from_cumulants(cumulants: CumulantVector) -> SeriesPair:
    return SeriesPair(cumulants_to_moments(cumulants), cumulants)


def free_convolve(first: CumulantVector, second: CumulantVector) -> CumulantVector:
    """R_k(μ ⊞ ν) = R_k(μ) + R_k(ν), truncated to the shorter order."""
    order = min(first.order, second.order)
    return CumulantVector(tuple(first[k] + second[k] for k in range(1, order + 1)))


def free_compress(cumulants: CumulantVector, c: Scalar) -> CumulantVector:
    """R_k(μ_c) = c^{k−1} R_k(μ)."""
    c = series.scalar(c)
    if not c:
        raise DomainError("free compression needs c != 0")
    return CumulantVector(tuple(cumulants[k] * c ** (k - 1) for k in range(1, cumulants.order + 1)))


def semicircle(variance: Scalar = 1, order: int = DEFAULT_ORDER) -> CumulantVector:
    """Cumulants of the centered semicircle law of the given variance."""
    values = [0] * order
    if order >= 2:
        values[1] = variance
    return CumulantVector.of(values)


def check_limit_shape_cumulants(cumulants: CumulantVector) -> None:
    if cumulants.order < 2 or cumulants[1] != SERIES_RING.zero or cumulants[2] != SERIES_RING.one:
        raise DomainError("initial cumulants must have R_1 = 0 and R_2 = 1")


def evolve(initial: CumulantVector, q: Scalar = Q) -> CumulantVector:
    """R_1 = 0, R_2 = 1 and R_{k+1} ↦ R_{k+1} q^k; q defaults to the formal parameter."""
    check_limit_shape_cumulants(initial)
    q = series.scalar(q)
    values = [SERIES_RING.zero, SERIES_RING.one]
    for k in range(2, initial.order):
        values.append(initial[k + 1] * q**k)
    return CumulantVector(tuple(values))


def stieltjes_series(moments: Union[MomentSequence, Sequence[Scalar]]) -> PolyElement:
    """G = Σ_j M_j z^{−j−1} as a series in w = 1/z."""
    if not isinstance(moments, MomentSequence):
        moments = MomentSequence.of(moments)
    return series.from_coefficients(moments.values, start=1)


def stieltjes_coefficients(moments: Union[MomentSequence, Sequence[Scalar]]) -> List[Union[Fraction, PolyElement]]:
    """Laurent coefficients of G at ∞: entry j is the coefficient of z^{−j}."""
    g = stieltjes_series(moments)
    order = len(moments) if not isinstance(moments, MomentSequence) else moments.order + 1
    return [series.unwrap(c) for c in series.coefficients(g, order)]


def r_transform_from_stieltjes(g: PolyElement, order: int) -> CumulantVector:
    """
    Free cumulants read off G by R_k = −1/(k−1) [z^{−1}] G^{−(k−1)} (k ≥ 2), R_1 = M_1.

    With G = w·H the residue is the w^k coefficient of H^{−(k−1)}.
    """
    h = SERIES_RING.from_dict({(mw - 1, mq): c for (mw, mq), c in g.items()})
    values = [series.coefficient(h, 1)]
    for k in range(2, order + 1):
        inverse_power = series.rs_pow(h, -(k - 1), W, k + 1)
        values.append(-series.coefficient(inverse_power, k) * series.scalar(Fraction(1, k - 1)))
    return CumulantVector(tuple(values))


def stationary_residual(g: PolyElement, order: int) -> List[PolyElement]:
    """Coefficients of G² − zG + 1 through w^order (all zero for the semicircle)."""
    h = SERIES_RING.from_dict({(mw - 1, mq): c for (mw, mq), c in g.items()})
    residual = series.rs_trunc(g * g - h + 1, W, order + 1)
    return series.coefficients(residual, order)


def growth_constants(values: Sequence[Union[Fraction, float]], start: int = 1) -> List[float]:
    """|v_j|^{1/j} / j for j = start, start+1, …; bounded ratios mean Carleman-type growth."""
    constants = []
    for j, v in enumerate(values, start=start):
        constants.append(abs(float(v)) ** (1.0 / j) / j if v else 0.0)
    return constants


CARLEMAN_KMAX = 8


@dataclass(frozen=True)
class GrowthBound:
    """|m_2k| ≤ (constant · 2k)^{2k} for k ≤ kmax, with constant = 4 · max_j |R_j|^{1/j} / j."""

    cumulant_constant: float
    constant: float
    moments: Tuple[float, ...]

    @property
    def kmax(self) -> int:
        return len(self.moments)

    def ratios(self) -> List[float]:
        """|m_2k| / (constant · 2k)^{2k}, k = 1..kmax."""
        out = []
        for k, m in enumerate(self.moments, start=1):
            bound = (self.constant * 2 * k) ** (2 * k)
            out.append(abs(m) / bound if bound else (0.0 if m == 0 else float("inf")))
        return out

    @property
    def holds(self) -> bool:
        return all(r <= 1.0 for r in self.ratios())


def carleman_bound(cumulants: CumulantVector, kmax: int = CARLEMAN_KMAX, q_value: float = 1.0) -> GrowthBound:
    """
    Carleman-type moment growth at q = q_value from R_1..R_{2·kmax}.

    Each m_n sums Π R_|V| over the Cat(n) ≤ 4^n noncrossing partitions, so |R_j| ≤ (Cj)^j
    for all j ≤ n gives |m_n| ≤ (4C)^n n^n.
    """
    order = 2 * kmax
    if kmax < 1 or cumulants.order < order:
        raise DomainError(f"the growth check through m_{order} needs R_1..R_{order}, got {cumulants.order}")
    head = cumulants.truncate(order)
    c = max(growth_constants(head.floats(q_value)))
    moments = cumulants_to_moments(head).floats(q_value)
    return GrowthBound(c, 4 * c, tuple(moments[2 * k] for k in range(1, kmax + 1)))
