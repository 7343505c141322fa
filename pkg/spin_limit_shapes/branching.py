# spin_limit_shapes/branching.py

"""
The spin branching graph: Nazarov labels, dimensions, restriction/induction matrices,
the spin Plancherel measure and single steps of the Res-Ind chain.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .measures import copair_mass, cotransition_measure, pair_mass, transition_measure
from .spcore import (
    EMPTY,
    StrictPartition,
    addable_boxes,
    count_strict_partitions,
    enumerate_strict_partitions,
    g_hook,
    profile_coordinates,
    removable_boxes,
)

Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True, order=True)
class NazarovLabel:
    """(λ, γ); for λ ∈ SP^+ the two signs name the same class and γ is stored as +1."""

    partition: StrictPartition
    gamma: int = 1

    def __post_init__(self):
        if self.gamma not in (1, -1):
            raise DomainError(f"γ must be ±1, got {self.gamma}")
        if self.partition.is_even and self.gamma != 1:
            object.__setattr__(self, "gamma", 1)

    @classmethod
    def parse(cls, text: str) -> "NazarovLabel":
        """'3,1' or '4,2;-' (sign after a semicolon)."""
        body, _, sign = text.partition(";")
        gamma = -1 if sign.strip() in ("-", "-1") else 1
        return cls(StrictPartition.parse(body), gamma)

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def is_split(self) -> bool:
        """True when (λ, +1) and (λ, −1) are distinct classes (λ ∈ SP^−)."""
        return not self.partition.is_even

    def __str__(self) -> str:
        if not self.is_split:
            return str(self.partition)
        return f"{self.partition}{'+' if self.gamma == 1 else '-'}"


def spin_vertices(n: int) -> List[NazarovLabel]:
    vertices = []
    for lam in enumerate_strict_partitions(n):
        vertices.append(NazarovLabel(lam, 1))
        if not lam.is_even:
            vertices.append(NazarovLabel(lam, -1))
    return vertices


def dim_spin(label: NazarovLabel) -> int:
    """2^{⌊(n − l)/2⌋} · g_λ."""
    lam = label.partition
    return 2 ** ((lam.n - lam.length) // 2) * g_hook(lam)


def branching_multiplicity(upper: NazarovLabel, lower: NazarovLabel) -> int:
    """
    Multiplicity of `lower` in the restriction of `upper`.

    Shrinking a row reaches both signs of a split μ; deleting a row of length 1
    keeps γ.
    """
    if lower.n != upper.n - 1:
        return 0
    for eta, c in removable_boxes(upper.partition):
        if eta != lower.partition:
            continue
        if c == 0 and upper.is_split and lower.gamma != upper.gamma:
            return 0
        return 1
    return 0


@dataclass(frozen=True)
class LevelMatrices:
    """Exact restriction/induction matrices between levels n − 1 and n."""

    n: int
    upper: Tuple[NazarovLabel, ...]
    lower: Tuple[NazarovLabel, ...]
    down: Matrix
    up: Matrix
    chain: Matrix

    def index(self, label: NazarovLabel, level: Optional[int] = None) -> int:
        vertices = self.upper if (level or label.n) == self.n else self.lower
        return vertices.index(label)

    def as_array(self, name: str) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in getattr(self, name)])


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    columns = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in columns) for row in a
    )


def level_matrices(n: int) -> LevelMatrices:
    """
    P_down[ξ→η] = dim η / dim ξ, P_up[η→ξ] = dim ξ / (n · dim η) and P = P_down · P_up,
    each multiplied by the branching multiplicity.
    """
    if n < 1:
        raise DomainError(f"level matrices need n ≥ 1, got {n}")
    upper = tuple(spin_vertices(n))
    lower = tuple(spin_vertices(n - 1))
    dims_up = [dim_spin(x) for x in upper]
    dims_low = [dim_spin(y) for y in lower]
    mult = [[branching_multiplicity(x, y) for y in lower] for x in upper]
    down = tuple(
        tuple(Fraction(mult[i][j] * dims_low[j], dims_up[i]) for j in range(len(lower)))
        for i in range(len(upper))
    )
    up = tuple(
        tuple(Fraction(mult[i][j] * dims_up[i], n * dims_low[j]) for i in range(len(upper)))
        for j in range(len(lower))
    )
    return LevelMatrices(n, upper, lower, down, up, _matmul(down, up))


@dataclass(frozen=True)
class SpinMeasure:
    """A probability measure on the spin vertices of one level."""

    n: int
    weights: Tuple[Tuple[NazarovLabel, Fraction], ...]

    def mass(self, label: NazarovLabel) -> Fraction:
        for other, w in self.weights:
            if other == label:
                return w
        return Fraction(0)

    def labels(self) -> List[NazarovLabel]:
        return [label for label, _ in self.weights]

    def vector(self, order: Sequence[NazarovLabel]) -> List[Fraction]:
        return [self.mass(label) for label in order]

    def total(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def to_rows(self) -> List[Dict[str, str]]:
        return [
            {"label": str(label), "mass": str(w), "mass_decimal": f"{float(w):.12g}"}
            for label, w in self.weights
        ]


def plancherel_spin(n: int) -> SpinMeasure:
    """M({ξ}) = dim(ξ)² / n!."""
    total = factorial(n)
    return SpinMeasure(n, tuple((x, Fraction(dim_spin(x) ** 2, total)) for x in spin_vertices(n)))


def uniform_spin_measure(n: int) -> SpinMeasure:
    """1/|SP_n| on each λ ∈ SP^+ and 1/(2|SP_n|) on each of (λ, ±1) for λ ∈ SP^−."""
    count = count_strict_partitions(n)
    return SpinMeasure(
        n,
        tuple(
            (x, Fraction(1, 2 * count) if x.is_split else Fraction(1, count))
            for x in spin_vertices(n)
        ),
    )


def _rows_stochastic(matrix: Matrix) -> bool:
    return all(sum(row) == 1 and min(row) >= 0 for row in matrix)


def branching_checks(n: int) -> Dict[str, bool]:
    """Exact identities of the level n − 1 → n block, by name."""
    matrices = level_matrices(n)
    dims_up = [dim_spin(x) for x in matrices.upper]
    dims_low = [dim_spin(y) for y in matrices.lower]
    mult = [[branching_multiplicity(x, y) for y in matrices.lower] for x in matrices.upper]
    upper_plancherel = plancherel_spin(n).vector(matrices.upper)
    lower_plancherel = plancherel_spin(n - 1).vector(matrices.lower)
    size = len(matrices.upper)
    chain = matrices.chain
    return {
        "restriction_dimension": all(
            dims_up[i] == sum(m * d for m, d in zip(mult[i], dims_low)) for i in range(size)
        ),
        "induction_dimension": all(
            n * dims_low[j] == sum(mult[i][j] * dims_up[i] for i in range(size))
            for j in range(len(matrices.lower))
        ),
        "down_stochastic": _rows_stochastic(matrices.down),
        "up_stochastic": _rows_stochastic(matrices.up),
        "chain_stochastic": _rows_stochastic(chain),
        "detailed_balance": all(
            upper_plancherel[i] * chain[i][j] == upper_plancherel[j] * chain[j][i]
            for i in range(size)
            for j in range(size)
        ),
        "up_invariance": all(
            sum((lower_plancherel[j] * matrices.up[j][i] for j in range(len(matrices.lower))), Fraction(0))
            == upper_plancherel[i]
            for i in range(size)
        ),
        "plancherel_total": sum(d * d for d in dims_up) == factorial(n),
    }


def schur_projection(n: int) -> Dict[Tuple[StrictPartition, StrictPartition], Tuple[Fraction, Fraction]]:
    """Edges of the Schur graph (signs merged): (μ, λ) ↦ (summed down weight, summed up weight)."""
    matrices = level_matrices(n)
    edges: Dict[Tuple[StrictPartition, StrictPartition], List[Fraction]] = {}
    for i, x in enumerate(matrices.upper):
        for j, y in enumerate(matrices.lower):
            if matrices.down[i][j]:
                key = (y.partition, x.partition)
                entry = edges.setdefault(key, [Fraction(0), Fraction(0)])
                entry[0] += matrices.down[i][j]
                entry[1] += matrices.up[j][i]
    return {key: (w[0], w[1]) for key, w in edges.items()}


def graph_edges(n: int) -> List[Dict[str, str]]:
    """Edge list rows (level, λ, γ, λ', γ', weight_down, weight_up) between levels n − 1 and n."""
    matrices = level_matrices(n)
    rows = []
    for i, x in enumerate(matrices.upper):
        for j, y in enumerate(matrices.lower):
            if matrices.down[i][j]:
                rows.append(
                    {
                        "level": str(n),
                        "lambda": str(x.partition),
                        "gamma": str(x.gamma),
                        "lambda_lower": str(y.partition),
                        "gamma_lower": str(y.gamma),
                        "weight_down": str(matrices.down[i][j]),
                        "weight_up": str(matrices.up[j][i]),
                    }
                )
    return rows


def _up_targets(label: NazarovLabel, weight_of) -> List[Tuple[NazarovLabel, object]]:
    targets = []
    for mu, c in addable_boxes(label.partition):
        w = weight_of(c)
        if c == 0:
            targets.append((NazarovLabel(mu, label.gamma), w))
        elif not mu.is_even:
            targets.append((NazarovLabel(mu, 1), w / 2))
            targets.append((NazarovLabel(mu, -1), w / 2))
        else:
            targets.append((NazarovLabel(mu, 1), w))
    return targets


def _down_targets(label: NazarovLabel, weight_of) -> List[Tuple[NazarovLabel, object]]:
    targets = []
    for eta, c in removable_boxes(label.partition):
        w = weight_of(c)
        if c == 0:
            targets.append((NazarovLabel(eta, label.gamma), w))
        elif not eta.is_even:
            targets.append((NazarovLabel(eta, 1), w / 2))
            targets.append((NazarovLabel(eta, -1), w / 2))
        else:
            targets.append((NazarovLabel(eta, 1), w))
    return targets


def up_weights(label: NazarovLabel) -> Dict[NazarovLabel, Fraction]:
    """Exact up-step law read off the transition measure of D(λ)."""
    measure = transition_measure(label.partition)
    return dict(_up_targets(label, lambda c: pair_mass(measure, c)))


def down_weights(label: NazarovLabel) -> Dict[NazarovLabel, Fraction]:
    """Exact down-step law read off the co-transition measure of D(λ)."""
    if label.n == 0:
        return {}
    measure = cotransition_measure(label.partition)
    return dict(_down_targets(label, lambda c: copair_mass(measure, c)))


def _float_residues(points: np.ndarray, poles: np.ndarray) -> np.ndarray:
    """Π(p − poles) / Π_{others}(p − points) for every p in points, as ratios of equal-length factors."""
    diff_points = points[:, None] - points[None, :]
    np.fill_diagonal(diff_points, 1.0)
    diff_poles = points[:, None] - poles[None, :]
    if len(poles) + 1 == len(points):
        diff_poles = np.hstack([diff_poles, np.ones((len(points), 1))])
    elif len(poles) == len(points) + 1:
        diff_points = np.hstack([diff_points, np.ones((len(points), 1))])
    return np.prod(diff_poles / diff_points, axis=1)


class ProfileWeights:
    """Float transition and co-transition weights of one D(λ), from its profile coordinates."""

    def __init__(self, lam: StrictPartition):
        valleys, peaks = profile_coordinates(lam)
        self.valleys = np.array(valleys, dtype=float)
        self.peaks = np.array(peaks, dtype=float)
        self._up = dict(zip(valleys, _float_residues(self.valleys, self.peaks)))
        if peaks:
            co = -_float_residues(self.peaks, self.valleys)
            self._down = dict(zip(peaks, co / co.sum()))
        else:
            self._down = {}

    def up(self, c: int) -> float:
        return self._up.get(c, 0.0) + (self._up.get(-c - 1, 0.0) if c > 0 else 0.0)

    def down(self, c: int) -> float:
        if c == 0:
            return self._down.get(-1, 0.0)
        return self._down.get(c, 0.0) + self._down.get(-c - 1, 0.0)


def _choose(targets: List[Tuple[NazarovLabel, float]], rng: np.random.Generator) -> NazarovLabel:
    probs = np.array([w for _, w in targets], dtype=float)
    probs = np.clip(probs, 0.0, None)
    return targets[rng.choice(len(targets), p=probs / probs.sum())][0]


def sample_up(label: NazarovLabel, rng: np.random.Generator) -> NazarovLabel:
    weights = ProfileWeights(label.partition)
    return _choose(_up_targets(label, weights.up), rng)


def sample_down(label: NazarovLabel, rng: np.random.Generator) -> NazarovLabel:
    if label.n == 0:
        raise DomainError("the empty partition has no down-step")
    weights = ProfileWeights(label.partition)
    return _choose(_down_targets(label, weights.down), rng)


def sample_plancherel(n: int, rng: np.random.Generator) -> NazarovLabel:
    """Grow n boxes from ∅ with up-steps; the result has the spin Plancherel law."""
    label = NazarovLabel(EMPTY, 1)
    for _ in range(n):
        label = sample_up(label, rng)
    return label
