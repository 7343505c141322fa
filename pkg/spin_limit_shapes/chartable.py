# spin_limit_shapes/chartable.py

"""
Character tables of S̃_n (n ≤ 6) from class-sum multiplication constants, and the
checks that need them: the Jucys–Murphy trace formula, the Res-Ind eigenvector
property and the uniform-ensemble character average.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .branching import NazarovLabel, branching_multiplicity, dim_spin, level_matrices, spin_vertices
from .curves import vershik_cumulant
from .errors import CharacterTableError, DomainError, SizeLimitError
from .measures import jm_moment_rhs
from .spcore import count_strict_partitions
from .twisted import (
    TwistedClass,
    TwistedElement,
    center_expand,
    central,
    class_index,
    conjugacy_classes,
    cycle,
    cycle_type_element,
    identity,
    inverse,
    jm_power_restricted,
)
from .ui_utils import print_warning

MAX_TABLE_DEGREE = 6
TOLERANCE = 1e-9


@dataclass
class CharacterTable:
    """Rows are irreducible characters, columns are the classes of `conjugacy_classes(n)`."""

    n: int
    classes: Tuple[TwistedClass, ...]
    values: np.ndarray
    dims: List[int]
    spin: List[bool]
    labels: List[Optional[NazarovLabel]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return 2 * factorial(self.n)

    def class_position(self, g: TwistedElement) -> int:
        return class_index(self.n)[g]

    def value(self, row: int, g: TwistedElement) -> complex:
        return complex(self.values[row, self.class_position(g)])

    def row_of(self, label: NazarovLabel) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise CharacterTableError(f"no row carries the label {label}") from None

    def normalized(self, label: NazarovLabel, g: TwistedElement) -> complex:
        """χ^ξ(g) / dim ξ."""
        row = self.row_of(label)
        return self.value(row, g) / self.dims[row]

    def spin_rows(self) -> List[int]:
        return [i for i, s in enumerate(self.spin) if s]

    def orthogonality_error(self) -> float:
        sizes = np.array([c.size for c in self.classes], dtype=float)
        gram = self.values.conj().T @ self.values
        expected = np.diag(self.order / sizes)
        return float(np.max(np.abs(gram - expected)))

    def spin_vanishing_error(self) -> float:
        """Largest |χ| of a spin row on a class that is not split."""
        worst = 0.0
        for j, cls in enumerate(self.classes):
            if not cls.split:
                for i in self.spin_rows():
                    worst = max(worst, abs(self.values[i, j]))
        return worst

    def to_rows(self) -> List[Dict[str, str]]:
        rows = []
        for i in range(len(self.dims)):
            label = self.labels[i] if i < len(self.labels) else None
            row = {
                "row": str(i),
                "kind": "spin" if self.spin[i] else "ordinary",
                "label": str(label) if label is not None else "",
                "dim": str(self.dims[i]),
            }
            for j, cls in enumerate(self.classes):
                v = complex(self.values[i, j])
                row[cls.label] = f"{v.real:.12f}{v.imag:+.12f}i"
            rows.append(row)
        return rows


def class_constants(n: int) -> np.ndarray:
    """a[i, j, k] = #{(x, y) ∈ C_i × C_j : xy = g_k} for the representative g_k of C_k."""
    classes = conjugacy_classes(n)
    index = class_index(n)
    count = len(classes)
    constants = np.zeros((count, count, count), dtype=np.int64)
    for k, target in enumerate(classes):
        g = target.representative
        for x, i in index.items():
            y = inverse(x) * g
            constants[i, index[y], k] += 1
    return constants


def character_table(n: int, rng: Optional[np.random.Generator] = None, attempts: int = 8) -> CharacterTable:
    """
    Diagonalize a random combination of the class matrices (M_i)_{jk} = a_{ij}^k.

    Each eigenvector, scaled to 1 at the identity class, holds the central character
    ω_k = |C_k| χ(g_k) / dim.
    """
    if n > MAX_TABLE_DEGREE:
        raise SizeLimitError("character table degree", n, MAX_TABLE_DEGREE)
    rng = rng or np.random.default_rng(0)
    classes = conjugacy_classes(n)
    sizes = np.array([c.size for c in classes], dtype=float)
    order = 2 * factorial(n)
    e_pos = class_index(n)[identity(n)]
    z_pos = class_index(n)[central(n)]
    constants = class_constants(n).astype(float)

    for attempt in range(attempts):
        weights = rng.normal(size=len(classes))
        combined = np.tensordot(weights, constants, axes=1)
        eigvals, eigvecs = np.linalg.eig(combined)
        gaps = np.abs(eigvals[:, None] - eigvals[None, :]) + np.eye(len(eigvals))
        if gaps.min() > 1e-6:
            break
        print_warning(f"degenerate class-matrix spectrum at n={n}, retry {attempt + 1}")
    else:
        raise CharacterTableError(f"no separating combination found after {attempts} attempts")

    values, dims, spin = [], [], []
    for col in range(eigvecs.shape[1]):
        omega = eigvecs[:, col] / eigvecs[e_pos, col]
        dim = np.sqrt(order / np.sum(np.abs(omega) ** 2 / sizes))
        chi = omega * dim / sizes
        values.append(chi)
        dims.append(int(round(dim)))
        spin.append(bool(np.real(chi[z_pos]) < 0))

    ordering = sorted(range(len(dims)), key=lambda i: (not spin[i], -dims[i]))
    table = CharacterTable(
        n,
        classes,
        np.array([values[i] for i in ordering]),
        [dims[i] for i in ordering],
        [spin[i] for i in ordering],
    )
    if sum(d * d for d in table.dims) != order:
        raise CharacterTableError(f"Σ dim² = {sum(d * d for d in table.dims)} ≠ {order}")
    return table


def _embed(g: TwistedElement) -> TwistedElement:
    return TwistedElement(g.perm + (g.n + 1,), g.z)


def restriction_multiplicities(upper: CharacterTable, lower: CharacterTable) -> np.ndarray:
    """⟨Res χ^ξ, χ^η⟩ for every pair of rows."""
    positions = [upper.class_position(_embed(c.representative)) for c in lower.classes]
    sizes = np.array([c.size for c in lower.classes], dtype=float)
    restricted = upper.values[:, positions]
    return np.real(restricted @ (sizes[:, None] * lower.values.conj().T)) / lower.order


def _label_rows(table: CharacterTable, lower: Optional[CharacterTable]) -> None:
    labels: List[Optional[NazarovLabel]] = [None] * len(table.dims)
    expected = {x: dim_spin(x) for x in spin_vertices(table.n)}
    if lower is None:
        for i in table.spin_rows():
            labels[i] = spin_vertices(table.n)[0]
        table.labels = labels
        return

    mult = restriction_multiplicities(table, lower)
    lower_spin = lower.spin_rows()
    used = set()
    for i in table.spin_rows():
        below = frozenset(lower.labels[j] for j in lower_spin if mult[i, j] > 0.5)
        candidates = [
            x
            for x in sorted(expected)
            if x not in used
            and expected[x] == table.dims[i]
            and below == frozenset(y for y in spin_vertices(table.n - 1) if branching_multiplicity(x, y))
        ]
        if not candidates:
            raise CharacterTableError(f"spin row {i} of S̃_{table.n} matches no label")
        labels[i] = candidates[0]
        used.add(candidates[0])
    table.labels = labels


@lru_cache(maxsize=None)
def labeled_table(n: int) -> CharacterTable:
    """Character table whose spin rows carry Nazarov labels, matched level by level from n = 1."""
    if n < 1:
        raise DomainError(f"character tables start at n = 1, got {n}")
    lower = labeled_table(n - 1) if n > 1 else None
    table = character_table(n)
    _label_rows(table, lower)
    return table


@dataclass(frozen=True)
class JMTraceRow:
    label: NazarovLabel
    lhs: float
    rhs: Fraction

    @property
    def deviation(self) -> float:
        return abs(self.lhs - float(self.rhs))


def verify_jm_trace(n: int, k: int) -> List[JMTraceRow]:
    """χ^ξ(Ẽ_n J̃_{n+1}^{2k}) / dim ξ against Σ (c(c+1)/2)^k m_{D(λ)}({c, −c−1}) for each spin label."""
    table = labeled_table(n)
    coefficients = center_expand(jm_power_restricted(n, k))
    rows = []
    for label in spin_vertices(n):
        row = table.row_of(label)
        total = 0j
        for cls, alpha in coefficients.items():
            total += float(alpha) * cls.size * table.value(row, cls.representative)
        if abs(total.imag) > 1e-6 * max(1.0, abs(total)):
            raise CharacterTableError(f"non-real trace {total} for {label}")
        rows.append(JMTraceRow(label, total.real / table.dims[row], jm_moment_rhs(label.partition, k)))
    return rows


def class_scalar_check(n: int) -> List[Tuple[NazarovLabel, float, int]]:
    """
    n(n−1)(n−2)/3 · χ([1 2 3]) / dim against the content sum
    Σ_i C(λ_i + 1, 3) − n(n−1)/2 for every spin label.
    """
    if n < 3:
        raise DomainError(f"a 3-cycle needs n ≥ 3, got {n}")
    table = labeled_table(n)
    three = cycle([1, 2, 3], n)
    out = []
    for label in spin_vertices(n):
        lhs = n * (n - 1) * (n - 2) / 3 * table.normalized(label, three).real
        rhs = sum(comb(part + 1, 3) for part in label.partition) - n * (n - 1) // 2
        out.append((label, lhs, rhs))
    return out


def res_ind_eigen_error(n: int, rho: Sequence[int]) -> float:
    """max_ξ |(P f)(ξ) − (1 − |ρ|/n) f(ξ)| for f(ξ) = χ^ξ(x_ρ) / dim ξ."""
    rho = tuple(rho)
    if sum(rho) > n - 1:
        raise DomainError(f"cycle type {rho} must fit in {n - 1} letters")
    table = labeled_table(n)
    matrices = level_matrices(n)
    x = cycle_type_element(rho, n)
    f = np.array([table.normalized(label, x) for label in matrices.upper])
    chain = matrices.as_array("chain")
    return float(np.max(np.abs(chain @ f - (1 - sum(rho) / n) * f)))


@dataclass(frozen=True)
class EnsembleAverage:
    n: int
    k: int
    value: float
    scaled: float
    limit_target: Fraction


def uniform_ensemble_sum(n: int, k: int) -> EnsembleAverage:
    """(1/|SP_n|) Σ_λ χ^{(λ,+1)}([1 ⋯ 2k−1]) / dim, scaled by n^{k−1}, next to its conjectured limit."""
    length = 2 * k - 1
    if k < 1 or length > n:
        raise DomainError(f"a {length}-cycle does not fit in S̃_{n}")
    table = labeled_table(n)
    x = cycle(range(1, length + 1), n)
    total = 0.0
    for label in spin_vertices(n):
        if label.gamma == 1:
            total += table.normalized(label, x).real
    value = total / count_strict_partitions(n)
    return EnsembleAverage(n, k, value, value * n ** (k - 1), vershik_cumulant(2 * k))
