# spin_limit_shapes/spcore.py

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .errors import HookFormulaError, PartitionError, SizeLimitError

Cell = Tuple[int, int]

# Exhaustive tableau enumeration is exponential in n.
SYT_SEARCH_LIMIT = 14


@dataclass(frozen=True, order=True)
class StrictPartition:
    """A strict partition: strictly decreasing positive parts."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise PartitionError(f"parts must be strictly decreasing: {parts}")

    @classmethod
    def parse(cls, text: str) -> "StrictPartition":
        """Parse "3,1", "(3,1)", "3 1" or "" / "empty" / "∅"."""
        cleaned = text.strip().strip("()[]").replace(" ", ",")
        if cleaned in ("", "empty", "∅"):
            return cls(())
        try:
            return cls(tuple(int(tok) for tok in cleaned.split(",") if tok))
        except ValueError as exc:
            raise PartitionError(f"cannot parse strict partition {text!r}") from exc

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def is_even(self) -> bool:
        """True for SP_n^+ (n − l even), False for SP_n^−."""
        return (self.n - self.length) % 2 == 0

    @property
    def sign(self) -> str:
        return "+" if self.is_even else "-"

    @property
    def last(self) -> int:
        return self.parts[-1] if self.parts else 0

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def to_dict(self) -> Dict:
        return {"parts": list(self.parts), "n": self.n, "sign": self.sign}


EMPTY = StrictPartition(())


@lru_cache(maxsize=None)
def _strict_parts(n: int, max_part: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    found = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _strict_parts(n - first, first - 1):
            found.append((first,) + rest)
    return tuple(found)


def enumerate_strict_partitions(n: int) -> List[StrictPartition]:
    """All strict partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise PartitionError(f"n must be nonnegative, got {n}")
    return [StrictPartition(parts) for parts in _strict_parts(n, n)]


@lru_cache(maxsize=None)
def _strict_count_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    # table[m][k] = number of strict partitions of k with all parts <= m
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for m in range(n + 1):
        table[m][0] = 1
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            table[m][k] = table[m - 1][k] + (table[m - 1][k - m] if k >= m else 0)
    return tuple(tuple(row) for row in table)


def count_strict_partitions(n: int) -> int:
    return _strict_count_table(n)[n][n]


def sample_uniform_strict(n: int, rng: np.random.Generator) -> StrictPartition:
    """Draw λ uniformly from SP_n by walking the counting table from the largest part down."""
    table = _strict_count_table(n)
    parts = []
    remaining, m = n, n
    while remaining > 0:
        with_m = table[m - 1][remaining - m] if remaining >= m else 0
        if with_m and rng.random() * table[m][remaining] < with_m:
            parts.append(m)
            remaining -= m
        m -= 1
    return StrictPartition(tuple(parts))


def shifted_cells(lam: StrictPartition) -> FrozenSet[Cell]:
    """Cells (i, j), 1-based, of the shifted diagram S(λ); row i starts at column i."""
    return frozenset(
        (i, j)
        for i, part in enumerate(lam.parts, start=1)
        for j in range(i, i + part)
    )


def doubled_cells(lam: StrictPartition) -> FrozenSet[Cell]:
    """
    Cells of D(λ), the Young diagram with Frobenius coordinates
    (λ_1−1, …, λ_l−1 | λ_1, …, λ_l).

    The cells with content j − i ≥ 0 form S(λ); the rest is the transpose of S(λ)
    moved one row down.
    """
    shifted = shifted_cells(lam)
    return shifted | frozenset((j + 1, i) for (i, j) in shifted)


def _row_lengths(cells: FrozenSet[Cell]) -> List[int]:
    if not cells:
        return []
    n_rows = max(i for i, _ in cells)
    rows = [0] * n_rows
    for i, _ in cells:
        rows[i - 1] += 1
    return rows


def _column_lengths(cells: FrozenSet[Cell]) -> List[int]:
    return _row_lengths(frozenset((j, i) for (i, j) in cells))


@dataclass(frozen=True)
class DoubledDiagram:
    """Profile data of D(λ): interlacing integer valleys and peaks (Russian convention)."""

    source: StrictPartition
    valleys: Tuple[int, ...]
    peaks: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.source.n

    def interlaces(self) -> bool:
        if len(self.valleys) != len(self.peaks) + 1:
            return False
        merged = [None] * (len(self.valleys) + len(self.peaks))
        merged[::2] = self.valleys
        merged[1::2] = self.peaks
        return all(a < b for a, b in zip(merged, merged[1:]))

    def is_shift_symmetric(self) -> bool:
        """Valleys minus an optional 0, and peaks minus an optional −1, are closed under x ↦ −x−1."""
        valleys = set(self.valleys) - {0}
        peaks = set(self.peaks) - {-1}
        return valleys == {-x - 1 for x in valleys} and peaks == {-y - 1 for y in peaks}

    def value(self, x) -> Fraction:
        """ω(x) = Σ|x − valley| − Σ|x − peak|, which equals |x| outside the support."""
        x = Fraction(x)
        return sum((abs(x - v) for v in self.valleys), Fraction(0)) - sum(
            (abs(x - p) for p in self.peaks), Fraction(0)
        )

    def area(self) -> Fraction:
        """Exact area between the profile and |x| (4n: each cell has area 2)."""
        points = sorted(set(self.valleys) | set(self.peaks) | {0})
        total = Fraction(0)
        for a, b in zip(points, points[1:]):
            fa = self.value(a) - abs(a)
            fb = self.value(b) - abs(b)
            total += (fa + fb) * (b - a) / 2
        return total

    def to_dict(self) -> Dict:
        return {
            "parts": list(self.source.parts),
            "valleys": list(self.valleys),
            "peaks": list(self.peaks),
        }


def doubled_profile(lam: StrictPartition) -> DoubledDiagram:
    """
    Walk the boundary of the explicit cell set of D(λ) from the bottom of the first
    column to the end of the first row; a north step followed by an east step is a
    valley, an east step followed by a north step is a peak (x = column − row).
    """
    rows = _row_lengths(doubled_cells(lam))
    if any(a < b for a, b in zip(rows, rows[1:])):
        raise PartitionError(f"doubled diagram of {lam} is not a Young diagram: {rows}")

    steps = ["N"]
    col = 0
    for i in range(len(rows), 0, -1):
        steps.extend("E" * (rows[i - 1] - col))
        col = rows[i - 1]
        steps.append("N")
    steps.append("E")

    valleys, peaks = [], []
    # the leading virtual north step arrives at (len(rows), 0)
    row, col = len(rows) + 1, 0
    for prev, nxt in zip(steps, steps[1:]):
        if prev == "E":
            col += 1
        else:
            row -= 1
        if (prev, nxt) == ("N", "E"):
            valleys.append(col - row)
        elif (prev, nxt) == ("E", "N"):
            peaks.append(col - row)
    return DoubledDiagram(lam, tuple(valleys), tuple(peaks))


def profile_value(diagram: DoubledDiagram, x) -> Fraction:
    return diagram.value(x)


def profile_values(lam: StrictPartition, xs: np.ndarray, rescaled: bool = True) -> np.ndarray:
    """ω of D(λ) (or of D(λ)^{√(2n)}) on a float grid, by linear interpolation between corners."""
    valleys, peaks = profile_coordinates(lam)
    diagram = DoubledDiagram(lam, valleys, peaks)
    corners = sorted(valleys + peaks)
    heights = np.array([float(diagram.value(c)) for c in corners])
    scale = np.sqrt(2 * lam.n) if rescaled and lam.n else 1.0
    points = np.asarray(xs, dtype=float) * scale
    inside = np.interp(points, corners, heights)
    outside = (points < corners[0]) | (points > corners[-1])
    return np.where(outside, np.abs(points), inside) / scale


def profile_coordinates(lam: StrictPartition) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Valleys and peaks of D(λ) straight from the parts (no cell set)."""
    valleys = []
    for _, c in addable_boxes(lam):
        valleys.append(c)
        if c > 0:
            valleys.append(-c - 1)
    peaks = []
    for _, c in removable_boxes(lam):
        if c > 0:
            peaks.extend((c, -c - 1))
        else:
            peaks.append(-1)
    return tuple(sorted(valleys)), tuple(sorted(peaks))


def addable_boxes(lam: StrictPartition) -> List[Tuple[StrictPartition, int]]:
    """All μ with λ↗μ together with the content c(μ/λ), largest μ first."""
    parts = lam.parts
    found = []
    for i, part in enumerate(parts):
        if i == 0 or parts[i - 1] > part + 1:
            grown = parts[:i] + (part + 1,) + parts[i + 1 :]
            found.append((StrictPartition(grown), part))
    if not parts or parts[-1] >= 2:
        found.append((StrictPartition(parts + (1,)), 0))
    return found


def removable_boxes(lam: StrictPartition) -> List[Tuple[StrictPartition, int]]:
    """All μ with μ↗λ together with the content c(λ/μ)."""
    parts = lam.parts
    found = []
    for i, part in enumerate(parts):
        following = parts[i + 1] if i + 1 < len(parts) else 0
        if i == len(parts) - 1 and part == 1:
            found.append((StrictPartition(parts[:-1]), 0))
        elif part - 1 > following:
            shrunk = parts[:i] + (part - 1,) + parts[i + 1 :]
            found.append((StrictPartition(shrunk), part - 1))
    return found


def addable_boxes_bruteforce(lam: StrictPartition) -> List[Tuple[StrictPartition, int]]:
    """Containment test against every strict partition of n + 1."""
    found = []
    for mu in enumerate_strict_partitions(lam.n + 1):
        if mu.length < lam.length:
            continue
        padded = lam.parts + (0,) * (mu.length - lam.length)
        diffs = [m - p for m, p in zip(mu.parts, padded)]
        if all(d >= 0 for d in diffs) and sum(diffs) == 1:
            row = diffs.index(1)
            found.append((mu, mu.parts[row] - 1))
    return found


def count_syt_bruteforce(lam: StrictPartition, limit: int = SYT_SEARCH_LIMIT) -> int:
    """
    Count standard fillings of S(λ) by exhaustive enumeration.

    A filling grows one cell at a time; row i can take its next cell when the cell
    above it in row i−1 is already filled.
    """
    if lam.n > limit:
        raise SizeLimitError("count_syt_bruteforce size", lam.n, limit)
    parts = lam.parts
    filled = [0] * len(parts)

    def extend(placed: int) -> int:
        if placed == lam.n:
            return 1
        total = 0
        for i, part in enumerate(parts):
            if filled[i] == part:
                continue
            if i > 0 and filled[i - 1] < filled[i] + 2:
                continue
            filled[i] += 1
            total += extend(placed + 1)
            filled[i] -= 1
        return total

    return extend(0)


def hook_lengths(lam: StrictPartition) -> Dict[Cell, int]:
    """Hook lengths in D(λ) of its cells of negative content (the cells outside S(λ))."""
    cells = doubled_cells(lam)
    rows = _row_lengths(cells)
    cols = _column_lengths(cells)
    return {
        (i, j): (rows[i - 1] - j) + (cols[j - 1] - i) + 1
        for (i, j) in cells
        if j < i
    }


@lru_cache(maxsize=4096)
def g_hook(lam: StrictPartition) -> int:
    """Number of standard tableaux of S(λ): n! over the product of hooks off S(λ)."""
    product = 1
    for hook in hook_lengths(lam).values():
        product *= hook
    quotient, remainder = divmod(factorial(lam.n), product)
    if remainder:
        raise HookFormulaError(f"hook product {product} does not divide {lam.n}! for {lam}")
    return quotient


def count_paths(n: int) -> Dict[StrictPartition, int]:
    """Number of growth paths ∅ ↗ … ↗ λ for every λ ∈ SP_n."""
    level: Dict[StrictPartition, int] = {EMPTY: 1}
    for _ in range(n):
        nxt: Dict[StrictPartition, int] = {}
        for lam, count in level.items():
            for mu, _ in addable_boxes(lam):
                nxt[mu] = nxt.get(mu, 0) + count
        level = nxt
    return level


def _check_partition(sigma: Sequence[int]) -> Tuple[int, ...]:
    sigma = tuple(int(p) for p in sigma)
    if any(p < 1 for p in sigma) or any(a < b for a, b in zip(sigma, sigma[1:])):
        raise PartitionError(f"not a partition: {sigma}")
    return sigma


def sigma_circle(sigma: Sequence[int]) -> Tuple[int, ...]:
    """(2^{m_2} 3^{m_3} 4^{m_4} …) ↦ (2^{m_3} 3^{m_4} …): drop rows of length 2, shorten the rest."""
    sigma = _check_partition(sigma)
    if 1 in sigma:
        raise PartitionError(f"σ must have no parts of length 1: {sigma}")
    return tuple(p - 1 for p in sigma if p >= 3)


def excess_identity(sigma: Sequence[int]) -> Tuple[int, Fraction]:
    """
    For σ ⊢ 2k with even rows only, return (|σ| − l(σ), k + (|σ°| − l(σ°))/2).

    The two values agree for every such σ.
    """
    sigma = _check_partition(sigma)
    if any(p % 2 for p in sigma):
        raise PartitionError(f"σ must have even rows only: {sigma}")
    reduced = sigma_circle(sigma)
    k = sum(sigma) // 2
    lhs = sum(sigma) - len(sigma)
    rhs = k + Fraction(sum(reduced) - len(reduced), 2)
    return lhs, rhs
