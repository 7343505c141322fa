# spin_limit_shapes/twisted.py

"""
Exact arithmetic in the double cover S̃_n and its group algebra.

Elements are pairs (σ, ε) standing for z^ε L(σ), where L is the canonical lift from
`clifford`; products pick up the cocycle sign. Group-algebra elements are
finitely supported maps to Fractions.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import clifford
from .clifford import Perm, compose, identity_perm, inverse_perm
from .errors import DomainError, NotCentralError, SizeLimitError

# |S̃_7| = 10080 elements is the largest group we expand in full.
MAX_GROUP_DEGREE = 7


@dataclass(frozen=True, order=True)
class TwistedElement:
    perm: Perm
    z: int = 0

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "TwistedElement") -> "TwistedElement":
        return multiply(self, other)

    def project(self) -> Perm:
        """Φ(σ, ε) = σ."""
        return self.perm

    def fixes(self, letter: int) -> bool:
        return self.perm[letter - 1] == letter

    def __str__(self) -> str:
        return f"{'z·' if self.z else ''}{cycle_notation(self.perm)}"


def cycle_notation(perm: Perm) -> str:
    seen, cycles = set(), []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def identity(n: int) -> TwistedElement:
    return TwistedElement(identity_perm(n), 0)


def central(n: int) -> TwistedElement:
    """The central element z."""
    return TwistedElement(identity_perm(n), 1)


def generator(i: int, n: int) -> TwistedElement:
    if not 1 <= i < n:
        raise DomainError(f"r_{i} is not a generator of S̃_{n}")
    return TwistedElement(clifford.times_simple(identity_perm(n), i), 0)


def multiply(a: TwistedElement, b: TwistedElement) -> TwistedElement:
    if a.n != b.n:
        raise DomainError(f"elements of S̃_{a.n} and S̃_{b.n} cannot be multiplied")
    return TwistedElement(compose(a.perm, b.perm), a.z ^ b.z ^ clifford.cocycle(a.perm, b.perm))


def inverse(a: TwistedElement) -> TwistedElement:
    inv = inverse_perm(a.perm)
    return TwistedElement(inv, a.z ^ clifford.cocycle(a.perm, inv))


def word(letters: Sequence[int], n: int) -> TwistedElement:
    """r_{i_1} r_{i_2} ⋯ r_{i_k}."""
    result = identity(n)
    for i in letters:
        result = result * generator(i, n)
    return result


def transposition(i: int, j: int, n: int) -> TwistedElement:
    """[i j] = z^{j−i−1} r_{j−1}⋯r_{i+1} r_i r_{i+1}⋯r_{j−1} for i < j, and [j i] = z[i j]."""
    if i == j:
        raise DomainError(f"transposition needs distinct letters, got {i} twice")
    if i > j:
        t = transposition(j, i, n)
        return TwistedElement(t.perm, t.z ^ 1)
    letters = list(range(j - 1, i, -1)) + [i] + list(range(i + 1, j))
    t = word(letters, n)
    return TwistedElement(t.perm, t.z ^ ((j - i - 1) % 2))


def cycle(letters: Sequence[int], n: int) -> TwistedElement:
    """[i_1 ⋯ i_r] = [i_{r−1} i_r] ⋯ [i_2 i_r][i_1 i_r]."""
    letters = list(letters)
    if len(set(letters)) != len(letters):
        raise DomainError(f"cycle letters must be distinct: {letters}")
    if len(letters) < 2:
        return identity(n)
    last = letters[-1]
    result = identity(n)
    for i in reversed(letters[:-1]):
        result = result * transposition(i, last, n)
    return result


def cycle_type_element(rho: Sequence[int], n: int) -> TwistedElement:
    """Product of cycles on consecutive letters with lengths ρ_1, ρ_2, …."""
    if sum(rho) > n:
        raise DomainError(f"cycle type {tuple(rho)} does not fit in {n} letters")
    result, start = identity(n), 1
    for length in rho:
        result = result * cycle(range(start, start + length), n)
        start += length
    return result


class AlgebraElement:
    """A rational combination of elements of one S̃_n."""

    def __init__(self, n: int, terms: Optional[Mapping[TwistedElement, Fraction]] = None):
        self.n = n
        self.terms: Dict[TwistedElement, Fraction] = {}
        for g, c in (terms or {}).items():
            if c:
                self.terms[g] = Fraction(c)

    @classmethod
    def of(cls, g: TwistedElement, coefficient=1) -> "AlgebraElement":
        return cls(g.n, {g: Fraction(coefficient)})

    @classmethod
    def scalar(cls, n: int, value) -> "AlgebraElement":
        return cls(n, {identity(n): Fraction(value)})

    @classmethod
    def sum_of(cls, n: int, elements: Iterable[TwistedElement], coefficient=1) -> "AlgebraElement":
        out: Dict[TwistedElement, Fraction] = {}
        for g in elements:
            out[g] = out.get(g, Fraction(0)) + Fraction(coefficient)
        return cls(n, out)

    def coefficient(self, g: TwistedElement) -> Fraction:
        return self.terms.get(g, Fraction(0))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, Fraction(0)) + c
        return AlgebraElement(self.n, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.n, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            factor = Fraction(other)
            return AlgebraElement(self.n, {g: c * factor for g, c in self.terms.items()})
        out: Dict[TwistedElement, Fraction] = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                gh = g * h
                out[gh] = out.get(gh, Fraction(0)) + a * b
        return AlgebraElement(self.n, out)

    __rmul__ = __mul__

    def power(self, k: int) -> "AlgebraElement":
        result = AlgebraElement.scalar(self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def conjugate_by(self, g: TwistedElement) -> "AlgebraElement":
        g_inv = inverse(g)
        return AlgebraElement(self.n, {g * x * g_inv: c for x, c in self.terms.items()})

    def project(self) -> Dict[Perm, Fraction]:
        """Φ extended linearly to the group algebra of S_n."""
        out: Dict[Perm, Fraction] = {}
        for g, c in self.terms.items():
            out[g.perm] = out.get(g.perm, Fraction(0)) + c
        return {p: c for p, c in out.items() if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.n == other.n and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, support={len(self.terms)})"


def jm(k: int, n: int) -> AlgebraElement:
    """J̃_k = [1 k] + [2 k] + ⋯ + [k−1 k]; J̃_1 = 0."""
    if not 1 <= k <= n:
        raise DomainError(f"J̃_{k} is not defined in S̃_{n}")
    return AlgebraElement.sum_of(n, (transposition(i, k, n) for i in range(1, k)))


def restrict(a: AlgebraElement) -> AlgebraElement:
    """Ẽ_n: keep the terms of S̃_{n+1} that fix the letter n + 1, read them in S̃_n."""
    n = a.n - 1
    return AlgebraElement(
        n, {TwistedElement(g.perm[:n], g.z): c for g, c in a.terms.items() if g.fixes(a.n)}
    )


def all_elements(n: int) -> List[TwistedElement]:
    if n > MAX_GROUP_DEGREE:
        raise SizeLimitError("double cover degree", n, MAX_GROUP_DEGREE)
    return [TwistedElement(p, z) for p in permutations(range(1, n + 1)) for z in (0, 1)]


def cycle_type(perm: Perm) -> Tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            length += 1
            x = perm[x - 1]
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@dataclass(frozen=True)
class TwistedClass:
    """A conjugacy class of S̃_n; `z_flag` is 1 for the class of z times the standard representative."""

    cycle_type: Tuple[int, ...]
    z_flag: int
    split: bool
    representative: TwistedElement
    elements: frozenset

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def rho(self) -> Tuple[int, ...]:
        """Cycle type without its fixed points."""
        return tuple(p for p in self.cycle_type if p > 1)

    @property
    def label(self) -> str:
        body = "(" + ",".join(map(str, self.cycle_type)) + ")"
        return f"z{body}" if self.z_flag else body


_CLASS_CACHE: Dict[int, Tuple[TwistedClass, ...]] = {}


def conjugacy_classes(n: int) -> Tuple[TwistedClass, ...]:
    """Orbits of S̃_n under conjugation by the generators, ordered by cycle type then z-flag."""
    if n in _CLASS_CACHE:
        return _CLASS_CACHE[n]
    gens = [generator(i, n) for i in range(1, n)]
    remaining = set(all_elements(n))
    orbits = []
    while remaining:
        seed = min(remaining)
        orbit, frontier = {seed}, [seed]
        while frontier:
            x = frontier.pop()
            for r in gens:
                y = r * x * r
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        remaining -= orbit
        orbits.append(frozenset(orbit))

    by_type: Dict[Tuple[int, ...], List[frozenset]] = {}
    for orbit in orbits:
        by_type.setdefault(cycle_type(next(iter(orbit)).perm), []).append(orbit)

    classes = []
    for ctype in sorted(by_type, reverse=True):
        standard = cycle_type_element([p for p in ctype if p > 1], n)
        for orbit in by_type[ctype]:
            rep = standard if standard in orbit else TwistedElement(standard.perm, standard.z ^ 1)
            classes.append(
                TwistedClass(ctype, rep.z ^ standard.z, len(by_type[ctype]) == 2, rep, orbit)
            )
    classes.sort(key=lambda c: (tuple(-p for p in c.cycle_type), c.z_flag))
    _CLASS_CACHE[n] = tuple(classes)
    return _CLASS_CACHE[n]


def class_index(n: int) -> Dict[TwistedElement, int]:
    return {g: k for k, cls in enumerate(conjugacy_classes(n)) for g in cls.elements}


def class_sum(cls: TwistedClass) -> AlgebraElement:
    return AlgebraElement.sum_of(cls.representative.n, cls.elements)


def is_central(a: AlgebraElement) -> bool:
    return all(a.conjugate_by(generator(i, a.n)) == a for i in range(1, a.n))


def center_expand(a: AlgebraElement) -> Dict[TwistedClass, Fraction]:
    """Coefficients α with a = Σ α_C A_C, where A_C is the class sum of C."""
    if not is_central(a):
        raise NotCentralError("element does not commute with every generator r_i")
    out = {}
    for cls in conjugacy_classes(a.n):
        coeff = a.coefficient(cls.representative)
        if any(a.coefficient(g) != coeff for g in cls.elements):
            raise NotCentralError(f"coefficients vary along the class {cls.label}")
        if coeff:
            out[cls] = coeff
    return out


def three_cycle_sum(m: int, n: int) -> AlgebraElement:
    """Ã_m = (1/3) Σ [i j k] over distinct i, j, k ≤ m, as an element of S̃_n."""
    triples = (t for t in permutations(range(1, m + 1), 3))
    return AlgebraElement.sum_of(n, (cycle(t, n) for t in triples), Fraction(1, 3))


def jm_square_check(n: int) -> bool:
    """J̃_{n+1}² = Ã_{n+1} − Ã_n + n·e in S̃_{n+1}."""
    j = jm(n + 1, n + 1)
    rhs = three_cycle_sum(n + 1, n + 1) - three_cycle_sum(n, n + 1) + AlgebraElement.scalar(n + 1, n)
    return j * j == rhs


def jm_power_restricted(n: int, k: int) -> AlgebraElement:
    """Ẽ_n J̃_{n+1}^{2k}."""
    if n + 1 > MAX_GROUP_DEGREE:
        raise SizeLimitError("double cover degree", n + 1, MAX_GROUP_DEGREE)
    j = jm(n + 1, n + 1)
    return restrict(j.power(2 * k))


def walk_count(n: int, k: int) -> Dict[TwistedClass, int]:
    """
    Count the sequences i_1, …, i_{2k} ∈ {1..n} whose product [i_1 n+1] ⋯ [i_{2k} n+1]
    fixes n + 1, sorted by the class of S̃_n the product lands in.
    """
    steps = [transposition(i, n + 1, n + 1) for i in range(1, n + 1)]
    index = class_index(n)
    classes = conjugacy_classes(n)
    counts: Dict[TwistedClass, int] = {}
    for seq in product(range(n), repeat=2 * k):
        g = identity(n + 1)
        for i in seq:
            g = g * steps[i]
        if g.fixes(n + 1):
            cls = classes[index[TwistedElement(g.perm[:n], g.z)]]
            counts[cls] = counts.get(cls, 0) + 1
    return counts


def expected_class_size(rho: Sequence[int], n: int) -> int:
    """n^{↓|ρ|} / z_ρ for the non-trivial cycles ρ."""
    size = factorial(n) // factorial(n - sum(rho))
    z = 1
    for part, mult in Counter(rho).items():
        z *= part**mult * factorial(mult)
    return size // z
