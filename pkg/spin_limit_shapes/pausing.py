# spin_limit_shapes/pausing.py

"""
Pausing-time laws of the continuous-time Res-Ind walk, renewal counts and the factor

    a(k, t, n) = Σ_j (1 − k/n)^j P(N_{tn} = j) = E[(1 − k/n)^{N_{tn}}],

which tends to e^{−kt/m} for integrable pausing laws of mean m.
"""

from dataclasses import dataclass, field
from math import exp, floor, sqrt
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import signal, stats

from .errors import DomainError, SizeLimitError
from .ui_utils import print_warning

FAMILIES = ("exponential", "gamma", "uniform", "deterministic", "histogram")
GRID_STEPS_PER_MEAN = 2000
MAX_GRID_POINTS = 4_000_000
TAIL_WARNING = 1e-8


@dataclass(frozen=True)
class PausingSpec:
    """
    A pausing-time law ψ on (0, ∞).

    params per family: exponential (mean,), gamma (shape, scale), uniform (low, high),
    deterministic (value,); a histogram keeps its bin `edges` and `weights` instead.
    """

    family: str
    params: Tuple[float, ...] = ()
    edges: Tuple[float, ...] = ()
    weights: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown pausing family '{self.family}', expected one of {FAMILIES}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.family == "histogram":
            edges = tuple(float(e) for e in self.edges)
            weights = tuple(float(w) for w in self.weights)
            if len(edges) != len(weights) + 1 or any(a >= b for a, b in zip(edges, edges[1:])):
                raise DomainError("histogram needs increasing edges and one weight per bin")
            if edges[0] < 0 or min(weights) < 0 or sum(weights) <= 0:
                raise DomainError("histogram must live on [0, ∞) with nonnegative weights")
            total = sum(weights)
            object.__setattr__(self, "edges", edges)
            object.__setattr__(self, "weights", tuple(w / total for w in weights))
        else:
            arity = {"exponential": 1, "gamma": 2, "uniform": 2, "deterministic": 1}[self.family]
            if len(self.params) != arity:
                raise DomainError(f"{self.family} takes {arity} parameter(s), got {self.params}")
            if self.family == "uniform" and not 0 <= self.params[0] < self.params[1]:
                raise DomainError(f"uniform pausing needs 0 ≤ low < high, got {self.params}")
            if self.family != "uniform" and min(self.params) <= 0:
                raise DomainError(f"{self.family} parameters must be positive, got {self.params}")
        if not self.mean > 0:
            raise DomainError(f"mean pausing time must be positive, got {self.mean}")

    @classmethod
    def exponential(cls, mean: float = 1.0) -> "PausingSpec":
        return cls("exponential", (mean,))

    @classmethod
    def gamma(cls, shape: float, scale: float) -> "PausingSpec":
        return cls("gamma", (shape, scale))

    @classmethod
    def uniform(cls, low: float, high: float) -> "PausingSpec":
        return cls("uniform", (low, high))

    @classmethod
    def deterministic(cls, value: float = 1.0) -> "PausingSpec":
        return cls("deterministic", (value,))

    @classmethod
    def histogram(cls, edges, weights) -> "PausingSpec":
        return cls("histogram", (), tuple(edges), tuple(weights))

    @classmethod
    def parse(cls, family: str, params: str) -> "PausingSpec":
        """'gamma', '2,0.5'; a histogram reads 'e0,e1,…|w0,w1,…'."""
        family = family.strip().lower()
        if family == "histogram":
            edges, _, weights = params.partition("|")
            return cls.histogram(_floats(edges), _floats(weights))
        return cls(family, _floats(params))

    @property
    def mean(self) -> float:
        if self.family in ("exponential", "deterministic"):
            return self.params[0]
        if self.family == "gamma":
            return self.params[0] * self.params[1]
        if self.family == "uniform":
            return (self.params[0] + self.params[1]) / 2
        mids = (np.array(self.edges[:-1]) + np.array(self.edges[1:])) / 2
        return float(np.dot(mids, self.weights))

    @property
    def integrable(self) -> bool:
        """False for the deterministic law, which lies outside the integrability hypothesis."""
        return self.family != "deterministic"

    def cdf(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        if self.family == "exponential":
            return stats.expon.cdf(s, scale=self.params[0])
        if self.family == "gamma":
            return stats.gamma.cdf(s, self.params[0], scale=self.params[1])
        if self.family == "uniform":
            low, high = self.params
            return stats.uniform.cdf(s, loc=low, scale=high - low)
        if self.family == "deterministic":
            return (s >= self.params[0]).astype(float)
        cumulative = np.concatenate([[0.0], np.cumsum(self.weights)])
        return np.interp(s, self.edges, cumulative, left=0.0, right=1.0)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.family == "exponential":
            return rng.exponential(self.params[0], size)
        if self.family == "gamma":
            return rng.gamma(self.params[0], self.params[1], size)
        if self.family == "uniform":
            return rng.uniform(self.params[0], self.params[1], size)
        if self.family == "deterministic":
            return np.full(size, self.params[0])
        bins = rng.choice(len(self.weights), size=size, p=self.weights)
        edges = np.asarray(self.edges)
        return rng.uniform(edges[bins], edges[bins + 1])

    def to_dict(self) -> Dict:
        out = {"family": self.family, "mean": self.mean, "integrable": self.integrable}
        if self.family == "histogram":
            out.update(edges=list(self.edges), weights=list(self.weights))
        else:
            out["params"] = list(self.params)
        return out


def _floats(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as e:
        raise DomainError(f"cannot read numbers from '{text}'") from e


def renewal_count(n: int, t: float, spec: PausingSpec, rng: np.random.Generator) -> int:
    """Number of pausing times τ_1, τ_2, … whose partial sums stay ≤ tn."""
    horizon = t * n
    if horizon <= 0:
        return 0
    count = 0
    elapsed = 0.0
    expected = horizon / spec.mean
    batch = max(16, int(expected + 5 * sqrt(expected) + 16))
    while True:
        sums = elapsed + np.cumsum(spec.sample(rng, batch))
        inside = int(np.searchsorted(sums, horizon, side="right"))
        count += inside
        if inside < batch:
            return count
        elapsed = float(sums[-1])


@dataclass
class AFactor:
    k: int
    t: float
    n: int
    value: float
    method: str
    terms: int
    tail_mass: float
    meta: Dict[str, float] = field(default_factory=dict)

    @property
    def limit(self) -> float:
        return exp(-self.k * self.t / self.meta.get("mean", 1.0))

    @property
    def deviation(self) -> float:
        return abs(self.value - self.limit)

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "t": self.t,
            "n": self.n,
            "value": f"{self.value:.12f}",
            "limit": f"{self.limit:.12f}",
            "deviation": f"{self.deviation:.3e}",
            "method": self.method,
            "terms": self.terms,
            "tail_mass": f"{self.tail_mass:.3e}",
        }


def _generating_value(x: float, counts_cdf: np.ndarray) -> float:
    """Σ_j x^j (F_j − F_{j+1}) with F_j = P(S_j ≤ s), F_0 = 1 and F beyond the array taken as 0."""
    probabilities = counts_cdf - np.append(counts_cdf[1:], 0.0)
    powers = x ** np.arange(len(counts_cdf))
    return float(np.dot(powers, probabilities))


def _gamma_partial_sums(spec: PausingSpec, horizon: float, tol: float, j_max: Optional[int]) -> np.ndarray:
    shape, scale = spec.params
    expected = horizon / spec.mean
    top = j_max or int(expected + 12 * sqrt(expected / shape + 1) + 32)
    while True:
        j = np.arange(1, top + 1)
        cdf = np.concatenate([[1.0], stats.gamma.cdf(horizon, shape * j, scale=scale)])
        if cdf[-1] < tol or j_max:
            return cdf
        top *= 2


def _grid_partial_sums(spec: PausingSpec, horizon: float, tol: float, j_max: Optional[int]) -> np.ndarray:
    """P(S_j ≤ tn) from repeated convolution of the lattice pmf of ψ (step m/2000), truncated to [0, tn]."""
    h = spec.mean / GRID_STEPS_PER_MEAN
    last = int(floor(horizon / h + 1e-9))
    if last + 1 > MAX_GRID_POINTS:
        raise SizeLimitError("pausing grid points", last + 1, MAX_GRID_POINTS)
    nodes = np.arange(last + 2) * h
    pmf = np.diff(spec.cdf(np.concatenate([[-h / 2], nodes[:-1] + h / 2])))
    pmf = pmf[: last + 1]
    expected = horizon / spec.mean
    cap = j_max or int(3 * expected + 10 * sqrt(expected) + 50)
    # lattice convolutions carry a floating-point floor near 1e-13
    tol = max(tol, 1e-11)
    cdf = [1.0]
    dist = np.zeros(last + 1)
    dist[0] = 1.0
    j = 0
    while True:
        j += 1
        dist = signal.fftconvolve(dist, pmf)[: last + 1]
        np.clip(dist, 0.0, None, out=dist)
        cdf.append(float(dist.sum()))
        if cdf[-1] < tol or j >= cap:
            return np.array(cdf)


def a_factor(
    k: int,
    t: float,
    n: int,
    spec: PausingSpec,
    j_max: Optional[int] = None,
    method: str = "auto",
    tol: float = 1e-14,
) -> AFactor:
    """
    E[(1 − k/n)^{N_{tn}}] for renewal counts of ψ.

    method "closed" is exact for the exponential law (e^{−kt/m}); "gamma" uses
    P(S_j ≤ s) = Γ-cdf(s; shape·j); "grid" convolves on a lattice and works for every family.
    """
    if k < 0 or k > n:
        raise DomainError(f"k must lie in 0..n, got k={k}, n={n}")
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if not spec.integrable:
        print_warning(f"{spec.family} pausing lies outside the integrability hypothesis")
    meta = {"mean": spec.mean}
    if k == 0 or t == 0:
        return AFactor(k, t, n, 1.0, "trivial", 0, 0.0, meta)

    if method == "auto":
        method = {"exponential": "closed", "gamma": "gamma"}.get(spec.family, "grid")
    x = 1.0 - k / n
    horizon = t * n
    if method == "closed":
        if spec.family != "exponential":
            raise DomainError("the closed form exists only for exponential pausing")
        return AFactor(k, t, n, exp(-horizon * (1 - x) / spec.mean), "closed", 0, 0.0, meta)
    if method == "gamma":
        if spec.family not in ("gamma", "exponential"):
            raise DomainError(f"the gamma method needs gamma pausing, got {spec.family}")
        if spec.family == "exponential":
            spec = PausingSpec.gamma(1.0, spec.mean)
        cdf = _gamma_partial_sums(spec, horizon, tol, j_max)
    elif method == "grid":
        cdf = _grid_partial_sums(spec, horizon, tol, j_max)
    else:
        raise DomainError(f"unknown a-factor method '{method}'")

    tail = float(cdf[-1])
    if tail > TAIL_WARNING:
        print_warning(f"a({k}, {t}, {n}) truncated with tail mass {tail:.2e}")
    return AFactor(k, t, n, _generating_value(x, cdf), method, len(cdf) - 1, tail, meta)
