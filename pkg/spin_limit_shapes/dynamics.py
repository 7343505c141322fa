# spin_limit_shapes/dynamics.py

"""
The continuous-time Res-Ind walk on spin labels and the limit-shape evolution it
produces: Monte Carlo replicas, exact moment predictions and the PDE check.
"""

import asyncio
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import exp, sqrt
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from . import series
from .branching import NazarovLabel, sample_down, sample_plancherel, sample_up
from .curves import vershik_cumulants
from .errors import DomainError
from .freeprob import CumulantVector, MomentSequence, cumulants_to_moments, evolve, semicircle
from .measures import rescaled_transition_measure
from .pausing import PausingSpec, renewal_count
from .series import Q, SERIES_RING, W
from .spcore import sample_uniform_strict
from .thoma import two_point_cumulants
from .ui_utils import print_warning

INITIAL_KINDS = ("plancherel", "uniform", "delta")
REPORTED_MOMENTS = (2, 4, 6)


@dataclass(frozen=True)
class InitialSampler:
    """Where each replica starts: spin Plancherel, the uniform strict-partition ensemble, or a fixed label."""

    kind: str = "plancherel"
    label: Optional[NazarovLabel] = None

    def __post_init__(self):
        if self.kind not in INITIAL_KINDS:
            raise DomainError(f"unknown initial sampler '{self.kind}', expected one of {INITIAL_KINDS}")
        if self.kind == "delta" and self.label is None:
            raise DomainError("a delta start needs a label")

    @classmethod
    def parse(cls, text: str) -> "InitialSampler":
        """'plancherel', 'uniform' or 'delta:4,2;-'."""
        kind, _, rest = text.strip().partition(":")
        kind = kind.lower()
        if kind == "delta":
            return cls(kind, NazarovLabel.parse(rest))
        return cls(kind)

    def sample(self, n: int, rng: np.random.Generator) -> NazarovLabel:
        if self.kind == "plancherel":
            return sample_plancherel(n, rng)
        if self.kind == "uniform":
            lam = sample_uniform_strict(n, rng)
            gamma = 1 if lam.is_even else int(rng.choice((1, -1)))
            return NazarovLabel(lam, gamma)
        if self.label.n != n:
            raise DomainError(f"delta start {self.label} does not live at level {n}")
        return self.label

    def __str__(self) -> str:
        return f"delta:{self.label}" if self.kind == "delta" else self.kind


def chain_step(label: NazarovLabel, rng: np.random.Generator) -> NazarovLabel:
    """One step of P = P_down · P_up: remove a box, then add one."""
    return sample_up(sample_down(label, rng), rng)


def run_chain(label: NazarovLabel, steps: int, rng: np.random.Generator) -> NazarovLabel:
    for _ in range(steps):
        label = chain_step(label, rng)
    return label


@dataclass(frozen=True)
class SampleRecord:
    label: NazarovLabel
    jumps: int
    t: float
    m2: float
    m4: float
    m6: float

    def moment(self, k: int) -> float:
        return {2: self.m2, 4: self.m4, 6: self.m6}[k]

    def to_row(self) -> Dict[str, str]:
        return {
            "lambda": str(self.label.partition),
            "gamma": str(self.label.gamma),
            "jumps": str(self.jumps),
            "t": f"{self.t:.12g}",
            "M2": f"{self.m2:.12f}",
            "M4": f"{self.m4:.12f}",
            "M6": f"{self.m6:.12f}",
        }


def record_for(label: NazarovLabel, jumps: int, t: float) -> SampleRecord:
    """Even moments of the √(2n)-rescaled transition measure, exact before rounding."""
    measure = rescaled_transition_measure(label.partition)
    m2, m4, m6 = (float(measure.moment(k)) for k in REPORTED_MOMENTS)
    return SampleRecord(label, jumps, t, m2, m4, m6)


def simulate_replica(
    n: int, t: float, spec: PausingSpec, initial: InitialSampler, seed: np.random.SeedSequence
) -> SampleRecord:
    rng = np.random.default_rng(seed)
    start = initial.sample(n, rng)
    jumps = renewal_count(n, t, spec, rng)
    return record_for(run_chain(start, jumps, rng), jumps, t)


def _check_run(n: int, t: float, spec: PausingSpec) -> None:
    if n < 2:
        raise DomainError(f"the walk needs n ≥ 2, got {n}")
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if not spec.integrable:
        print_warning(f"{spec.family} pausing lies outside the integrability hypothesis")


def simulate(
    n: int,
    t: float,
    spec: PausingSpec,
    initial: InitialSampler,
    replicas: int,
    seed: int,
) -> List[SampleRecord]:
    """Independent replicas, replica i drawing from the i-th child of SeedSequence(seed)."""
    _check_run(n, t, spec)
    seeds = np.random.SeedSequence(seed).spawn(replicas)
    return [simulate_replica(n, t, spec, initial, s) for s in seeds]


async def run_replicas(
    n: int,
    t: float,
    spec: PausingSpec,
    initial: InitialSampler,
    replicas: int,
    seed: int,
    threads: int = 1,
) -> List[SampleRecord]:
    """The same records as `simulate`, computed in worker threads; order follows the replica index."""
    _check_run(n, t, spec)
    seeds = np.random.SeedSequence(seed).spawn(replicas)
    semaphore = asyncio.Semaphore(max(1, threads))

    async def one(child: np.random.SeedSequence) -> SampleRecord:
        async with semaphore:
            return await asyncio.to_thread(simulate_replica, n, t, spec, initial, child)

    return list(await asyncio.gather(*(one(s) for s in seeds)))


def label_histogram(records: Sequence[SampleRecord]) -> Dict[NazarovLabel, int]:
    return dict(Counter(r.label for r in records))


def predicted_moments(
    initial: CumulantVector, t: Optional[float] = None, m: float = 1.0
) -> Union[MomentSequence, List[float]]:
    """
    Moments of the evolved limit transition measure: symbolic in q when t is None,
    floats at q = e^{−t/m} otherwise.
    """
    moments = cumulants_to_moments(evolve(initial))
    if t is None:
        return moments
    if m <= 0:
        raise DomainError(f"mean pausing time must be positive, got {m}")
    return moments.floats(exp(-t / m))


def pde_residual(initial: CumulantVector, order: Optional[int] = None) -> List[series.PolyElement]:
    """
    Coefficients of m∂_tG + G∂_zG − G − (1/G)∂_zG, divided by w = 1/z, for the evolved
    G(q, z) = Σ M_j(q) z^{−j−1} through w^order.

    With G = wH and m∂_t = −q∂_q (q = e^{−t/m}, so m only enters through q) the
    quotient is −qH_q − w²H(H + wH') − H + 1 + wH'/H.
    """
    moments = cumulants_to_moments(evolve(initial))
    order = moments.order if order is None else min(order, moments.order)
    prec = order + 1
    h = series.from_coefficients(moments.values[:prec])
    h_q = series.rs_diff(h, Q)
    h_w = series.rs_diff(h, W)
    time_term = -Q * h_q
    transport = W**2 * h * (h + W * h_w)
    drift = W * h_w * series.rs_series_inversion(h, W, prec)
    residual = time_term - transport - h + SERIES_RING.one + drift
    residual = series.rs_trunc(residual, W, prec)
    return series.coefficients(residual, order)


def residual_vanishes(coefficients: Sequence[series.PolyElement]) -> bool:
    return all(c == SERIES_RING.zero for c in coefficients)


def random_initial_cumulants(order: int, rng: np.random.Generator, spread: int = 5) -> CumulantVector:
    """R_1 = 0, R_2 = 1, odd R's zero and small random rational even R's."""
    values = [Fraction(0), Fraction(1)]
    for k in range(3, order + 1):
        if k % 2:
            values.append(Fraction(0))
        else:
            values.append(Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, spread + 1))))
    return CumulantVector.of(values)


INITIAL_CUMULANTS = ("semicircle", "vershik", "thoma", "random")


def named_initial(name: str, order: int, rng: Optional[np.random.Generator] = None) -> CumulantVector:
    """'semicircle', 'vershik', 'thoma:c' (two-point ν at ±c) or 'random', each through R_order."""
    kind, _, arg = name.strip().lower().partition(":")
    if kind == "semicircle":
        return semicircle(1, order)
    if kind == "vershik":
        return vershik_cumulants((order + 1) // 2).truncate(order)
    if kind == "thoma":
        return two_point_cumulants(Fraction(arg or "1"), order)
    if kind == "random":
        return random_initial_cumulants(order, rng or np.random.default_rng(0))
    raise DomainError(f"unknown initial cumulants '{name}', expected one of {INITIAL_CUMULANTS}")


@dataclass(frozen=True)
class ConcentrationRow:
    moment: int
    mean: float
    variance: float
    predicted: float
    z_score: float

    @property
    def relative_error(self) -> float:
        return abs(self.mean - self.predicted) / abs(self.predicted) if self.predicted else abs(self.mean)

    def to_row(self) -> Dict[str, str]:
        return {
            "moment": f"M{self.moment}",
            "mean": f"{self.mean:.12f}",
            "variance": f"{self.variance:.12f}",
            "predicted": f"{self.predicted:.12f}",
            "relative_error": f"{self.relative_error:.3e}",
            "z_score": f"{self.z_score:.3f}",
        }


def concentration_report(
    records: Sequence[SampleRecord], initial: CumulantVector, t: float, m: float
) -> List[ConcentrationRow]:
    """Empirical mean and variance of M_2, M_4, M_6 against the predicted moments."""
    if not records:
        raise DomainError("no samples to report on")
    predicted = predicted_moments(initial, t, m)
    rows = []
    for k in REPORTED_MOMENTS:
        values = np.array([r.moment(k) for r in records])
        mean = float(values.mean())
        variance = float(values.var(ddof=1)) if len(values) > 1 else 0.0
        target = predicted[k] if k < len(predicted) else float("nan")
        stderr = sqrt(variance / len(values)) if variance > 0 else 0.0
        z = (mean - target) / stderr if stderr else 0.0
        rows.append(ConcentrationRow(k, mean, variance, target, z))
    return rows
