"""
spin-limit-shapes: exact and Monte Carlo experiments on spin representations of symmetric groups.

This package provides the spin branching graph, Kerov transition measures of shifted
diagrams, the spin Jucys-Murphy trace formula, the Res-Ind random walk and the
free-probability description of its time-evolving limit shape.
"""

__version__ = "1.0.0"
__author__ = "spin-limit-shapes developers"
__description__ = "Limit shapes of spin representations of symmetric groups under the Res-Ind walk"

from .errors import (
    CharacterTableError,
    ConfigError,
    DomainError,
    HookFormulaError,
    NotCentralError,
    PartitionError,
    SizeLimitError,
    SpinShapeError,
)
from .spcore import (
    DoubledDiagram,
    StrictPartition,
    addable_boxes,
    count_syt_bruteforce,
    doubled_profile,
    enumerate_strict_partitions,
    g_hook,
    sample_uniform_strict,
    sigma_circle,
)
from .freeprob import (
    CumulantVector,
    MomentSequence,
    carleman_bound,
    cumulants_to_moments,
    enumerate_nc,
    evolve,
    free_compress,
    free_convolve,
    moments_to_cumulants,
    semicircle,
    stieltjes_series,
)
from .measures import (
    FiniteMeasure,
    growth_weight_check,
    jm_moment_rhs,
    markov_series,
    rayleigh_to_cumulants,
    rescale,
    transition_measure,
)
from .branching import (
    NazarovLabel,
    branching_multiplicity,
    dim_spin,
    level_matrices,
    plancherel_spin,
    sample_plancherel,
    spin_vertices,
)
from .twisted import center_expand, conjugacy_classes, cycle, jm, multiply, restrict, transposition
from .pausing import PausingSpec, a_factor
from .dynamics import InitialSampler, concentration_report, pde_residual, predicted_moments, simulate
from .curves import CurveFn, bernoulli, tau_v_moment, vershik, vershik_cumulants, vershik_density, vkls
from .thoma import ThomaAlpha, density_uniform_case, f_alpha, r_transform_evolved, thoma_moments
from .shape import shape_from_moments
from .config import RunConfig

# The character table needs numpy's eigensolver; keep the rest importable without it
try:
    from .chartable import CharacterTable, character_table, uniform_ensemble_sum, verify_jm_trace
except ImportError:
    pass

__all__ = [
    "SpinShapeError",
    "ConfigError",
    "SizeLimitError",
    "PartitionError",
    "HookFormulaError",
    "NotCentralError",
    "CharacterTableError",
    "DomainError",
    "StrictPartition",
    "DoubledDiagram",
    "enumerate_strict_partitions",
    "doubled_profile",
    "addable_boxes",
    "count_syt_bruteforce",
    "g_hook",
    "sigma_circle",
    "sample_uniform_strict",
    "FiniteMeasure",
    "transition_measure",
    "rescale",
    "growth_weight_check",
    "jm_moment_rhs",
    "markov_series",
    "rayleigh_to_cumulants",
    "CumulantVector",
    "MomentSequence",
    "enumerate_nc",
    "cumulants_to_moments",
    "moments_to_cumulants",
    "free_convolve",
    "free_compress",
    "carleman_bound",
    "semicircle",
    "evolve",
    "stieltjes_series",
    "NazarovLabel",
    "spin_vertices",
    "dim_spin",
    "branching_multiplicity",
    "level_matrices",
    "plancherel_spin",
    "sample_plancherel",
    "multiply",
    "transposition",
    "cycle",
    "jm",
    "restrict",
    "conjugacy_classes",
    "center_expand",
    "CharacterTable",
    "character_table",
    "verify_jm_trace",
    "uniform_ensemble_sum",
    "PausingSpec",
    "a_factor",
    "InitialSampler",
    "simulate",
    "predicted_moments",
    "pde_residual",
    "concentration_report",
    "CurveFn",
    "vkls",
    "vershik",
    "vershik_density",
    "bernoulli",
    "tau_v_moment",
    "vershik_cumulants",
    "ThomaAlpha",
    "thoma_moments",
    "f_alpha",
    "r_transform_evolved",
    "density_uniform_case",
    "shape_from_moments",
    "RunConfig",
]
