"""
Spin limit shapes command line.
Every command writes its tables plus a manifest.json into --out and prints a PASS/FAIL
line for each identity it checks.
"""

import argparse
import asyncio
import sys
import time
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from sympy.utilities.iterables import partitions

from spin_limit_shapes import __version__
from spin_limit_shapes.branching import (
    branching_checks,
    dim_spin,
    graph_edges,
    plancherel_spin,
    sample_plancherel,
    schur_projection,
    spin_vertices,
    uniform_spin_measure,
)
from spin_limit_shapes.chartable import (
    TOLERANCE,
    class_scalar_check,
    labeled_table,
    res_ind_eigen_error,
    uniform_ensemble_sum,
    verify_jm_trace,
)
from spin_limit_shapes.config import COMMAND_ALIASES, DEFAULTS, FORMATS, RunConfig, read_config_file, resolve
from spin_limit_shapes.curves import (
    bernoulli,
    bernoulli_oracle,
    tau_v_moment,
    vershik,
    vershik_bounds,
    vershik_cumulants,
    vershik_cumulants_from_moments,
    vershik_growth_constant,
    vershik_rayleigh_moment_numeric,
    vkls,
)
from spin_limit_shapes.dynamics import (
    InitialSampler,
    concentration_report,
    label_histogram,
    named_initial,
    pde_residual,
    predicted_moments,
    random_initial_cumulants,
    residual_vanishes,
    run_replicas,
)
from spin_limit_shapes.errors import ConfigError, SpinShapeError
from spin_limit_shapes.freeprob import (
    CARLEMAN_KMAX,
    carleman_bound,
    cumulants_to_moments,
    evolve,
    free_compress,
    free_convolve,
    semicircle,
    series_pair_from_cumulants,
    stationary_residual,
    stieltjes_series,
)
from spin_limit_shapes.measures import (
    balance_check,
    cotransition_measure,
    growth_weight_check,
    markov_series,
    odd_moment_collapsed,
    rayleigh_data,
    rescaled_transition_measure,
    transition_measure,
)
from spin_limit_shapes.pausing import PausingSpec, a_factor
from spin_limit_shapes.series import Q, SERIES_RING
from spin_limit_shapes.shape import shape_from_moments
from spin_limit_shapes.spcore import (
    StrictPartition,
    addable_boxes,
    addable_boxes_bruteforce,
    count_paths,
    count_strict_partitions,
    count_syt_bruteforce,
    doubled_profile,
    enumerate_strict_partitions,
    excess_identity,
    g_hook,
)
from spin_limit_shapes.thoma import (
    UNIFORM_EDGE,
    UniformLaw,
    cubic_residual,
    density_grid,
    density_moment,
    geometric_alpha,
    r_transform_evolved,
    r_transform_uniform_closed,
    scaled_character,
    two_point_cumulants,
    uniform_alpha,
    uniform_size_for,
)
from spin_limit_shapes.twisted import jm_square_check, walk_count
from spin_limit_shapes.ui_utils import (
    display_table,
    print_error,
    print_info,
    print_written,
    report_check,
    set_quiet,
)
from spin_limit_shapes.utils import exact_columns, format_value, write_json, write_manifest, write_rows

HELP = {
    "enumerate": "strict partitions, growth paths and the excess identity",
    "gcheck": "hook formula against brute-force tableau counts",
    "tmeasure": "transition and co-transition measure of one diagram",
    "growth-weights": "growth weights against transition-measure masses",
    "balance": "x·m({x}) = (x+1)·m({−x−1}) for positive valleys",
    "graph": "branching graph export and its exact identities",
    "plancherel": "spin Plancherel measure, invariance and sampling",
    "chartable": "character table of the double cover",
    "verify-jm": "Jucys–Murphy trace formula",
    "afactor": "the pausing factor a(k, t, n)",
    "simulate": "Monte Carlo replicas of the Res-Ind walk",
    "evolve": "evolved free cumulants and moments",
    "pde-check": "PDE residual of the evolved Cauchy transform",
    "vershik": "Vershik curve moments, cumulants and bounds",
    "thoma": "Thoma-type ensembles and their R-transforms",
    "density": "density of the uniform-case transition measure",
    "shape": "diagram reconstructed from finitely many moments",
}

# Moment tolerances of the concentration check
CONCENTRATION_TOLERANCE = {2: 0.05, 4: 0.10}
QUADRATURE_TOLERANCE = 1e-9
SAMPLING_Z_LIMIT = 5.0


def _int_list(text: Any) -> List[int]:
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got '{text}'") from None


class SpinCLI:
    """Runs one resolved command and keeps track of its artifacts and failed checks."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.artifacts: List[Path] = []
        self.failures = 0
        self.rng = np.random.default_rng(config.seed)

    def write(self, stem: str, rows: Sequence[Dict[str, Any]]) -> Path:
        path = write_rows(self.config.out_dir, stem, rows, self.config.format)
        self.artifacts.append(path)
        print_written(str(path))
        return path

    def write_payload(self, stem: str, payload: Dict[str, Any]) -> Path:
        path = write_json(self.config.out_dir / f"{stem}.json", payload)
        self.artifacts.append(path)
        print_written(str(path))
        return path

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        if not report_check(name, passed, detail):
            self.failures += 1
        return passed

    async def run(self) -> int:
        command = self.config.command
        print_info(f"Running {command} → {self.config.out}")
        handler = getattr(self, "cmd_" + command.replace("-", "_"))
        try:
            result = handler()
            if asyncio.iscoroutine(result):
                await result
        except ConfigError as e:
            print_error(str(e))
            return 2
        except SpinShapeError as e:
            print_error(str(e))
            return 1

        status = "fail" if self.failures else "pass"
        manifest = write_manifest(self.config.out_dir, self.config.to_dict(), __version__, self.artifacts, status)
        print_written(str(manifest))
        if self.failures:
            print_error(f"{self.failures} check(s) failed")
            return 1
        return 0

    # spcore

    def cmd_enumerate(self) -> None:
        nmax = self.config["nmax"]
        counts, shapes = [], []
        boxes_agree = True
        for n in range(nmax + 1):
            parts = enumerate_strict_partitions(n)
            paths = count_paths(n)
            counts.append({"n": n, "listed": len(parts), "counted": count_strict_partitions(n)})
            for lam in parts:
                boxes_agree &= set(addable_boxes(lam)) == set(addable_boxes_bruteforce(lam))
                shapes.append(
                    {"n": n, "lambda": str(lam), "length": lam.length, "sign": lam.sign, "g": g_hook(lam), "paths": paths[lam]}
                )
        self.write("counts", counts)
        self.write("strict_partitions", shapes)
        self.check("partition count", all(r["listed"] == r["counted"] for r in counts), f"n ≤ {nmax}")
        self.check("growth paths = g_λ", all(r["g"] == r["paths"] for r in shapes), f"{len(shapes)} shapes")
        self.check("addable boxes", boxes_agree, "direct rule against containment test")

        excess = []
        for k in range(1, nmax // 2 + 1):
            for p in partitions(k):
                sigma = sorted((2 * part for part, mult in p.items() for _ in range(mult)), reverse=True)
                lhs, rhs = excess_identity(sigma)
                excess.append({"sigma": ",".join(map(str, sigma)), "lhs": lhs, "rhs": rhs})
        self.write("excess_identity", excess)
        self.check("excess identity", all(r["lhs"] == r["rhs"] for r in excess), f"{len(excess)} even-row σ")

    def cmd_gcheck(self) -> None:
        nmax = self.config["nmax"]
        start = time.perf_counter()
        rows = []
        for n in range(1, nmax + 1):
            for lam in enumerate_strict_partitions(n):
                rows.append({"n": n, "lambda": str(lam), "g_hook": g_hook(lam), "g_bruteforce": count_syt_bruteforce(lam)})
        elapsed = time.perf_counter() - start
        self.write("hook_check", rows)
        self.check(
            "hook formula",
            all(r["g_hook"] == r["g_bruteforce"] for r in rows),
            f"{len(rows)} shapes, n ≤ {nmax}, {elapsed:.1f}s",
        )

    # measures

    def cmd_tmeasure(self) -> None:
        lam = StrictPartition.parse(self.config["partition"])
        rescaled = self.config["rescaled"]
        measure = rescaled_transition_measure(lam) if rescaled else transition_measure(lam)
        diagram = doubled_profile(lam)
        self.write("transition_measure", measure.to_rows())
        self.write_payload("profile", {**lam.to_dict(), **diagram.to_dict(), "measure": measure.to_dict()})

        moments = []
        for k in range(7):
            exact = measure.moment(k) if not (rescaled and k % 2) else ""
            moments.append({"k": k, "moment": format_value(exact), "moment_float": measure.moment_float(k)})
        self.write("moments", moments)

        self.check("transition measure is a probability", measure.is_probability(), str(lam))
        self.check("profile interlaces", diagram.interlaces(), f"{len(diagram.valleys)} valleys")
        self.check("profile is shift-symmetric", diagram.is_shift_symmetric())
        order = 6
        unscaled = transition_measure(lam)
        via_rayleigh = markov_series(rayleigh_data(lam).moments(order), order).fractions()
        self.check("Markov transform", via_rayleigh == unscaled.moments(order), f"M_0..M_{order}")
        if lam.n:
            co = cotransition_measure(lam)
            self.write("cotransition_measure", co.to_rows())
            self.check("co-transition measure is a probability", co.is_probability())

    def cmd_growth_weights(self) -> None:
        nmax = self.config["nmax"]
        rows = []
        for n in range(nmax + 1):
            for lam in enumerate_strict_partitions(n):
                for mu, c in addable_boxes(lam):
                    lhs, rhs = growth_weight_check(lam, mu)
                    rows.append({"lambda": str(lam), "mu": str(mu), "content": c, "lhs": lhs, "rhs": rhs})
        self.write("growth_weights", rows)
        self.check("growth weight = transition mass", all(r["lhs"] == r["rhs"] for r in rows), f"{len(rows)} edges, |λ| ≤ {nmax}")

    def cmd_balance(self) -> None:
        nmax = self.config["nmax"]
        rows = []
        odd_ok = True
        for n in range(1, nmax + 1):
            for lam in enumerate_strict_partitions(n):
                for x, lhs, rhs in balance_check(lam):
                    rows.append({"lambda": str(lam), "x": x, "lhs": lhs, "rhs": rhs})
                measure = transition_measure(lam)
                for k in (1, 2, 3):
                    odd_ok &= measure.moment(2 * k + 1) == odd_moment_collapsed(measure, k)
        self.write("balance", rows)
        self.check("balance identity", all(r["lhs"] == r["rhs"] for r in rows), f"{len(rows)} valleys, |λ| ≤ {nmax}")
        self.check("collapsed odd moments", odd_ok, "M_3, M_5, M_7")

    # branching

    def cmd_graph(self) -> None:
        nmax = self.config["nmax"]
        edges, schur = [], []
        verdicts: Dict[str, bool] = {}
        for n in range(1, nmax + 1):
            edges.extend(graph_edges(n))
            for (mu, lam), (down, up) in sorted(schur_projection(n).items()):
                schur.append({"level": n, "lambda": str(lam), "lambda_lower": str(mu), "weight_down": down, "weight_up": up})
            for name, ok in branching_checks(n).items():
                verdicts[name] = verdicts.get(name, True) and ok
        self.write("branching_edges", edges)
        self.write("schur_edges", schur)
        for name in ("restriction_dimension", "induction_dimension", "down_stochastic", "up_stochastic", "chain_stochastic"):
            self.check(name.replace("_", " "), verdicts[name], f"n ≤ {nmax}")

    def cmd_plancherel(self) -> None:
        nmax = self.config["nmax"]
        rows = []
        verdicts: Dict[str, bool] = {}
        totals_ok = True
        for n in range(1, nmax + 1):
            plancherel = plancherel_spin(n)
            uniform = uniform_spin_measure(n)
            totals_ok &= plancherel.total() == 1 and uniform.total() == 1
            for label in spin_vertices(n):
                rows.append(
                    {
                        "n": n,
                        "label": str(label),
                        "dim": dim_spin(label),
                        **exact_columns("plancherel", plancherel.mass(label)),
                        **exact_columns("uniform", uniform.mass(label)),
                    }
                )
            for name, ok in branching_checks(n).items():
                verdicts[name] = verdicts.get(name, True) and ok
        self.write("spin_measures", rows)
        self.check("measures sum to 1", totals_ok, f"n ≤ {nmax}")
        self.check("Σ dim² = n!", verdicts["plancherel_total"], f"n ≤ {nmax}")
        self.check("detailed balance", verdicts["detailed_balance"], f"n ≤ {nmax}")
        self.check("up-invariance", verdicts["up_invariance"], f"n ≤ {nmax}")

        samples = self.config["samples"]
        if samples > 0:
            counts: Dict[str, int] = {}
            for _ in range(samples):
                label = str(sample_plancherel(nmax, self.rng))
                counts[label] = counts.get(label, 0) + 1
            sampled = []
            for label, mass in plancherel_spin(nmax).weights:
                p = float(mass)
                observed = counts.get(str(label), 0)
                spread = (samples * p * (1 - p)) ** 0.5
                z = (observed - samples * p) / spread if spread else 0.0
                sampled.append({"label": str(label), "exact": p, "empirical": observed / samples, "z": z})
            self.write("plancherel_samples", sampled)
            worst = max(abs(r["z"]) for r in sampled)
            self.check("Plancherel sampler", worst <= SAMPLING_Z_LIMIT, f"{samples} samples at n = {nmax}, max |z| = {worst:.2f}")

    # twisted

    def cmd_chartable(self) -> None:
        n = self.config["n"]
        table = labeled_table(n)
        self.write("character_table", table.to_rows())
        spin_dims = [table.dims[i] for i in table.spin_rows()]
        self.check("row orthogonality", table.orthogonality_error() <= TOLERANCE * table.order, f"{table.orthogonality_error():.2e}")
        self.check("spin rows vanish off split classes", table.spin_vanishing_error() <= TOLERANCE, f"{table.spin_vanishing_error():.2e}")
        self.check("Σ spin dim² = n!", sum(d * d for d in spin_dims) == factorial(n), f"{len(spin_dims)} spin rows")
        self.check(
            "row labels match dimensions",
            all(table.dims[table.row_of(label)] == dim_spin(label) for label in spin_vertices(n)),
        )
        if n >= 3:
            scalars = class_scalar_check(n)
            worst = max(abs(lhs - rhs) for _, lhs, rhs in scalars)
            self.write("class_scalars", [{"label": str(label), "lhs": lhs, "rhs": rhs} for label, lhs, rhs in scalars])
            self.check("3-cycle scalar = content sum", worst <= TOLERANCE, f"max deviation {worst:.2e}")
        for rho in ((3,), (5,), (3, 3)):
            if sum(rho) <= n - 1:
                error = res_ind_eigen_error(n, rho)
                self.check(f"Res-Ind eigenvector ρ = {rho}", error <= TOLERANCE, f"{error:.2e}")
        averages = [uniform_ensemble_sum(n, k) for k in range(1, (n + 1) // 2 + 1)]
        self.write(
            "uniform_ensemble",
            [{"k": a.k, "average": a.value, "scaled": a.scaled, **exact_columns("limit", a.limit_target)} for a in averages],
        )

    def cmd_verify_jm(self) -> None:
        n, k = self.config["n"], self.config["k"]
        self.check("J̃² three-cycle identity", jm_square_check(n), f"n = {n}")
        rows = verify_jm_trace(n, k)
        table = [
            {"label": str(r.label), "lhs": r.lhs, **exact_columns("rhs", r.rhs), "deviation": f"{r.deviation:.3e}"}
            for r in rows
        ]
        self.write("jm_trace", table)
        display_table(f"Trace formula, n = {n}, k = {k}", [{k_: format_value(v) for k_, v in r.items()} for r in table])
        worst = max(r.deviation for r in rows)
        self.check("trace formula", worst <= TOLERANCE, f"max deviation {worst:.2e}")
        walks = walk_count(n, k)
        self.write(
            "walk_counts",
            [{"class": cls.label, "size": cls.size, "walks": count} for cls, count in sorted(walks.items(), key=lambda kv: kv[0].label)],
        )

    # dynamics

    def cmd_afactor(self) -> None:
        cfg = self.config
        spec = PausingSpec.parse(cfg["psi.family"], cfg["psi.params"])
        results = [a_factor(k, cfg["t"], cfg["n"], spec, method=cfg["method"]) for k in _int_list(cfg["k"])]
        rows = [r.to_dict() for r in results]
        self.write("a_factor", rows)
        self.write_payload("pausing", spec.to_dict())
        display_table(f"a(k, t, n) for {spec.family} pausing", [{k: str(v) for k, v in r.items()} for r in rows])
        if spec.integrable:
            tolerance = 1e-12 if all(r.method in ("closed", "trivial") for r in results) else 1e-3
            worst = max(r.deviation for r in results)
            self.check("a(k, t, n) → e^{−kt/m}", worst <= tolerance, f"max deviation {worst:.2e}")

    async def cmd_simulate(self) -> None:
        cfg = self.config
        spec = PausingSpec.parse(cfg["psi.family"], cfg["psi.params"])
        initial = InitialSampler.parse(cfg["initial"])
        start = time.perf_counter()
        records = await run_replicas(cfg["n"], cfg["t"], spec, initial, cfg["replicas"], cfg.seed, cfg.threads)
        print_info(f"{len(records)} replicas in {time.perf_counter() - start:.1f}s on {cfg.threads} thread(s)")
        self.write("samples", [r.to_row() for r in records])
        histogram = sorted(label_histogram(records).items(), key=lambda kv: (-kv[1], str(kv[0])))
        self.write("labels", [{"label": str(label), "count": count} for label, count in histogram])

        limit = {"plancherel": "semicircle", "uniform": "vershik"}.get(initial.kind)
        if limit is None:
            print_info("a delta start has no limit-shape prediction; samples only")
            return
        report = concentration_report(records, named_initial(limit, 8), cfg["t"], spec.mean)
        rows = [r.to_row() for r in report]
        self.write("concentration", rows)
        display_table("Moment concentration", rows)
        for row in report:
            tolerance = CONCENTRATION_TOLERANCE.get(row.moment)
            if tolerance is not None:
                self.check(
                    f"M{row.moment} concentration",
                    row.relative_error <= tolerance,
                    f"mean {row.mean:.4f} vs {row.predicted:.4f}",
                )

    def cmd_evolve(self) -> None:
        cfg = self.config
        wide = named_initial(cfg["initial"], max(cfg["order"], 2 * CARLEMAN_KMAX), self.rng)
        initial = wide.truncate(cfg["order"])
        evolved = evolve(initial)
        composed = free_convolve(free_compress(initial, Q), semicircle(1 - Q, initial.order))
        self.check("evolution = compression ⊞ semicircle", evolved.values == composed.values, f"order {initial.order}")

        symbolic = predicted_moments(initial)
        at_t = predicted_moments(initial, cfg["t"], cfg["m"])
        cumulants = evolved.to_list()
        q = float(np.exp(-cfg["t"] / cfg["m"]))
        cumulants_at_t = evolved.floats(q)
        moments = symbolic.to_list()
        rows = [
            {
                "k": k,
                "cumulant": cumulants[k - 1],
                "cumulant_at_t": cumulants_at_t[k - 1],
                "moment": moments[k],
                "moment_at_t": at_t[k],
            }
            for k in range(1, evolved.order + 1)
        ]
        self.write("evolution", rows)

        bound = carleman_bound(evolve(wide), q_value=q)
        self.write(
            "growth_bound",
            [
                {"k": k, "moment": m, "bound": (bound.constant * 2 * k) ** (2 * k), "ratio": r}
                for k, (m, r) in enumerate(zip(bound.moments, bound.ratios()), start=1)
            ],
        )
        self.check("Carleman growth", bound.holds, f"|m_2k| ≤ (C·2k)^2k for k ≤ {bound.kmax}, C = {bound.constant:.6f}")
        self.write_payload("series_pair", series_pair_from_cumulants(evolved).to_dict())
        display_table(
            f"Evolved moments at t = {cfg['t']}, m = {cfg['m']}",
            [{"k": str(r["k"]), "moment_at_t": format_value(r["moment_at_t"])} for r in rows if r["k"] % 2 == 0],
        )

    def cmd_pde_check(self) -> None:
        cfg = self.config
        order = cfg["order"]
        initials = [("semicircle", semicircle(1, order + 2))]
        for i in range(cfg["random"]):
            initials.append((f"random-{i + 1}", random_initial_cumulants(order + 2, self.rng, cfg["spread"])))
        rows = []
        for name, initial in initials:
            coefficients = pde_residual(initial, order)
            nonzero = sum(1 for c in coefficients if c != SERIES_RING.zero)
            rows.append({"initial": name, "order": order, "nonzero": nonzero, "cumulants": " ".join(initial.to_list())})
            self.check(f"PDE residual ({name})", residual_vanishes(coefficients), f"through z^-{order}")
        self.write("pde_residual", rows)

        stationary_order = order + 2
        g = stieltjes_series(cumulants_to_moments(semicircle(1, stationary_order + 1)))
        stationary = stationary_residual(g, stationary_order)
        self.check("stationary equation (semicircle)", all(c == SERIES_RING.zero for c in stationary), f"through z^-{stationary_order}")

    # curves

    def cmd_vershik(self) -> None:
        kmax, bounds_kmax = self.config["kmax"], self.config["bounds_kmax"]
        rows = []
        quadrature_ok = True
        for k in range(1, max(kmax, bounds_kmax) + 1):
            exact = tau_v_moment(2 * k)
            lower, value, upper = vershik_bounds(2 * k)
            row = {"k": 2 * k, **exact_columns("tau_moment", exact), "lower": lower, "upper": upper}
            if k <= kmax:
                numeric = vershik_rayleigh_moment_numeric(2 * k)
                row["quadrature"] = numeric
                scale = 1.0 if k <= 2 else float(exact)
                quadrature_ok &= abs(numeric - float(exact)) <= QUADRATURE_TOLERANCE * scale
            rows.append(row)
        self.write("vershik_moments", rows)
        self.check("M_2(τ_V) = 2, M_4(τ_V) = 84/5", tau_v_moment(2) == 2 and tau_v_moment(4) == Fraction(84, 5))
        self.check("closed form = quadrature", quadrature_ok, f"2k ≤ {2 * kmax}")
        self.check(
            "Vershik moment bounds",
            all(r["lower"] <= float(r["tau_moment_float"]) <= r["upper"] for r in rows),
            f"2k ≤ {2 * bounds_kmax}",
        )
        self.check(
            "Bernoulli recursion",
            all(bernoulli(j) == bernoulli_oracle(j) for j in range(2 * bounds_kmax + 1)),
        )

        closed = vershik_cumulants(kmax)
        pipeline = vershik_cumulants_from_moments(kmax)
        self.write(
            "vershik_cumulants",
            [{"k": k, **exact_columns("closed", a), **exact_columns("pipeline", b)} for k, (a, b) in enumerate(zip(closed.fractions(), pipeline.fractions()), start=1)],
        )
        self.check("cumulants: closed form = Rayleigh pipeline", closed.fractions() == pipeline.fractions(), f"2k ≤ {2 * kmax}")
        print_info(f"growth constant max |R_2k|^(1/2k)/2k = {vershik_growth_constant(kmax):.6f}")

    def cmd_thoma(self) -> None:
        cfg = self.config
        c, r, order, n = cfg["c"], cfg["r"], cfg["order"], cfg["n"]
        residual = cubic_residual(c, order)
        self.check("cubic equation", all(v == 0 for v in residual), f"c = {c}, through z^-{order}")

        evolved = r_transform_evolved(UniformLaw(r), Q, order)
        closed = r_transform_uniform_closed(r, Q, order)
        self.write(
            "r_transform",
            [{"power": k - 1, "kernel": a, "closed": b} for k, (a, b) in enumerate(zip(evolved.to_list(), closed.to_list()), start=1)],
        )
        self.check("geometric R-transform", evolved.values == closed.values, f"r = {r}, through ζ^{order - 1}")

        uniform = uniform_alpha(uniform_size_for(float(c), n))
        geometric = geometric_alpha(float(r), n)
        rows = []
        for k in range(3, cfg["kmax"] + 1, 2):
            rows.append(
                {
                    "k": k,
                    "uniform_scaled": float(scaled_character(uniform, k, n)),
                    "uniform_limit": float(c) ** (k - 1),
                    "geometric_scaled": float(scaled_character(geometric, k, n)),
                    "geometric_limit": float(r) ** (k - 1) / k,
                }
            )
        self.write("scaled_characters", rows)
        display_table(f"Scaled characters at n = {n}", [{k: format_value(v) for k, v in row.items()} for row in rows])

    def cmd_density(self) -> None:
        grid = np.linspace(-UNIFORM_EDGE, UNIFORM_EDGE, self.config["points"])
        self.write("density", [{"x": float(x), "density": float(u)} for x, u in zip(grid, density_grid(grid))])

        pipeline = cumulants_to_moments(two_point_cumulants(Fraction(1), 8)).fractions()
        moments = [{"j": j, "density": density_moment(j), **exact_columns("pipeline", pipeline[j])} for j in range(0, 9, 2)]
        self.write("density_moments", moments)
        mass, second = moments[0]["density"], moments[1]["density"]
        self.check("density mass", abs(mass - 1) <= 1e-6, f"{mass:.12f}")
        self.check("second moment", abs(second - float(pipeline[2])) <= 1e-6, f"{second:.12f} vs {pipeline[2]}")

    def cmd_shape(self) -> None:
        cfg = self.config
        source = cfg["source"]
        moments = cumulants_to_moments(named_initial(source, cfg["order"], self.rng)).fractions()
        grid = np.linspace(-cfg["xmax"], cfg["xmax"], cfg["points"])
        curve = shape_from_moments(moments, grid)
        self.write("shape", curve.to_rows())
        self.write_payload("shape_meta", curve.to_dict())
        print_info(f"continued fraction depth {curve.meta['levels']}, min β {curve.meta['min_beta']:.3e}")
        reference = {"semicircle": vkls, "vershik": vershik}.get(source)
        if reference is not None:
            print_info(f"sup distance to the {source} curve: {curve.sup_distance(reference):.3e}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", default=None, help="root seed of every random stream")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--format", choices=FORMATS, default=None, help="table format")
    common.add_argument("--config", default=None, help="file of key=value lines")
    common.add_argument("--set", dest="assignments", action="append", default=[], metavar="KEY=VALUE")
    common.add_argument("--threads", default=None, help="worker threads for simulate")
    common.add_argument("--quiet", action="store_true", default=None, help="only PASS/FAIL lines")

    parser = argparse.ArgumentParser(prog="spin_cli", description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)
    for command, defaults in DEFAULTS.items():
        aliases = [alias for alias, target in COMMAND_ALIASES.items() if target == command]
        sub = commands.add_parser(command, aliases=aliases, parents=[common], help=HELP[command])
        for key, value in defaults.items():
            option = "--" + key.replace(".", "-").replace("_", "-")
            sub.add_argument(option, dest=key, default=None, help=f"default {format_value(value)}")
    return parser


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, resolve the configuration and run one command."""
    args = build_parser().parse_args(argv)
    try:
        file_values = read_config_file(args.config) if args.config else {}
        command = COMMAND_ALIASES.get(args.command, args.command)
        flags = {key: getattr(args, key) for key in DEFAULTS[command]}
        flags.update(seed=args.seed, out=args.out, format=args.format, threads=args.threads, quiet=args.quiet)
        config = resolve(command, file_values, args.assignments, flags)
    except ConfigError as e:
        print_error(str(e))
        return 2
    set_quiet(config.quiet)
    return await SpinCLI(config).run()


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
