from collections import Counter
from fractions import Fraction as F
from math import factorial

import numpy as np
import pytest

from spin_limit_shapes.branching import (
    NazarovLabel,
    ProfileWeights,
    branching_checks,
    branching_multiplicity,
    dim_spin,
    down_weights,
    graph_edges,
    level_matrices,
    plancherel_spin,
    sample_down,
    sample_plancherel,
    schur_projection,
    spin_vertices,
    uniform_spin_measure,
    up_weights,
)
from spin_limit_shapes.errors import DomainError
from spin_limit_shapes.spcore import EMPTY, StrictPartition, addable_boxes, count_strict_partitions


def label(text):
    return NazarovLabel.parse(text)


def test_labels_merge_signs_of_even_partitions():
    assert NazarovLabel(StrictPartition((3, 1)), -1).gamma == 1
    assert label("4,1;-").gamma == -1
    assert label("4,1;-").is_split
    assert str(label("4,1;-")) == "(4,1)-"
    assert str(label("3,1")) == "(3,1)"
    with pytest.raises(DomainError):
        NazarovLabel(StrictPartition((2,)), 0)


def test_vertex_counts():
    assert len(spin_vertices(4)) == 3
    assert len(spin_vertices(6)) == 6
    for n in range(1, 10):
        split = sum(1 for x in spin_vertices(n) if x.is_split)
        assert len(spin_vertices(n)) == count_strict_partitions(n) + split // 2


def test_dimensions():
    assert dim_spin(label("3,1")) == 4
    assert dim_spin(label("3")) == 2
    assert dim_spin(label("2,1")) == 1
    for n in range(1, 11):
        assert sum(dim_spin(x) ** 2 for x in spin_vertices(n)) == factorial(n)


def test_multiplicities_keep_sign_when_deleting_a_unit_row():
    assert branching_multiplicity(label("2,1;+"), label("2;+")) == 1
    assert branching_multiplicity(label("2,1;+"), label("2;-")) == 0
    assert branching_multiplicity(label("3"), label("2;-")) == 1
    assert branching_multiplicity(label("3,1"), label("5")) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_level_identities(n):
    checks = branching_checks(n)
    assert all(checks.values()), [name for name, ok in checks.items() if not ok]


def test_level_matrices_need_positive_level():
    with pytest.raises(DomainError):
        level_matrices(0)


def test_step_laws_match_level_matrices():
    for n in range(1, 7):
        matrices = level_matrices(n)
        for j, y in enumerate(matrices.lower):
            expected = {x: matrices.up[j][i] for i, x in enumerate(matrices.upper) if matrices.up[j][i]}
            assert up_weights(y) == expected
        for i, x in enumerate(matrices.upper):
            expected = {y: matrices.down[i][j] for j, y in enumerate(matrices.lower) if matrices.down[i][j]}
            assert down_weights(x) == expected
    assert down_weights(NazarovLabel(EMPTY)) == {}


def test_float_weights_agree_with_exact_ones():
    lam = StrictPartition((5, 3, 2))
    weights = ProfileWeights(lam)
    for x, w in up_weights(NazarovLabel(lam)).items():
        c = next(c for mu, c in addable_boxes(lam) if mu == x.partition)
        share = w if not x.is_split or c == 0 else 2 * w
        assert weights.up(c) == pytest.approx(float(share), abs=1e-12)


def test_plancherel_measures():
    for n in range(0, 9):
        measure = plancherel_spin(n)
        assert measure.total() == 1
        assert uniform_spin_measure(n).total() == 1
    assert plancherel_spin(4).mass(label("3,1")) == F(16, 24)


def test_schur_projection_sums_signs():
    edges = schur_projection(4)
    assert edges[(StrictPartition((2, 1)), StrictPartition((3, 1)))] == (F(1, 2), F(2))
    assert edges[(StrictPartition((3,)), StrictPartition((3, 1)))] == (F(1, 2), F(1, 2))
    rows = graph_edges(4)
    assert {r["level"] for r in rows} == {"4"}
    assert {(r["lambda"], r["lambda_lower"]) for r in rows} == {(str(b), str(a)) for a, b in edges}


def test_sampling_follows_plancherel():
    rng = np.random.default_rng(11)
    draws = 4000
    counts = Counter(sample_plancherel(6, rng) for _ in range(draws))
    for x in spin_vertices(6):
        p = float(plancherel_spin(6).mass(x))
        stderr = (p * (1 - p) / draws) ** 0.5
        assert abs(counts[x] / draws - p) < 5 * stderr + 1e-9


def test_down_step_refused_at_empty_partition():
    with pytest.raises(DomainError):
        sample_down(NazarovLabel(EMPTY), np.random.default_rng(0))
