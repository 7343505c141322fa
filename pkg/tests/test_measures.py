from fractions import Fraction as F

import pytest

from spin_limit_shapes.errors import DomainError, PartitionError
from spin_limit_shapes.freeprob import moments_to_cumulants
from spin_limit_shapes.measures import (
    FiniteMeasure,
    Sqrt,
    balance_check,
    compositions,
    copair_mass,
    cotransition_measure,
    growth_weight_check,
    jm_moment_rhs,
    markov_series,
    odd_moment_collapsed,
    rayleigh_data,
    rayleigh_to_cumulants,
    rescale,
    rescaled_transition_measure,
    transition_measure,
)
from spin_limit_shapes.spcore import (
    EMPTY,
    StrictPartition,
    addable_boxes,
    enumerate_strict_partitions,
    g_hook,
    removable_boxes,
)

LAM = StrictPartition((3, 1))


def test_transition_measure_of_three_one():
    measure = transition_measure(LAM)
    assert measure.atoms == ((F(-4), F(9, 35)), (F(-2), F(2, 15)), (F(1), F(4, 15)), (F(3), F(12, 35)))
    assert measure.is_probability()


def test_transition_measure_of_single_box_and_empty():
    assert transition_measure(StrictPartition((1,))).atoms == ((F(-2), F(1, 3)), (F(1), F(2, 3)))
    assert transition_measure(EMPTY) == FiniteMeasure.delta(0)


def test_transition_measures_are_centered_probabilities():
    for n in range(1, 11):
        for lam in enumerate_strict_partitions(n):
            measure = transition_measure(lam)
            assert measure.is_probability()
            assert measure.moment(1) == 0
            assert measure.moment(2) == 2 * n
            assert rescaled_transition_measure(lam).moment(2) == 1


def test_odd_moment_of_irrational_rescaling_is_refused():
    measure = rescaled_transition_measure(LAM)
    assert measure.scale_sq == 8
    with pytest.raises(DomainError):
        measure.moment(1)
    assert measure.moment_float(1) == pytest.approx(0.0, abs=1e-12)
    square = rescaled_transition_measure(StrictPartition((2,)))
    assert square.moment(1) == 0


def test_rescale_rejects_nonpositive_factor():
    with pytest.raises(DomainError):
        rescale(transition_measure(LAM), 0)
    with pytest.raises(DomainError):
        Sqrt(-2)
    assert rescale(transition_measure(LAM), 2).moment(2) == 2


def test_repeated_atoms_rejected():
    with pytest.raises(DomainError):
        FiniteMeasure(((F(1), F(1, 2)), (F(1), F(1, 2))))


def test_growth_weights_for_three_one():
    assert growth_weight_check(LAM, StrictPartition((4, 1))) == (F(3, 10), F(3, 10))
    assert growth_weight_check(LAM, StrictPartition((3, 2))) == (F(1, 5), F(1, 5))
    with pytest.raises(PartitionError):
        growth_weight_check(LAM, StrictPartition((5,)))


def test_growth_weights_on_every_edge():
    for n in range(0, 10):
        for lam in enumerate_strict_partitions(n):
            total = F(0)
            for mu, _ in addable_boxes(lam):
                lhs, rhs = growth_weight_check(lam, mu)
                assert lhs == rhs
                total += rhs
            assert total == 1


def test_balance_identity():
    assert balance_check(LAM) == [(1, F(4, 15), F(4, 15)), (3, F(36, 35), F(36, 35))]
    for n in range(1, 11):
        for lam in enumerate_strict_partitions(n):
            for _, lhs, rhs in balance_check(lam):
                assert lhs == rhs


def test_odd_moments_collapse_to_positive_atoms():
    for n in range(1, 9):
        for lam in enumerate_strict_partitions(n):
            measure = transition_measure(lam)
            for k in (1, 2, 3):
                assert measure.raw_moment(2 * k + 1) == odd_moment_collapsed(measure, k)


def test_first_jm_moment_equals_size():
    for n in range(1, 10):
        for lam in enumerate_strict_partitions(n):
            assert jm_moment_rhs(lam, 1) == n
    with pytest.raises(DomainError):
        jm_moment_rhs(LAM, 0)


def test_markov_transform_reproduces_moments():
    for n in range(1, 8):
        for lam in enumerate_strict_partitions(n):
            expected = transition_measure(lam).moments(6)
            assert markov_series(rayleigh_data(lam).moments(6), 6).fractions() == expected


def test_rayleigh_cumulants_of_symmetric_two_point_law():
    # τ = δ_1 + δ_{−1} − δ_0 is the Rayleigh measure of (δ_1 + δ_{−1}) / 2
    cumulants = rayleigh_to_cumulants([2, 2, 2], 6).fractions()
    expected = moments_to_cumulants([1, 0, 1, 0, 1, 0, 1]).fractions()
    assert cumulants == expected
    assert cumulants[:4] == [0, 1, 0, -1]


def test_rayleigh_cumulants_need_enough_moments():
    with pytest.raises(DomainError, match="needs 3 even moments"):
        rayleigh_to_cumulants([2, 2], 6)
    assert rayleigh_to_cumulants([2, 2], 5).fractions() == [0, 1, 0, -1, 0]


def test_compositions():
    assert list(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert list(compositions(3, 3)) == [(1, 1, 1)]
    assert len(list(compositions(6, 3))) == 10


def test_cotransition_measure_gives_restriction_weights():
    measure = cotransition_measure(LAM)
    assert measure.atoms == ((F(-3), F(3, 10)), (F(-1), F(1, 2)), (F(2), F(1, 5)))
    for n in range(1, 10):
        for lam in enumerate_strict_partitions(n):
            co = cotransition_measure(lam)
            assert co.is_probability()
            for mu, c in removable_boxes(lam):
                assert copair_mass(co, c) == F(g_hook(mu), g_hook(lam))
    assert len(cotransition_measure(EMPTY)) == 0


def test_measure_rows_carry_exact_and_decimal_columns():
    rows = rescaled_transition_measure(LAM).to_rows()
    assert rows[0]["location"] == "-4/√8"
    assert rows[0]["mass"] == "9/35"
    assert float(rows[-1]["location_decimal"]) == pytest.approx(3 / 8**0.5)
