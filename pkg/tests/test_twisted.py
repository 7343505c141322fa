from fractions import Fraction as F
from itertools import permutations, product
from math import factorial

import pytest

from spin_limit_shapes.clifford import (
    cocycle,
    cocycle_direct,
    cocycle_identity_holds,
    compose,
    identity_perm,
    reduced_word,
)
from spin_limit_shapes.errors import DomainError, NotCentralError, SizeLimitError
from spin_limit_shapes.twisted import (
    AlgebraElement,
    all_elements,
    center_expand,
    central,
    class_sum,
    conjugacy_classes,
    cycle,
    expected_class_size,
    generator,
    identity,
    inverse,
    jm,
    jm_power_restricted,
    jm_square_check,
    restrict,
    transposition,
    walk_count,
)


def perms(n):
    return list(permutations(range(1, n + 1)))


def test_reduced_words_have_inversion_length():
    for sigma in perms(4):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if sigma[i] > sigma[j])
        assert len(reduced_word(sigma)) == inversions
    assert reduced_word(identity_perm(3)) == ()


def test_cocycle_matches_full_clifford_product():
    for sigma, tau in product(perms(3), repeat=2):
        assert cocycle(sigma, tau) == cocycle_direct(sigma, tau)


def test_cocycle_identity():
    assert cocycle_identity_holds(product(perms(3), repeat=3))
    assert cocycle_identity_holds((a, b, c) for a, b, c in product(perms(4), repeat=3) if a[0] == 1 and b[3] == 4)


def test_generator_relations():
    n = 4
    e, z = identity(n), central(n)
    r1, r2, r3 = (generator(i, n) for i in (1, 2, 3))
    assert r1 * r1 == e
    assert (r1 * r2) * (r1 * r2) * (r1 * r2) == e
    assert (r1 * r3) * (r1 * r3) == z
    assert z * z == e
    with pytest.raises(DomainError):
        generator(4, 4)


def test_transpositions():
    n = 4
    assert transposition(1, 2, n) == generator(1, n)
    for i, j in product(range(1, n + 1), repeat=2):
        if i != j:
            t = transposition(i, j, n)
            assert t * t == identity(n)
            assert transposition(j, i, n) == t * central(n)
    with pytest.raises(DomainError):
        transposition(2, 2, n)


def test_inverses_and_degree_mismatch():
    for g in all_elements(3):
        assert g * inverse(g) == identity(3)
    with pytest.raises(DomainError):
        identity(3) * identity(4)
    with pytest.raises(SizeLimitError):
        all_elements(8)


def test_cycles_project_to_cycles():
    assert cycle([1, 2, 3], 4).perm == (2, 3, 1, 4)
    assert cycle([2], 3) == identity(3)
    with pytest.raises(DomainError):
        cycle([1, 1], 3)


def test_jm_elements():
    assert len(jm(1, 3)) == 0
    assert len(jm(3, 3)) == 2
    with pytest.raises(DomainError):
        jm(4, 3)


@pytest.mark.parametrize("n", range(1, 5))
def test_square_of_jm_element(n):
    assert jm_square_check(n)


@pytest.mark.parametrize("n, count", [(3, 6), (4, 8)])
def test_class_counts(n, count):
    classes = conjugacy_classes(n)
    assert len(classes) == count
    assert sum(c.size for c in classes) == 2 * factorial(n)
    for c in classes:
        factor = 1 if c.split else 2
        assert c.size == factor * expected_class_size(c.rho, n)


def test_split_classes_of_s4():
    split_types = {c.cycle_type for c in conjugacy_classes(4) if c.split}
    assert split_types == {(1, 1, 1, 1), (3, 1), (4,)}


def test_center_expansion():
    cls = conjugacy_classes(4)[2]
    assert center_expand(class_sum(cls)) == {cls: F(1)}
    with pytest.raises(NotCentralError):
        center_expand(jm(2, 3))


def test_restricted_square_is_scalar():
    identity_class = next(c for c in conjugacy_classes(3) if c.cycle_type == (1, 1, 1) and c.z_flag == 0)
    assert center_expand(jm_power_restricted(3, 1)) == {identity_class: F(3)}
    assert walk_count(3, 1) == {identity_class: 3}
    assert restrict(AlgebraElement.scalar(4, 2)) == AlgebraElement.scalar(3, 2)


def test_class_coefficients_count_closed_walks():
    for n, k in [(2, 2), (3, 2), (4, 1)]:
        expansion = center_expand(jm_power_restricted(n, k))
        counts = walk_count(n, k)
        assert set(expansion) == set(counts)
        for cls, alpha in expansion.items():
            assert alpha * cls.size == counts[cls]


def test_closed_walk_total():
    def closes(seq, n):
        perm = identity_perm(n + 1)
        for i in seq:
            swap = list(identity_perm(n + 1))
            swap[i - 1], swap[n] = n + 1, i
            perm = compose(perm, tuple(swap))
        return perm[n] == n + 1

    expected = sum(1 for seq in product(range(1, 4), repeat=4) if closes(seq, 3))
    assert sum(walk_count(3, 2).values()) == expected
