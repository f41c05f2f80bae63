"""
Quantum matrices: determinant, minors, bialgebra maps and mu*_q
"""
import pytest

from src.algebra.qmatrix import (
    MinorIndex,
    bialgebra_for,
    counit,
    create_bialgebra,
    delta,
    detgen_rank_le1,
    is_central,
    mu_q_star,
    permutation_length,
    qdet,
    qminor,
)
from src.utils.errors import MinorIndexError, PresentationError


def test_qdet_n2_text():
    assert str(qdet(2)) == "X[1,1]*X[2,2] - q*X[1,2]*X[2,1]"


def test_qdet_n1_is_the_generator():
    assert str(qdet(1)) == "X[1,1]"


@pytest.mark.parametrize("n", [2, 3])
def test_qdet_is_central(n):
    assert is_central(qdet(n))


def test_generator_is_not_central(m2):
    assert not is_central(m2.gen("X[1,1]"))


def test_full_minor_is_qdet(b3):
    assert b3.qminor(MinorIndex((1, 2, 3), (1, 2, 3))) == b3.qdet()


def test_single_entry_minor(b2):
    assert qminor(MinorIndex((1,), (2,)), 2) == b2.X(1, 2)


def test_two_by_two_minor_of_m3(b3, q):
    expected = b3.X(1, 1) * b3.X(2, 3) - (b3.X(1, 3) * b3.X(2, 1)).scale(q)
    assert b3.qminor(MinorIndex((1, 2), (1, 3))) == expected


@pytest.mark.parametrize("I,J", [((1, 1), (1, 2)), ((1,), (1, 2)), ((), ()), ((2, 1), (1, 2)), ((1, 3), (1, 2))])
def test_bad_minor_indices(b2, I, J):
    with pytest.raises(MinorIndexError):
        b2.qminor(MinorIndex(I, J))


def test_permutation_length():
    assert permutation_length([1, 2, 3]) == 0
    assert permutation_length([2, 1]) == 1
    assert permutation_length([3, 2, 1]) == 3


def test_delta_of_generator(b2):
    expected = b2.tensor(b2.X(1, 1), b2.X(1, 1)) + b2.tensor(b2.X(1, 2), b2.X(2, 1))
    assert delta(b2.X(1, 1)) == expected


def test_counit_of_generators(b2):
    assert counit(b2.X(1, 1)).is_one()
    assert counit(b2.X(1, 2)).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_counit_of_minors_is_kronecker(n):
    b = create_bialgebra(n)
    for t in range(1, n + 1):
        for index in b.all_minors(t):
            value = b.counit(b.qminor(index))
            if index.I == index.J:
                assert value.is_one(), str(index)
            else:
                assert value.is_zero(), str(index)


@pytest.mark.parametrize("n", [2, 3])
def test_qdet_is_grouplike(n):
    b = create_bialgebra(n)
    d = b.qdet()
    assert b.delta(d) == b.tensor(d, d)
    assert b.counit(d).is_one()


def test_delta_and_counit_are_homomorphisms(b2):
    assert b2.delta_hom.verify()
    assert b2.counit_hom.verify()


def test_coassociativity(b2):
    assert b2.coassociativity_failures() == []


def test_mu_star_of_corner_entry(b2):
    assert str(mu_q_star(2, b2.X(1, 1))) == "X[1,1]@1*X[1,1]@2"


def test_mu_star_kills_out_of_range_entries(b2):
    assert mu_q_star(1, b2.X(1, 1)).is_zero()


@pytest.mark.parametrize("n,t", [(2, 2), (3, 2), (3, 3)])
def test_mu_star_annihilates_minors_of_size_t(n, t):
    b = create_bialgebra(n)
    for index in b.all_minors(t):
        assert b.mu_q_star(t, b.qminor(index)).is_zero(), str(index)


def test_mu_star_bad_t(b2):
    with pytest.raises(MinorIndexError):
        b2.mu_q_star(3, b2.X(1, 1))


def test_detgen_rank_le1(b2):
    gens = detgen_rank_le1([1], [], 2)
    assert gens[0] == b2.qdet()
    assert gens[1:] == [b2.X(1, 1), b2.X(1, 2)]


def test_detgen_columns(b3):
    gens = b3.detgen_rank_le1([], [2])
    assert len(gens) == 9 + 3
    assert gens[9:] == [b3.X(1, 2), b3.X(2, 2), b3.X(3, 2)]


def test_non_matrix_algebra_rejected(plane):
    with pytest.raises(PresentationError):
        bialgebra_for(plane)


def test_bialgebra_is_cached(m2, b2):
    assert bialgebra_for(m2) is b2
