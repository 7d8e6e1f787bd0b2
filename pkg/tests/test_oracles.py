from fractions import Fraction

import numpy as np
import pytest

from bratteli.macdonald import Alphabet
from bratteli.oracles import (
    EnumerationTooLarge,
    MatrixFp,
    NotUnipotentError,
    charge,
    charge_word,
    enumerate_unipotent,
    jordan_distribution_exhaustive,
    jordan_type,
    jordan_types_batch,
    kostka_foulkes,
    kostka_number,
    random_unipotent,
    random_unipotent_batch,
    rank_mod_p,
    rsk_distribution,
    rsk_distribution_exhaustive,
    rsk_shape,
    schur_tableau_sum,
    semistandard_tableaux,
    young_path_count,
)
from bratteli.coeff import LaurentPoly
from bratteli.errors import NotContainedError
from bratteli.partitions import EMPTY, Partition, enumerate_partitions, syt_count
from bratteli.special import jordan_measure

from conftest import P

F = Fraction
t = LaurentPoly.monomial(0, 1)


def test_enumerate_unipotent_counts():
    assert [m.rows for m in enumerate_unipotent(1, 2)] == [((1,),)]
    assert len(list(enumerate_unipotent(2, 2))) == 2
    mats = list(enumerate_unipotent(3, 2))
    assert len(mats) == 8 and len(set(mats)) == 8
    assert all(m.is_unitriangular() for m in mats)
    with pytest.raises(EnumerationTooLarge):
        next(enumerate_unipotent(6, 3))
    with pytest.raises(ValueError):
        next(enumerate_unipotent(2, 4))


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 3) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 5) == 2


def test_jordan_type_examples():
    assert jordan_type(MatrixFp.identity(4, 3)) == P(1, 1, 1, 1)
    assert jordan_type(MatrixFp.jordan_block(5, 2)) == P(5)
    m = MatrixFp.from_rows([[1, 0, 1], [0, 1, 0], [0, 0, 1]], 2)
    assert jordan_type(m) == P(2, 1)
    with pytest.raises(NotUnipotentError):
        jordan_type(MatrixFp.from_rows([[1, 1], [0, 0]], 2))


def test_batch_matches_scalar():
    rng = np.random.default_rng(5)
    mats = random_unipotent_batch(6, 3, 300, rng)
    batch = jordan_types_batch(mats, 3)
    for m, lam in zip(mats, batch):
        assert jordan_type(MatrixFp.from_rows(m.tolist(), 3)) == lam


def test_random_unipotent_shape():
    m = random_unipotent(5, 2, np.random.default_rng(0))
    assert m.is_unitriangular() and m.to_json()[0][0] == 1


def test_jordan_exhaustive_examples():
    assert jordan_distribution_exhaustive(2, 2).entries == {P(1, 1): F(1, 2), P(2): F(1, 2)}
    assert jordan_distribution_exhaustive(2, 3).entries == {P(1, 1): F(1, 3), P(2): F(2, 3)}
    assert jordan_distribution_exhaustive(3, 2).entries == jordan_measure(3, 2).entries
    assert jordan_distribution_exhaustive(3, 2).meta["source"] == "oracle"


@pytest.mark.parametrize("word, shape", [((1, 1, 2), (3,)), ((2, 1), (1, 1)), ((1, 2, 1), (2, 1)), ((3, 2, 1), (1, 1, 1))])
def test_rsk_shape(word, shape):
    assert rsk_shape(word) == Partition(shape)


def test_rsk_permutations_give_f_squared():
    from itertools import permutations
    from collections import Counter

    counts = Counter(rsk_shape(w) for w in permutations(range(1, 6)))
    for lam in enumerate_partitions(5):
        assert counts[lam] == syt_count(lam) ** 2


def test_rsk_distribution_examples():
    half = F(1, 2)
    x = Alphabet.finite([half, half])
    assert rsk_distribution(1, x, 10, seed=1).entries == {P(1): 1}
    assert rsk_distribution_exhaustive(2, x).entries == {P(2): F(3, 4), P(1, 1): F(1, 4)}


def test_kostka_foulkes_examples():
    assert kostka_foulkes(P(2, 1), P(2, 1)) == LaurentPoly.constant(1)
    assert kostka_foulkes(P(2), P(1, 1)) == t
    assert kostka_foulkes(P(2, 1), P(1, 1, 1)) == t + t * t
    assert kostka_foulkes(P(1, 1), P(2)).is_zero()
    assert kostka_foulkes(P(3), P(1, 1, 1)) == t ** 3
    with pytest.raises(ValueError):
        kostka_foulkes(P(2), P(1))


def test_kostka_foulkes_at_one_is_kostka_number():
    for n in range(1, 7):
        for mu in enumerate_partitions(n):
            for lam in enumerate_partitions(n):
                assert kostka_foulkes(mu, lam).evaluate(1, 1) == kostka_number(mu, lam)


def test_kostka_with_standard_content_counts_syt():
    for lam in enumerate_partitions(5):
        assert kostka_number(lam, [1] * 5) == syt_count(lam)


def test_charge_of_standard_words():
    assert charge_word([1, 2, 3]) == 3
    assert charge_word([3, 2, 1]) == 0
    assert charge([[1, 2], [3]]) == 2


def test_semistandard_tableaux_are_valid():
    for tab in semistandard_tableaux(P(3, 2), max_entry=3):
        for row in tab:
            assert row == sorted(row)
        for j in range(len(tab[1])):
            assert tab[0][j] < tab[1][j]


def test_schur_tableau_sum():
    x = (F(1, 2), F(1, 2))
    assert schur_tableau_sum(P(2), x) == F(3, 4)
    assert schur_tableau_sum(P(1, 1, 1), x) == 0


def test_young_path_count():
    assert young_path_count(P(2, 1), P(2, 1)) == 1
    assert young_path_count(EMPTY, P(2, 1)) == 2
    assert young_path_count(P(1), P(2, 2)) == 2
    for n in range(9):
        for lam in enumerate_partitions(n):
            assert young_path_count(EMPTY, lam) == syt_count(lam)
    with pytest.raises(NotContainedError):
        young_path_count(P(2), P(1, 1))
