from fractions import Fraction

import pytest

from bratteli.branching import (
    BranchingParams,
    GrowthPath,
    clear_dimension_cache,
    dimension,
    exchangeability_constant,
    interval_dimension,
    kappa,
    kappa_second_form,
    path_weight,
    psi_prime,
    verify_coherence,
    verify_exchangeability,
    verify_kappa_forms,
)
from bratteli.errors import DomainError, NotContainedError
from bratteli.macdonald import Alphabet
from bratteli.partitions import EMPTY, cover_step, enumerate_partitions, paths_between

from conftest import P

F = Fraction


def step(a, b):
    return cover_step(a, b)


def test_params_domain():
    with pytest.raises(DomainError):
        BranchingParams.numeric(1, F(1, 2))
    with pytest.raises(DomainError):
        BranchingParams.numeric(0, 0)
    assert BranchingParams.hall_littlewood(3) == BranchingParams.numeric(0, F(1, 3))


def test_kappa_examples(qt, formal):
    q, t = qt
    assert kappa(step(EMPTY, P(1)), formal) == 1
    assert kappa(step(P(1), P(1, 1)), formal) == (1 + t) / t
    assert kappa(step(P(1), P(2)), formal) == 1 + q


def test_kappa_second_form_examples(qt, formal):
    q, t = qt
    assert kappa_second_form(step(EMPTY, P(1)), formal) == 1
    assert kappa_second_form(step(P(2), P(2, 1)), formal) == (1 - q * t ** 2) / (t * (1 - q * t))
    assert kappa_second_form(step(P(1, 1), P(2, 1)), formal) == (1 - q ** 2 * t) / (1 - q * t)


def test_kappa_forms_agree_numerically():
    params = BranchingParams.numeric(F(1, 3), F(1, 2))
    assert verify_kappa_forms(7, params).ok


def test_psi_prime_examples(qt, formal):
    q, t = qt
    assert psi_prime(step(EMPTY, P(1)), formal) == 1
    assert psi_prime(step(P(1), P(2)), formal) == 1
    assert psi_prime(step(P(1), P(1, 1)), formal) == (1 - t ** 2) * (1 - q) / ((1 - q * t) * (1 - t))


def test_dimension_examples(qt, formal):
    q, t = qt
    assert dimension(EMPTY, formal) == 1
    assert dimension(P(2), formal) == 1 + q
    assert dimension(P(1, 1), formal) == (1 + t) / t
    schur = BranchingParams.formal_schur()
    assert dimension(P(2, 1), schur) == 2 * (1 + q + q ** 2) / q


def test_dimension_equals_sum_of_path_weights():
    params = BranchingParams.numeric(F(1, 3), F(1, 2))
    for lam in enumerate_partitions(5):
        total = sum(path_weight(p, params) for p in paths_between(EMPTY, lam))
        assert total == dimension(lam, params)


def test_interval_dimension():
    params = BranchingParams.numeric(F(1, 2), F(1, 2))
    assert interval_dimension(P(2, 1), P(2, 1), params) == 1
    assert interval_dimension(EMPTY, P(3, 1), params) == dimension(P(3, 1), params)
    brute = sum(path_weight(p, params) for p in paths_between(P(1), P(2, 1)))
    assert interval_dimension(P(1), P(2, 1), params) == brute
    with pytest.raises(NotContainedError):
        interval_dimension(P(2), P(1, 1), params)


def test_exchangeability_examples(formal):
    r = verify_exchangeability(P(1), formal)
    assert r.ok and r.checked_count == 1
    r = verify_exchangeability(P(2, 1), formal)
    assert r.ok and r.checked_count == 2
    r = verify_exchangeability(P(2, 2), BranchingParams.numeric(F(1, 3), F(1, 2)))
    assert r.ok and r.checked_count == 2


def test_exchangeability_detects_corruption(formal):
    def broken(s, params):
        return kappa(s, params) * (2 if s.col == 2 else 1)

    r = verify_exchangeability(P(2, 1), formal, kappa_fn=broken)
    assert not r.ok
    assert r.counterexample["path"]


def test_exchangeability_constant_matches_path(formal):
    for lam in enumerate_partitions(4):
        path = next(iter(paths_between(EMPTY, lam)))
        value = formal.one
        for s in path:
            value *= psi_prime(s, formal) / kappa(s, formal)
        assert value == exchangeability_constant(lam, formal)


def test_coherence_examples():
    assert verify_coherence(1, BranchingParams.numeric(0, F(1, 2)), Alphabet.geometric(2)).ok
    r = verify_coherence(3, BranchingParams.numeric(0, F(1, 2)), Alphabet.geometric(2))
    assert r.ok and r.checked_count == 2
    r = verify_coherence(5, BranchingParams.numeric(F(1, 2), F(1, 2)), Alphabet.finite([F(1, 2), F(1, 2)]))
    assert r.ok and r.checked_count == 5


def test_coherence_detects_corruption():
    def broken(s, params):
        return kappa(s, params) * (F(3, 2) if s.parent == P(1) and s.col == 1 else 1)

    r = verify_coherence(3, BranchingParams.numeric(F(1, 3), F(1, 2)), Alphabet.geometric(2), kappa_fn=broken)
    assert not r.ok


def test_growth_path():
    path = GrowthPath.from_columns([1, 2, 1])
    assert path.endpoint == P(2, 1)
    assert path.columns == [1, 2, 1]
    assert path.partitions[0] == EMPTY
    with pytest.raises(ValueError):
        GrowthPath.from_columns([2])


def test_dimension_cache_clears():
    params = BranchingParams.numeric(F(1, 5), F(1, 7))
    before = dimension(P(3, 2), params)
    clear_dimension_cache()
    assert dimension(P(3, 2), params) == before
