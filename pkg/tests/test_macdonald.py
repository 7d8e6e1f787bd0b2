from fractions import Fraction

import pytest

from bratteli.branching import BranchingParams
from bratteli.errors import CapExceededError, DomainError, InvalidAlphabetError
from bratteli.macdonald import (
    Alphabet,
    Distribution,
    MacdonaldContext,
    eval_P,
    measure,
    principal_specialization,
    psi_horizontal,
    transition_probabilities,
    verify_normalization,
    verify_pieri,
)
from bratteli.oracles import schur_tableau_sum
from bratteli.partitions import EMPTY, enumerate_partitions, syt_count

from conftest import P

F = Fraction
HALF = F(1, 2)


def test_alphabet_parsing():
    assert Alphabet.parse("1/2,1/2").values == (HALF, HALF)
    assert Alphabet.parse("geometric:3").p == 3
    with pytest.raises(InvalidAlphabetError):
        Alphabet.parse("1/2,1/3")
    with pytest.raises((InvalidAlphabetError, ValueError)):
        Alphabet.parse("0.5,0.5")
    with pytest.raises((InvalidAlphabetError, ValueError)):
        Alphabet.parse("geometric:1")


def test_eval_P_small(qt, formal):
    q, t = qt
    x1, x2 = F(1, 3), F(2, 3)
    assert eval_P(P(1), (x1, x2), formal) == x1 + x2
    params = BranchingParams.numeric(F(1, 3), F(1, 5))
    assert eval_P(P(1, 1), (HALF, HALF), params) == F(1, 4)
    qq, tt = params.q, params.t
    expected = x1 ** 2 + x2 ** 2 + (1 + qq) * (1 - tt) / (1 - qq * tt) * x1 * x2
    assert eval_P(P(2), (x1, x2), params) == expected
    schur = BranchingParams.numeric(HALF, HALF)
    assert eval_P(P(2), (x1, x2), schur) == x1 ** 2 + x1 * x2 + x2 ** 2


def test_eval_P_symmetric_in_letters():
    params = BranchingParams.numeric(F(1, 3), F(1, 2))
    a, b = (F(1, 5), F(3, 10), F(1, 2)), (F(1, 2), F(1, 5), F(3, 10))
    for lam in enumerate_partitions(4):
        assert eval_P(lam, a, params) == eval_P(lam, b, params)


def test_schur_values_match_tableaux():
    letters = (F(2, 5), F(3, 10), F(1, 5), F(1, 10))
    params = BranchingParams.numeric(F(1, 3), F(1, 3))
    for lam in enumerate_partitions(4):
        assert eval_P(lam, letters, params) == schur_tableau_sum(lam, letters)


def test_psi_horizontal_trivial(formal):
    assert psi_horizontal(P(1), EMPTY, formal) == 1
    assert psi_horizontal(P(2, 1), P(2, 1), formal) == 1


def test_principal_specialization(formal):
    t = formal.t
    assert principal_specialization(P(1), formal) == 1 / (1 - t)
    assert principal_specialization(EMPTY, formal) == 1
    hl = BranchingParams.hall_littlewood(2)
    assert principal_specialization(P(1, 1), hl) == F(4, 3)


def test_principal_specialization_matches_finite_truncation():
    params = BranchingParams.numeric(F(1, 3), F(1, 2))
    letters = tuple(params.t ** i for i in range(4))
    for lam in enumerate_partitions(4):
        assert eval_P(lam, letters, params) == principal_specialization(lam, params, n_vars=4)


def test_geometric_alphabet_off_diagonal_ratio():
    # ratio 1/3 with t = 1/2: the peeling recursion, checked against a long truncation bound
    params = BranchingParams.numeric(F(1, 3), F(1, 2))
    ctx = MacdonaldContext(params, Alphabet.geometric(3))
    r = F(1, 3)
    letters = tuple((1 - r) * r ** i for i in range(8))
    exact = ctx.P(P(1, 1))
    approx = eval_P(P(1, 1), letters, params)
    assert 0 < exact - approx < F(1, 10 ** 3)


def test_measure_examples():
    assert measure(1, Alphabet.geometric(2), BranchingParams.hall_littlewood(2)).entries == {P(1): 1}
    for p in (2, 3, 5):
        m = measure(2, Alphabet.geometric(p), BranchingParams.hall_littlewood(p))
        assert m[P(1, 1)] == F(1, p) and m[P(2)] == F(p - 1, p)
    for c in (F(1, 3), HALF):
        m = measure(2, Alphabet.finite([HALF, HALF]), BranchingParams.numeric(c, c))
        assert m[P(2)] == F(3, 4) and m[P(1, 1)] == F(1, 4)


def test_measure_schur_is_s_times_f():
    x = Alphabet.finite([F(1, 5), F(3, 10), F(1, 2)])
    m = measure(4, x, BranchingParams.numeric(F(1, 3), F(1, 3)))
    for lam, value in m.items():
        assert value == schur_tableau_sum(lam, x.values) * syt_count(lam)


def test_transition_probabilities():
    hl = BranchingParams.hall_littlewood(2)
    probs = transition_probabilities(EMPTY, Alphabet.geometric(2), hl)
    assert list(probs.values()) == [1]
    probs = transition_probabilities(P(1), Alphabet.geometric(2), hl)
    assert {s.child: v for s, v in probs.items()} == {P(1, 1): HALF, P(2): HALF}
    probs = transition_probabilities(P(1), Alphabet.finite([HALF, HALF]), BranchingParams.numeric(HALF, HALF))
    assert sum(probs.values()) == 1
    assert {s.child: v for s, v in probs.items()} == {P(1, 1): F(1, 4), P(2): F(3, 4)}


def test_zero_probability_steps_are_kept():
    probs = transition_probabilities(P(1), Alphabet.finite([1]), BranchingParams.numeric(HALF, HALF))
    assert {s.child: v for s, v in probs.items()} == {P(1, 1): 0, P(2): 1}
    with pytest.raises(DomainError):
        transition_probabilities(P(1, 1), Alphabet.finite([1]), BranchingParams.numeric(HALF, HALF))


def test_pieri_and_normalization_small():
    params = BranchingParams.numeric(F(1, 3), F(1, 2))
    for a in ("1/2,1/2", "geometric:2"):
        assert verify_pieri(4, params, Alphabet.parse(a)).ok
        assert verify_normalization(4, params, Alphabet.parse(a)).ok


def test_distribution_serialization():
    m = measure(2, Alphabet.geometric(2), BranchingParams.hall_littlewood(2))
    data = m.to_json()
    assert data["entries"] == [{"partition": [2], "prob": "1/2"}, {"partition": [1, 1], "prob": "1/2"}]
    assert m.to_csv().splitlines()[0] == "partition,prob,approx"
    with pytest.raises(ValueError):
        Distribution(2, {P(3): 1})


def test_measure_cap():
    ctx = MacdonaldContext(BranchingParams.hall_littlewood(2), Alphabet.geometric(2), cap=5)
    with pytest.raises(CapExceededError):
        ctx.measure(6)
