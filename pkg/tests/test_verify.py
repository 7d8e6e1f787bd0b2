from fractions import Fraction

import pytest

from bratteli.branching import BranchingParams, kappa
from bratteli.macdonald import Alphabet
from bratteli.verify import REGISTRY, coherence_upto, default_grid, green_charge, jack_limit, verify_suite


def corrupted_kappa(step, params):
    value = kappa(step, params)
    return value * 2 if step.parent == (2, 1) and step.col == 2 else value


def test_registry_names():
    assert set(REGISTRY) == {
        "coherence", "exchangeability", "pieri", "kappa-forms",
        "green-charge", "hook-dim", "relative-dim", "jack-limit",
    }


def test_default_grid_size():
    assert len(default_grid()) == 24


def test_suite_small_is_ok():
    report = verify_suite(3)
    assert report.ok
    assert report.checked_count > 0
    assert all(run["status"] == "ok" for run in report.details["runs"])


def test_suite_rejects_large_cap():
    with pytest.raises(ValueError):
        verify_suite(9)


def test_suite_negative_control():
    report = verify_suite(4, kappa_fn=corrupted_kappa)
    assert report.status == "violated"
    assert report.counterexample["sub_identity"] in ("exchangeability", "coherence")


def test_coherence_negative_control():
    params = BranchingParams.numeric(Fraction(1, 3), Fraction(1, 2))
    report = coherence_upto(4, params, Alphabet.geometric(2), kappa_fn=corrupted_kappa)
    assert not report.ok
    # broken dimensions already spoil the normalization at level 4
    assert report.counterexample.get("level") == 4 or report.counterexample.get("partition") == [2, 1]


def test_green_charge_and_jack_small():
    assert green_charge(4).ok
    report = jack_limit(3)
    assert report.ok and report.details["max_error_at_smallest_eps"] < 0.01
