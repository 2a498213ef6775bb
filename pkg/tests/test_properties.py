import pytest

from matbispec.properties import SUITES, run_suite

SLOW = {"compose-x", "compose-z"}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes(name):
    res = run_suite(name, 3 if name in SLOW else 8, 123)
    assert res.passed, res.to_json()


def test_results_are_seed_deterministic():
    a = run_suite("formulation-equivalence", 10, 5).to_json()
    assert a == run_suite("formulation-equivalence", 10, 5).to_json()


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 1, 0)
