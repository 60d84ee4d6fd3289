"""Acceptance gate: every numbered criterion runs as one parametrized check.

Each case executes the corresponding seeded verification suite and prints its
one-line summary, so ``pytest tests/test_acceptance.py -v`` shows one
pass/fail line per criterion.  Failure messages carry the first few concrete
counterexamples recorded by the suite.
"""

import pytest

from padot.verify import DEFAULT_SEED, SUITES, run_suite

_CRITERIA = [(name, crit) for name, crit, _ in SUITES if crit is not None]
_MODULE = [name for name, crit, _ in SUITES if crit is None]


@pytest.mark.parametrize(
    "name,criterion",
    _CRITERIA,
    ids=[f"criterion-{crit}-{name}" for name, crit in _CRITERIA],
)
def test_acceptance_criterion(name, criterion):
    result = run_suite(name, DEFAULT_SEED)
    print(result.line())
    for note in result.notes:
        print(f"    note: {note}")
    detail = "; ".join(result.failures) or "no recorded failures"
    assert result.passed, (
        f"criterion {criterion} ({name}): {result.failure_count} of "
        f"{result.checked} checks failed: {detail}"
    )
    assert result.checked > 0


@pytest.mark.parametrize("name", _MODULE, ids=_MODULE)
def test_module_invariants(name):
    result = run_suite(name, DEFAULT_SEED)
    print(result.line())
    assert result.passed, "; ".join(result.failures)


def test_all_criteria_are_covered():
    assert sorted(crit for _, crit in _CRITERIA) == list(range(1, 10))


def test_unknown_suite_is_an_error():
    with pytest.raises(KeyError):
        run_suite("nonexistent")
