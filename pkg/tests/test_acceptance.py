"""Acceptance gate: every reproduction criterion at its exact tolerance.

Each check prints one ``[PASS]``/``[FAIL]`` line straight to the terminal,
so the table is visible in a plain ``pytest -v`` run as well.
"""

import pytest

from sdscycle import verification

SEED = 0


@pytest.mark.parametrize("check", verification.CHECKS, ids=lambda f: f.__name__)
def test_criterion(check, capsys):
    result = check(SEED)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


@pytest.mark.parametrize("seed", [7, 123])
def test_other_seeds(seed, capsys):
    results = verification.run_all(seed)
    with capsys.disabled():
        print()
        for r in results:
            print(f"seed {seed} {r.line()}")
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]
