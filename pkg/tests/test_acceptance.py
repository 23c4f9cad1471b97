"""Acceptance gate: every shipped criterion must pass at its stated tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
failure report); the CLI ``suite`` subcommand prints the same matrix.
"""

import pytest

from favard.acceptance import CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{c.index:02d}-{c.name}" for c in CRITERIA])
def test_criterion(criterion):
    result = criterion.run(seed=DEFAULT_SEED)
    print(result.line())
    assert result.passed, f"criterion {result.index} ({result.name}): {result.detail}"
    assert result.within_time, (
        f"criterion {result.index} ({result.name}) took {result.seconds:.2f}s, "
        f"limit {result.time_limit}s"
    )
