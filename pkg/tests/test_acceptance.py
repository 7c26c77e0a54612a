"""End-to-end acceptance run.

Executes the full verification suite once and reports each criterion as
its own test case; the suite itself prints one pass/fail line per
criterion (run with -s to see them live).
"""

import os

import pytest

from kellerpack.acceptance import CRITERIA, run_all


@pytest.fixture(scope="module")
def results():
    jobs = min(4, os.cpu_count() or 1)
    return run_all(jobs=jobs, seed=0)


@pytest.mark.parametrize("index", range(len(CRITERIA)))
def test_criterion(results, index):
    res = results[index]
    assert res.passed, f"criterion {index + 1} ({res.name}): {res.detail}"
