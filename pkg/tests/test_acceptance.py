"""Top-level acceptance run: every shipped criterion must hold.

The suite is executed once per test session; each criterion then gets its
own test so a failure names the criterion directly and carries the
formatted one-line report as the assertion message.
"""

import pytest

from semiflux.acceptance import CRITERIA, run_all


@pytest.fixture(scope="module")
def results():
    return run_all()


def test_every_criterion_is_covered(results):
    assert len(results) == len(CRITERIA) == 12
    assert [r.index for r in results] == list(range(1, 13))


@pytest.mark.parametrize("index", range(1, 13), ids=[name for name, _ in CRITERIA])
def test_criterion(results, index):
    r = results[index - 1]
    assert r.passed, r.line()


def test_report_lines_are_well_formed(results):
    for r in results:
        line = r.line()
        assert line.startswith("[PASS]") or line.startswith("[FAIL]")
        assert r.name in line
        assert "require" in line


def test_results_serialize_without_numpy_leakage(results):
    import json

    text = json.dumps([r.to_dict() for r in results])
    assert "pairing-table" in text


def test_parallel_run_matches_serial(results):
    parallel = run_all(max_workers=4)
    for a, b in zip(results, parallel):
        assert a.passed == b.passed
        assert a.measured == b.measured
