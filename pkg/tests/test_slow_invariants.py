"""Long-running invariants, opt-in via `pytest -m slow`."""
import pytest

from ringops.operads import check_axioms, strict_operad


@pytest.mark.slow
def test_strict_axioms_cap3():
    report = check_axioms(strict_operad(), cap=3)
    assert report.ok, report.failure
