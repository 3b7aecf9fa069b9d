"""The acceptance gate: one test per criterion, each at its stated bound.

Criteria with runtime targets enforce them; every criterion prints its
PASS/FAIL line so `pytest -s tests/test_acceptance.py` mirrors the
`lofs suite` command.
"""

import pytest

from lofs import suite


@pytest.mark.parametrize(
    "name,criterion",
    suite.CRITERIA,
    ids=[name.replace(" ", "-") for name, _ in suite.CRITERIA],
)
def test_criterion(name, criterion):
    passed, detail = criterion()
    print(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    assert passed, f"{name}: {detail}"
