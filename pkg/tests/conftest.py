"""Shared fixtures: the built-in catalog and one cascade search per session."""
from __future__ import annotations

import pytest

from dpcascade.cascade import cascade_search
from dpcascade.catalog import builtin_catalog
from dpcascade.invariants import calibrate

TABLE1 = ("CI11", "CI12", "HS12", "CI13", "CI21", "CI22")

# criterion label -> "PASS" / "FAIL: reason", filled by test_acceptance
ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def catalog():
    calibrate()
    return builtin_catalog()


@pytest.fixture(scope="session")
def main_cascade(catalog):
    """Chains and step table for the main catalog with n <= 3, seed 0."""
    return cascade_search(catalog, n_max=3, seed=0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s[2:])):
        terminalreporter.write_line(f"{label} {ACCEPTANCE[label]}")
