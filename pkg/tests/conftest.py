import random

import pytest

from iovauth.bilinear import group_by_name


@pytest.fixture(scope="session")
def tiny():
    return group_by_name("TINY")


@pytest.fixture(scope="session")
def medium():
    return group_by_name("MEDIUM")


@pytest.fixture(scope="session")
def a160():
    return group_by_name("A160")


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_configure(config):
    config._acceptance = []


@pytest.fixture
def criterion(request):
    """Record and print one PASS/FAIL line for an acceptance criterion."""
    def record(number, title, ok, detail=""):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        request.config._acceptance.append((number, line))
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if config._acceptance:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(config._acceptance):
            terminalreporter.write_line(line)
