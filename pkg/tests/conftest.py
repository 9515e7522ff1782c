import functools
import sys

import pytest

from hooknet.examples import DEGENERATE_SEED, LOOPED_K4_SEED
from hooknet.laws import analyze
from hooknet.seed import degree_profile, seed_from_document


@functools.lru_cache(maxsize=None)
def profile_for(name: str, m: int):
    doc = {"k4": LOOPED_K4_SEED, "degenerate": DEGENERATE_SEED}[name]
    return degree_profile(seed_from_document(doc), m)


@functools.lru_cache(maxsize=None)
def report_for(name: str, m: int):
    return analyze(profile_for(name, m))


@pytest.fixture
def unary():
    return profile_for("k4", 1)


@pytest.fixture
def binary():
    return profile_for("k4", 2)


@pytest.fixture
def ternary():
    return profile_for("k4", 3)


@pytest.fixture
def degenerate():
    return profile_for("degenerate", 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, (passed, detail) in mod.RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  [{detail}]")
