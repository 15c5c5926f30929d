import functools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from acrkit.acrdetect import analyze
from acrkit.netmodel import load_network, steady_state_ideal

NETWORKS = Path(__file__).resolve().parent.parent / "networks"

ACCEPTANCE_LINES = []


def network_path(name: str) -> str:
    return str(NETWORKS / f"{name}.crn")


@functools.lru_cache(maxsize=None)
def network(name: str):
    return load_network(network_path(name))


@functools.lru_cache(maxsize=None)
def ideal(name: str):
    return steady_state_ideal(network(name))


@functools.lru_cache(maxsize=None)
def report(name: str):
    return analyze(network(name))


def random_rates(net, seed: int):
    """Seeded random positive rationals, one per reaction."""
    rnd = random.Random(seed)
    return [Fraction(rnd.randint(1, 20), rnd.randint(1, 10)) for _ in net.reactions]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL for an acceptance criterion; the test body runs inside ``with criterion(n, text):``."""
    import contextlib

    @contextlib.contextmanager
    def run(number: int, text: str):
        try:
            yield
        except BaseException:
            line = f"CRITERION {number:2d} FAIL  {text}"
            ACCEPTANCE_LINES.append(line)
            print(line)
            raise
        line = f"CRITERION {number:2d} PASS  {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return run
