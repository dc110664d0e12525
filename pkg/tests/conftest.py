import numpy as np
import pytest

from polymono import Polynomial

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def report_criterion():
    def report(label: str, passed: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}" + (f" -- {detail}" if detail else ""))
        return passed
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_poly(rng, max_degree=7, lo=-3.0, hi=3.0) -> Polynomial:
    d = int(rng.integers(0, max_degree + 1))
    return Polynomial(rng.uniform(lo, hi, d + 1))


P1 = Polynomial([1.0, 0.0, 1.0])                       # x^2 + 1
P2 = Polynomial([3 / 8, 0.0, -15 / 4, 0.0, 35 / 8])    # fourth Legendre polynomial
P3 = Polynomial([0.0, 3.0, -2.0, 0.0, 0.0, 1 / 5])     # x^5/5 - 2x^2 + 3x
F4 = Polynomial([0.0, 0.7, 0.32])                      # reach dynamics
