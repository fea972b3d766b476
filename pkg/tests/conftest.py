import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=50, deadline=None)
settings.load_profile("ci")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line for the terminal summary."""

    def record(tag, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def brute_force_wigner(rho):
    """Direct double loop over (m, mu) and n; no vectorization shared with the package."""
    d = rho.shape[0]
    w = np.zeros((d, d), dtype=complex)
    for m in range(d):
        for mu in range(d):
            for n in range(d):
                w[m, mu] += np.exp(-4j * np.pi * mu * n / d) * rho[(m - n) % d, (m + n) % d]
    return w / d
