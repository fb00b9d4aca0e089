import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("desk", max_examples=25, deadline=None)
settings.load_profile("desk")

# points inside the fundamental domain
FD_POINTS = (1j, 0.3 + 0.9j + 0.1j, -0.25 + 1.4j, 0.45 + 1.05j, -0.1 + 2.2j)
GRID3 = (1j, 0.3 + 0.9j, -0.25 + 1.4j)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
