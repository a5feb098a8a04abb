import sys

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")


def S(n, p, q):
    """Symmetric basis matrix ``e_p e_q^T + e_q e_p^T`` (zero-based)."""
    M = np.zeros((n, n))
    M[p, q] += 1.0
    M[q, p] += 1.0
    return M


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
