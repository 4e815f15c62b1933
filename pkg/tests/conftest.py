import numpy as np
import pytest

from pareto_descent.geometry import Kind, ManifoldDescriptor

ALL_KINDS = list(Kind)
VECTOR_KINDS = [Kind.EUCLIDEAN, Kind.OCTANT, Kind.HYPERCUBE]
FLAT_CURVED_KINDS = [Kind.OCTANT, Kind.HYPERCUBE]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def man(kind, n=3):
    return ManifoldDescriptor(kind, n)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
