import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crooked import gf2m, vbf  # noqa: E402
from crooked.formats import random_function  # noqa: E402

ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def ctx3():
    return gf2m.field_new(3)


@pytest.fixture(scope="session")
def ctx5():
    return gf2m.field_new(5)


@pytest.fixture(scope="session")
def ctx7():
    return gf2m.field_new(7)


@pytest.fixture(scope="session")
def cube3(ctx3):
    return vbf.from_power(ctx3, 3)


@pytest.fixture(scope="session")
def identity3(ctx3):
    return vbf.VectorialFunction.from_table(ctx3, range(8))


@pytest.fixture(scope="session")
def random_tables3(ctx3):
    rng = np.random.default_rng(20240611)
    return [random_function(ctx3, rng) for _ in range(1000)]


@pytest.fixture(scope="session")
def warm_kernels(ctx3, cube3):
    """Run every kernel once so JIT compilation is not billed to timed checks."""
    from crooked import codes, graphs

    vbf.is_crooked(cube3, "definitional")
    vbf.is_crooked(cube3, "hyperplane")
    codes.preparata_min_distance(codes.preparata_enumerate(cube3))
    G = graphs.build_crooked_graph(cube3)
    graphs.distance_regularity(G)
    graphs.two_common_neighbours(G)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
