import random

import pytest

from simul_latency import _kernels_py

try:
    from simul_latency import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

KERNEL_BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    KERNEL_BACKENDS.append(pytest.param(_kernels_c, id="cython"))


@pytest.fixture(params=KERNEL_BACKENDS)
def kernels(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20190601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
