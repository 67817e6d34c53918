import sys
import numpy as np
import pytest

from rsdlab import _purepy
from rsdlab.poincare import LTFamily
from rsdlab.transforms import EvalGrid, default_grid

try:
    from rsdlab import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = [pytest.param(_purepy, id="python")]
if _kernels is not None:
    BACKENDS.append(pytest.param(_kernels, id="cython"))

THETAS = [round(0.1 * i, 1) for i in range(1, 10)]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def phi1():
    return LTFamily.from_k(1)


@pytest.fixture
def phi2():
    return LTFamily.from_k(2)


@pytest.fixture
def grid():
    return default_grid()


@pytest.fixture
def unit_s():
    return np.linspace(0.0, 1.0, 101)


@pytest.fixture
def nonneg50():
    return EvalGrid.nonnegative(50.0, 501)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
