import mpmath
import pytest

from xiforge.pustylnikov import xi_coeff_table
from xiforge.specfun import SpecFunContext

P = 30


@pytest.fixture(scope="session")
def ctx():
    return SpecFunContext(P)


@pytest.fixture(scope="session")
def table(ctx):
    """Depth-200 coefficient table at 30 digits, shared by the whole run."""
    return xi_coeff_table(200, ctx, workers=4)


def close(a, b, tol):
    a = getattr(a, "value", a)
    b = getattr(b, "value", b)
    with mpmath.workdps(60):
        return abs(mpmath.mpmathify(a) - mpmath.mpmathify(b)) <= mpmath.mpf(tol)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
