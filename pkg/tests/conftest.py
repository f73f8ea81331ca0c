import functools

import pytest

from klrdual.catalog import ambient_A, ambient_B, duality_datum

# criterion number -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def datum(name, ell):
    return duality_datum(name, ell, check=False)


@pytest.fixture(scope="session")
def A3():
    return ambient_A(3)


@pytest.fixture(scope="session")
def B3():
    return ambient_B(3)


@pytest.fixture(scope="session")
def dD():
    return datum("D", 4)


@pytest.fixture(scope="session")
def dC():
    return datum("C", 3)


@pytest.fixture(scope="session")
def dB1():
    return datum("B1", 3)


@pytest.fixture(scope="session")
def dB2():
    return datum("B2", 4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line("criterion %2d: %s  %s" % (k, "PASS" if ok else "FAIL", detail))
