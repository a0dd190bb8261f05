import pytest

from nthprime.oracle import primes_upto

P_10_7 = 179424673


@pytest.fixture(scope="session")
def oracle_primes():
    """Every prime up to p_{10^7}, from a plain full-table sieve."""
    table = primes_upto(P_10_7)
    assert table.size == 10**7
    return table


@pytest.fixture(scope="session")
def small_primes():
    return primes_upto(2 * 10**6)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
