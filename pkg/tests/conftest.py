import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stlattice.constructors import antichain, chain, fig3, linear_sum, m3, m_n, m_nn, n5, product

FIXTURES = Path(__file__).parent / "fixtures"


def zoo():
    """Named small lattices shared by the property suites."""
    return {
        "chain1": chain(1),
        "chain4": chain(4),
        "n5": n5(),
        "m3": m3(),
        "fig3": fig3(),
        "m4": m_n(4),
        "mnn3": m_nn(3)[0],
        "mnn4": m_nn(4)[0],
        "2x3": product(chain(2), chain(3)),
        "bool3": product(product(chain(2), chain(2)), chain(2)),
        "m3x2": product(m3(), chain(2)),
        "n5x2": product(n5(), chain(2)),
        "n5+m3": linear_sum(n5(), m3()),
        "1+3+1+2+1": linear_sum(chain(1), antichain(3), chain(1), antichain(2, "y"), chain(1)),
    }


@pytest.fixture(scope="session")
def lattice_zoo():
    return zoo()


@pytest.fixture
def L():
    """Shorthand: mask from labels."""
    def make_mask(lat, *labels):
        return lat.mask(labels)
    return make_mask


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
