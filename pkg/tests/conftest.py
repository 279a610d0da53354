import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from grassmann_star import GrassmannElement

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_INT = st.integers(-3, 3)
GAUSSIAN_INT = st.builds(complex, SMALL_INT, SMALL_INT)


@st.composite
def elements(draw, n: int, coeffs=GAUSSIAN_INT, parity: int | None = None):
    """Random element with small Gaussian-integer coefficients, so products are exact."""
    masks = range(4**n)
    if parity is not None:
        masks = [m for m in masks if bin(m).count("1") % 2 == parity]
    chosen = draw(st.lists(st.sampled_from(list(masks)), max_size=4**n, unique=True))
    return GrassmannElement(n, {m: draw(coeffs) for m in chosen})


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
