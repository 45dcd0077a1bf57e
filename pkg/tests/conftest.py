import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from socialstore.model import Network, Params, SocialRangeMatrix, n_pairs, perceived_utility

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# independent oracle: compare perceived utilities before and after the toggle


def brute_mutual_gain(net, F, p, i, j):
    after = net.toggled(i, j)
    return (
        perceived_utility(after, F, p, i) > perceived_utility(net, F, p, i)
        and perceived_utility(after, F, p, j) > perceived_utility(net, F, p, j)
    )


def brute_stable(net, F, p):
    return not any(brute_mutual_gain(net, F, p, i, j) for i, j in itertools.combinations(range(net.n_agents), 2))


def all_networks(n):
    return [Network(n, m) for m in range(1 << n_pairs(n))]


# ---------------------------------------------------------------------------
# strategies

unit = st.floats(min_value=1e-3, max_value=0.999, allow_nan=False)


@st.composite
def params(draw):
    return Params(draw(unit), draw(unit), draw(st.floats(min_value=0.01, max_value=0.99)))


@st.composite
def matrices(draw, n=None, min_n=2, max_n=6):
    n = n or draw(st.integers(min_n, max_n))
    off = st.floats(min_value=-2, max_value=2, allow_nan=False)
    rows = [[0.0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = draw(st.floats(min_value=0.01, max_value=2))
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = draw(off)
    return SocialRangeMatrix(rows)


@st.composite
def networks(draw, n):
    return Network(n, draw(st.integers(0, (1 << n_pairs(n)) - 1)))


def random_matrix(rng: np.random.Generator, n: int) -> SocialRangeMatrix:
    a = rng.uniform(-1.5, 1.5, size=(n, n))
    a = np.triu(a, 1)
    a = a + a.T
    np.fill_diagonal(a, rng.uniform(0.05, 1.0, size=n))
    return SocialRangeMatrix(a.tolist())
