import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_alternating_sums(K):
    """Every alternating sum over subsets of the positive members of K, by enumeration."""
    pos = [j for j, k in enumerate(K) if k > 0]
    out = {}
    for r in range(len(pos) + 1):
        for combo in itertools.combinations(pos, r):
            chosen = sorted(combo, reverse=True)
            val = sum(K[j] * (-1) ** t for t, j in enumerate(chosen))
            out.setdefault(val, []).append(tuple(chosen))
    return out


def brute_dyadic_count(K):
    top = max(K, default=0)
    return max((sum(1 for k in K if m <= k < 2 * m) for m in range(1, top + 1)), default=0)


def dense_hankel(a, N):
    a = list(a) + [0.0] * (2 * N)
    return np.array([[a[m + n] for n in range(N)] for m in range(N)], dtype=float)


def random_strong_set(rng, k_max=512, with_zero=True, slack=None):
    """Random K with k_{j+1} > 2 k_j and max at most k_max."""
    K = [0] if with_zero else [int(rng.integers(1, 4))]
    while True:
        extra = int(rng.integers(0, (slack if slack is not None else K[-1] + 2) + 1))
        nxt = 2 * K[-1] + 1 + extra
        if nxt > k_max:
            break
        K.append(nxt)
    return K


@st.composite
def strong_sets(draw, max_terms=7, with_zero=None):
    zero = draw(st.booleans()) if with_zero is None else with_zero
    K = [0] if zero else [draw(st.integers(1, 3))]
    for _ in range(draw(st.integers(0, max_terms - 1))):
        K.append(2 * K[-1] + 1 + draw(st.integers(0, K[-1] + 2)))
    return K


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)
