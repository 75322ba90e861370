import os
from itertools import permutations, product

import pytest
from hypothesis import strategies as st

from signedstats.signed_perm import SignedPermutation

EXTENDED = os.environ.get("SIGNEDSTATS_EXTENDED") == "1"

extended = pytest.mark.skipif(not EXTENDED, reason="set SIGNEDSTATS_EXTENDED=1 for n = 8 runs")


def all_signed(n):
    """B_n by brute force, independent of enumerate_group."""
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield SignedPermutation(tuple(s * a for s, a in zip(signs, perm)))


@st.composite
def signed_perms(draw, min_n=1, max_n=7, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return SignedPermutation(tuple(-a if s else a for a, s in zip(perm, signs)))


# one line per acceptance criterion, printed after the test run
ACCEPTANCE_REPORT: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_REPORT:
            terminalreporter.write_line(line)
