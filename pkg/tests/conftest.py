import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from qaffine.linalg import Matrix

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_ints = st.integers(-3, 3)


@st.composite
def matrices(draw, min_rows=1, max_rows=5, min_cols=1, max_cols=5, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(min_rows, max_rows))
    c = cols if cols is not None else draw(st.integers(min_cols, max_cols))
    return Matrix([[draw(small_ints) for _ in range(c)] for _ in range(r)], r, c)


@st.composite
def square_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return draw(matrices(rows=n, cols=n))


@st.composite
def invertible_matrices(draw, n):
    M = draw(matrices(rows=n, cols=n))
    # nudge onto the diagonal until invertible; keeps shrinking sensible
    k = 0
    while not M.is_invertible():
        k += 1
        M = M + Matrix.identity(n) * Fraction(k)
    return M


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n].line())
