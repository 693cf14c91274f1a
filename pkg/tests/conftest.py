import pytest
from hypothesis import settings
from hypothesis import strategies as st

from ddisr.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# acceptance criteria append (label, passed, detail) here; printed at the end of the run
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


@st.composite
def graphs(draw, min_n=0, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected and n > 1:
        # chain every vertex to a random earlier one
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            if (u, v) not in chosen:
                chosen.append((u, v))
    return Graph.from_edges(n, chosen)


@st.composite
def trees(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    return Graph.from_edges(n, edges)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
