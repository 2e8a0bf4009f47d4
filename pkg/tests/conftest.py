import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from rwrandom.graph import Graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


def graph_from_code(n: int, code: int) -> Graph:
    """Graph whose edge set is the bit pattern ``code`` over row-major pairs."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, [e for i, e in enumerate(pairs) if (code >> i) & 1])


def random_graph(rng: np.random.Generator, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.uniform(0.05, 0.95)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = rng.random(len(pairs)) < p
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
