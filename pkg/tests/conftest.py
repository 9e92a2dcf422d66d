from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import gsc

DATA = Path(__file__).parent / "data"
IRIS = DATA / "iris.csv"


def random_digraph(rng, n, density=0.4, weighted=True):
    w = (rng.random((n, n)) < density) * (rng.random((n, n)) + 0.1 if weighted else 1.0)
    return gsc.from_adjacency(w)


def random_measure(rng, n, zeros=False):
    v = rng.random(n) + (0.0 if zeros else 0.05)
    if zeros:
        v[rng.random(n) < 0.3] = 0.0
        v[rng.integers(n)] = 1.0
    return gsc.VertexMeasure(v)


def clique_union(sizes, rng=None, shuffle=False):
    """Disjoint union of complete graphs (no self-loops) and its component labels."""
    n = sum(sizes)
    w = np.zeros((n, n))
    labels = np.repeat(np.arange(len(sizes)), sizes)
    if shuffle:
        labels = rng.permutation(labels)
    same = labels[:, None] == labels[None, :]
    w[same] = 1.0
    np.fill_diagonal(w, 0.0)
    return gsc.from_adjacency(w), labels


@st.composite
def adjacency(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    mask = draw(arrays(bool, (n, n)))
    vals = draw(arrays(float, (n, n), elements=st.floats(0.01, 10.0)))
    return np.where(mask, vals, 0.0)


@st.composite
def graph_and_measure(draw, max_n=8):
    w = draw(adjacency(max_n=max_n))
    n = w.shape[0]
    nu = draw(arrays(float, n, elements=st.one_of(st.just(0.0), st.floats(1e-3, 5.0))))
    if not np.any(nu > 0):
        nu[0] = 1.0
    return gsc.from_adjacency(w), gsc.VertexMeasure(nu)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def iris():
    return gsc.load_csv(IRIS, label_column=-1)


ACCEPTANCE = []


def report(criterion, passed, detail):
    """Record one acceptance line; printed in the terminal summary.

    ``passed=None`` marks a purely informational line.
    """
    status = "INFO" if passed is None else ("PASS" if passed else "FAIL")
    ACCEPTANCE.append(f"[{status}] criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
