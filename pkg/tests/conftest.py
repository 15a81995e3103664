import functools
import time

import numpy as np
import pytest

from cayley_census import classify
from cayley_census.graphs import Graph
from cayley_census.group import PermutationGroup
from cayley_census.perm import Permutation


def symmetric(n: int) -> PermutationGroup:
    cyc = Permutation(list(range(1, n)) + [0])
    return PermutationGroup([cyc, Permutation.from_cycles(n, (1, 2))], degree=n)


def alternating(n: int) -> PermutationGroup:
    gens = [Permutation.from_cycles(n, (1, 2, k)) for k in range(3, n + 1)]
    return PermutationGroup(gens, degree=n)


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return Graph.from_edges(n, np.stack([iu[0][keep], iu[1][keep]], axis=1))


def relabel(g: Graph, phi: np.ndarray) -> Graph:
    return Graph.from_edges(g.n, phi[g.edges()])


@functools.lru_cache(maxsize=None)
def _full_report():
    t = time.perf_counter()
    rep = classify.run_all()
    return rep, time.perf_counter() - t


@functools.lru_cache(maxsize=None)
def _main_case():
    return classify.run_case("M12:2/M11/S4")


@pytest.fixture(scope="session")
def report():
    """The complete census report (about half a minute)."""
    return _full_report()[0]


@pytest.fixture(scope="session")
def report_seconds():
    return _full_report()[1]


@pytest.fixture(scope="session")
def main_case():
    return _main_case()


@pytest.fixture(scope="session")
def acceptance_graphs(main_case):
    return [b.coset.graph for b in main_case.graphs]


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
