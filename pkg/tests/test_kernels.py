import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from cayley_census import autiso, kernels
from cayley_census.autiso import _Partition
from cayley_census.graphs import petersen_graph

from conftest import random_graph

py = kernels.backend("python")
try:
    cy = kernels.backend("compiled")
except ImportError:  # extension not built
    cy = None

needs_compiled = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def _refined(mod, g, colors):
    part = _Partition.from_colors(colors)
    lab, inv, cell, size = part.lab.copy(), part.inv.copy(), part.cell.copy(), part.size.copy()
    queue = [int(c) for c in np.unique(cell)]
    mod.refine(g.indptr, g.indices, lab, inv, cell, size, queue)
    return lab, cell, size


@needs_compiled
@pytest.mark.parametrize("seed", range(40))
def test_refine_backends_agree(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, int(rng.integers(2, 40)), 0.15)
    colors = rng.integers(0, 3, g.n)
    for a, b in zip(_refined(py, g, colors), _refined(cy, g, colors)):
        assert np.array_equal(a, b)


@needs_compiled
@pytest.mark.parametrize("seed", range(20))
def test_orbit_labels_backends_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 60))
    perms = np.stack([rng.permutation(n) if rng.random() < 0.5 else np.arange(n)
                      for _ in range(int(rng.integers(1, 4)))]).astype(np.int64)
    assert np.array_equal(py.orbit_labels(perms), cy.orbit_labels(perms))


@needs_compiled
@pytest.mark.parametrize("seed", range(20))
def test_cycle_kernels_backends_agree(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, int(rng.integers(3, 25)), 0.2)
    assert np.array_equal(py.cycle_counts(g.indptr, g.indices, 8), cy.cycle_counts(g.indptr, g.indices, 8))
    assert py.girth(g.indptr, g.indices) == cy.girth(g.indptr, g.indices)


def test_pure_fallback_selected_by_environment():
    code = ("import cayley_census.kernels as k, cayley_census.autiso as a, cayley_census.graphs as g;"
            "print(k.BACKEND, a.automorphism_group(g.petersen_graph()).order)")
    env = dict(os.environ, CAYLEY_CENSUS_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "120"]


def test_python_backend_end_to_end(monkeypatch):
    for name in ("refine", "orbit_labels", "cycle_counts", "girth"):
        monkeypatch.setattr(kernels, name, getattr(py, name))
    importlib.reload(autiso)
    try:
        assert autiso.automorphism_group(petersen_graph()).order == 120
    finally:
        monkeypatch.undo()
        importlib.reload(autiso)


def test_canonical_hashes_independent_of_backend():
    code = ("import numpy as np, sys; sys.path.insert(0, 'tests');"
            "from conftest import random_graph; from cayley_census import autiso;"
            "rng = np.random.default_rng(3);"
            "print(' '.join(autiso.canonical_form(random_graph(rng, 30, 0.12)).certificate_hash[:16]"
            " for _ in range(15)))")
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    outs = []
    for pure in ("0", "1"):
        env = dict(os.environ, CAYLEY_CENSUS_PURE=pure)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, cwd=root, capture_output=True,
                                   text=True, check=True).stdout)
    assert outs[0] == outs[1] and len(outs[0].split()) == 15
