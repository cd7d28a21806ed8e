"""End-to-end smoke tests for the Python bindings."""

import math

import pytest

import mscx


def test_builtin_grid_matrixA():
    g = mscx.builtin_grid("matrixA")
    assert g.dims == (4, 4, 1)
    assert sorted(g.values) == list(range(16))
    assert g.at(0, 0) == g.values[0]


def test_builtin_grid_rejects_unknown():
    with pytest.raises(Exception):
        mscx.builtin_grid("nope")


def test_random_field_is_permutation():
    g = mscx.random_field(6, 6, 9)
    assert g.dims == (6, 6, 1)
    assert sorted(g.values) == list(range(36))


def test_resample_upsample_noise_shapes():
    g = mscx.builtin_grid("matrixA")
    assert mscx.resample(g, 11, 7).dims == (11, 7, 1)
    assert mscx.upsample(g, 3).dims == (10, 10, 1)
    noisy = mscx.add_noise(g, 1.5, 7)
    assert noisy.dims == g.dims
    diffs = [abs(a - b) for a, b in zip(noisy.values, g.values)]
    assert 0.0 < max(diffs) <= 1.5 + 1e-12


def test_morse_smale_counts_and_euler():
    ms = mscx.morse_smale(mscx.builtin_grid("matrixA"))
    assert ms.critical_counts == [5, 5, 1]
    assert ms.euler == 1
    assert len(ms.criticals()) == 11
    assert ms.separatrix_count > 0
    cells = [c[0] for c in ms.criticals()]
    assert cells == sorted(cells)


def test_morse_smale_3d():
    ms = mscx.morse_smale(mscx.builtin_grid("tensorB"))
    assert ms.critical_counts == [8, 10, 3, 0]
    assert ms.euler == 1


def test_policies_agree_on_counts_not_always_positions():
    g = mscx.builtin_grid("matrixA")
    a = mscx.morse_smale(g)
    b = mscx.morse_smale(g, policy="probabilistic", seed=5)
    assert a.critical_counts == b.critical_counts
    rep = mscx.diff(a, b)
    assert rep["errors"] == []
    assert isinstance(rep["identical"], bool)


def test_diff_identical():
    g = mscx.random_field(8, 8, 3)
    rep = mscx.diff(mscx.morse_smale(g), mscx.morse_smale(g))
    assert rep["identical"]
    assert rep["moved_saddles"] == []
    assert rep["connectivity_changes"] == []


def test_sample_and_meshes():
    g = mscx.sample("ring", 9, 9, (0.0, 2.0, 0.0, 2.0))
    assert g.dims == (9, 9, 1)

    diag = mscx.diagonal_mesh(g)
    assert diag.triangle_count == 128
    assert diag.euler() == 1

    sug = mscx.suggested_mesh(g, 3)
    assert sug.vertex_count == 289
    assert sug.euler() == 1

    poi = mscx.poisson_mesh(g, 100, 0.08, 2)
    assert poi.triangle_count > 50
    assert poi.euler() == 1


def test_direction_histogram_bins():
    g = mscx.sample("ring", 9, 9, (0.0, 2.0, 0.0, 2.0))
    counts = mscx.direction_histogram(mscx.diagonal_mesh(g))
    assert len(counts) == 36
    assert sum(1 for c in counts if c) == 3


def test_morse_smale_mesh_and_persistence():
    g = mscx.resample(mscx.builtin_grid("matrixA"), 20, 20)
    mesh = mscx.suggested_mesh(g, 1)
    ms = mscx.morse_smale_mesh(mesh, persistence=1e-4 * 15)
    assert ms.euler == 1
    full = mscx.morse_smale(g, persistence=15.0)
    assert full.critical_counts == [1, 0, 0]


def test_run_experiment_frozen():
    r = mscx.run_experiment(4, 100, 1)
    assert r["size"] == 4
    assert r["trials"] == 100
    assert r["positional"] == 76
    assert r["connectivity"] == 31


def test_circle_deviation_ring():
    g = mscx.sample("ring", 64, 64, (-2.0, 2.0, -2.0, 2.0))
    ms = mscx.morse_smale(g)
    d = mscx.circle_deviation(ms, -0.0766, -0.0766, 1.0, quantile=0.5)
    assert math.isfinite(d)
    assert d >= 0.0
