"""Random-matrix calibration: surmise at dim 2, semicircle at large dim."""
import numpy as np
import pytest

from bhlab.spectra import (UnfoldedSpacings, ks_distance, sample_rmt,
                           sample_rmt_matrix, semicircle_density,
                           spacing_ensemble)


def test_goe_matrix_is_symmetric_and_deterministic():
    a = sample_rmt_matrix("goe", 8, 123)
    b = sample_rmt_matrix("goe", 8, 123)
    c = sample_rmt_matrix("goe", 8, 124)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.array_equal(a, a.T)


def test_gue_matrix_is_hermitian_and_deterministic():
    a = sample_rmt_matrix("gue", 6, 9)
    assert np.array_equal(a, sample_rmt_matrix("gue", 6, 9))
    assert np.allclose(a, a.conj().T)
    assert np.abs(a.imag).max() > 0


def test_entry_variances_match_ensemble_normalization():
    # off-diagonal var 1/(2A), diagonal 1/A with A = pi^2/(2 dim) for GOE
    dim, draws = 6, 4000
    a = np.pi**2 / (2 * dim)
    offs, diags = [], []
    for seed in range(draws):
        h = sample_rmt_matrix("goe", dim, seed)
        offs.extend(h[np.triu_indices(dim, k=1)])
        diags.extend(np.diag(h))
    off_var = np.var(offs)
    diag_var = np.var(diags)
    assert off_var == pytest.approx(1 / (2 * a), rel=0.05)
    assert diag_var == pytest.approx(1 / a, rel=0.1)


def test_goe_dim2_wigner_surmise():
    s = spacing_ensemble("goe", 2, 20_000, base_seed=100)
    sp = UnfoldedSpacings(s, "goe2", 0.0)
    assert ks_distance(sp, "goe") < 0.015
    assert ks_distance(sp, "poisson") > 0.1


def test_gue_dim2_surmise():
    s = spacing_ensemble("gue", 2, 20_000, base_seed=200)
    sp = UnfoldedSpacings(s, "gue2", 0.0)
    assert ks_distance(sp, "gue") < 0.015
    assert ks_distance(sp, "goe") > 0.05


def test_closed_form_spacing_matches_eigvalsh():
    for seed in range(20):
        h = sample_rmt_matrix("gue", 2, seed)
        w = np.linalg.eigvalsh(h)
        closed = np.sqrt((h[0, 0].real - h[1, 1].real) ** 2
                         + 4 * abs(h[0, 1]) ** 2)
        assert closed == pytest.approx(w[1] - w[0], rel=1e-12)


def test_semicircle_histogram_moderate_dim():
    dim = 400
    eigs = np.concatenate(
        [sample_rmt("goe", dim, 50 + i).eigenvalues for i in range(25)])
    support = 2 * dim / np.pi
    hist, edges = np.histogram(eigs, bins=np.linspace(-support, support, 21),
                               density=True)
    centers = 0.5 * (edges[1:] + edges[:-1])
    width = edges[1] - edges[0]
    l1 = np.abs(hist - semicircle_density(centers, dim) / dim).sum() * width
    assert l1 <= 0.05


def test_semicircle_density_integrates_to_dim():
    dim = 300
    e = np.linspace(-2 * dim / np.pi, 2 * dim / np.pi, 20_001)
    total = np.trapezoid(semicircle_density(e, dim), e)
    assert total == pytest.approx(dim, rel=1e-4)


def test_spectrum_sorted_and_tagged():
    spec = sample_rmt("goe", 50, 7)
    assert (np.diff(spec.eigenvalues) >= 0).all()
    assert "goe" in spec.sector_tag and "seed=7" in spec.sector_tag
