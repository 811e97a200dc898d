"""Eigensolver, density fit, unfolding and spacing-law references."""
import numpy as np
import pytest
from scipy.integrate import quad

from bhlab.core import (HamiltonianSpec, Representation, SparseHermitian,
                        build_hamiltonian, build_hamiltonian_bloch,
                        enumerate_basis, quasimomentum_table)
from bhlab.errors import (CapacityError, DomainError, InsufficientDataError,
                          ModelError)
from bhlab.spectra import (DensityModel, Spectrum, eigh, fit_density,
                           integrated_distribution, ks_distance,
                           reference_cdf, reference_pdf, unfold)


def spectrum_of(values, tag="synthetic"):
    return Spectrum(np.sort(np.asarray(values, dtype=float)), None, tag)


class TestEigh:
    def test_tight_binding(self):
        h = build_hamiltonian(HamiltonianSpec(N=1, L=3, J=1.0),
                              enumerate_basis(1, 3))
        assert np.allclose(eigh(h).eigenvalues, [-1.0, 0.5, 0.5])

    def test_diagonal_input(self):
        h = SparseHermitian(3, [0, 1, 2], [0, 1, 2], [3.0, 1.0, 2.0])
        assert np.allclose(eigh(h).eigenvalues, [1.0, 2.0, 3.0])

    def test_u0_pair_energies_against_bloch_diagonal_oracle(self):
        # oracle: enumerate Bloch occupations, E = -J sum_k cos(2 pi k/L) n_k
        basis = enumerate_basis(2, 3, Representation.BLOCH)
        single = -np.cos(2 * np.pi * np.arange(3) / 3)
        oracle = np.sort(basis.occupations @ single)
        h = build_hamiltonian(HamiltonianSpec(N=2, L=3, J=1.0),
                              enumerate_basis(2, 3))
        assert np.allclose(eigh(h).eigenvalues, oracle, atol=1e-12)

    def test_residual_and_orthonormality(self):
        basis = enumerate_basis(4, 4)
        h = build_hamiltonian(HamiltonianSpec(N=4, L=4, J=0.7, U=0.9,
                                              theta=0.3), basis)
        spec = eigh(h, want_vectors=True)
        hnorm = np.abs(spec.eigenvalues).max()
        assert spec.residual(h) <= 1e-8 * hnorm
        v = spec.eigenvectors
        assert np.abs(v.conj().T @ v - np.eye(basis.dim)).max() < 1e-8

    def test_basis_permutation_invariance(self):
        basis = enumerate_basis(3, 4)
        h = build_hamiltonian(HamiltonianSpec(N=3, L=4, J=1.0, U=0.4), basis)
        rng = np.random.default_rng(5)
        perm = rng.permutation(basis.dim)
        dense = h.to_dense()[np.ix_(perm, perm)]
        tri = np.triu_indices(basis.dim)
        hp = SparseHermitian(basis.dim, tri[0], tri[1], dense[tri])
        dev = np.abs(eigh(h).eigenvalues - eigh(hp).eigenvalues).max()
        assert dev < 1e-10 * max(1.0, np.abs(dense).max())

    def test_capacity_limit(self):
        h = SparseHermitian(3, [0], [0], [1.0])
        with pytest.raises(CapacityError):
            eigh(h, dense_limit=2)


class TestFitDensity:
    def test_estimator_consistency(self):
        rng = np.random.default_rng(42)
        sample = rng.normal(2.0, 3.0, size=10_000)
        model = fit_density(spectrum_of(sample))
        bound = 3 * 3.0 / np.sqrt(10_000)
        assert abs(model.mean - 2.0) < bound
        assert abs(model.sigma - 3.0) < bound
        assert model.level_count == 10_000

    def test_translation_equivariance(self):
        rng = np.random.default_rng(1)
        e = rng.normal(size=500)
        m0 = fit_density(spectrum_of(e))
        m1 = fit_density(spectrum_of(e + 7.5))
        assert m1.mean == pytest.approx(m0.mean + 7.5, abs=1e-12)
        assert m1.sigma == pytest.approx(m0.sigma, abs=1e-12)

    def test_density_integrates_to_count(self):
        model = DensityModel(0.5, 2.0, 321)
        val, _ = quad(lambda e: model.density(np.array([e]))[0], -30, 30)
        assert val == pytest.approx(321, rel=1e-8)

    def test_insufficient_levels(self):
        with pytest.raises(InsufficientDataError):
            fit_density(spectrum_of(np.arange(10)))

    def test_gaussian_model_fits_bh_spectrum(self):
        # full N=L=8 spectrum via sector pooling; 30-bin histogram L1 <= 0.15
        basis = enumerate_basis(8, 8)
        from bhlab.core import build_sectors, project_to_sector
        h = build_hamiltonian(HamiltonianSpec(N=8, L=8, J=0.7, U=0.3), basis)
        parts = [eigh(project_to_sector(h, s, basis)).eigenvalues
                 for s in build_sectors(basis)]
        e = np.sort(np.concatenate(parts))
        model = fit_density(spectrum_of(e))
        hist, edges = np.histogram(e, bins=30, density=True)
        centers = 0.5 * (edges[1:] + edges[:-1])
        width = edges[1] - edges[0]
        l1 = np.abs(hist - model.density(centers) / e.size).sum() * width
        assert l1 <= 0.15


class TestUnfold:
    def test_uniform_density_gives_unit_spacings(self):
        e = np.linspace(0.0, 99.0, 100)
        out = unfold(spectrum_of(e), lambda x: np.ones_like(x), trim=0.0)
        assert np.allclose(out.s, 1.0, atol=1e-12)

    def test_mean_is_pinned_to_one(self):
        rng = np.random.default_rng(3)
        e = np.cumsum(rng.exponential(size=400))
        model = fit_density(spectrum_of(e))
        out = unfold(spectrum_of(e), model, trim=0.1)
        assert abs(out.s.mean() - 1.0) < 1e-6
        assert (out.s >= 0).all()

    def test_poisson_process_recovers_exponential_law(self):
        # oracle: iid exponential gaps; unfold with the exact uniform density
        rng = np.random.default_rng(11)
        gaps = rng.exponential(size=10_001)
        levels = np.cumsum(gaps)
        out = unfold(spectrum_of(levels), lambda x: np.ones_like(x), trim=0.0)
        assert ks_distance(out, "poisson") < 0.02

    def test_full_pipeline_on_gaussian_positioned_levels(self):
        # sorted iid normals: local Poisson statistics with Gaussian density
        rng = np.random.default_rng(12)
        e = np.sort(rng.normal(size=10_000))
        spec = spectrum_of(e)
        out = unfold(spec, fit_density(spec), trim=0.1)
        assert ks_distance(out, "poisson") < 0.02

    def test_degenerate_model_rejected(self):
        spec = spectrum_of(np.arange(100.0))
        with pytest.raises(ModelError):
            unfold(spec, DensityModel(0.0, 0.0, 100))

    def test_trim_range_enforced(self):
        spec = spectrum_of(np.arange(100.0))
        with pytest.raises(ValueError):
            unfold(spec, lambda x: np.ones_like(x), trim=0.5)


class TestReferenceLaws:
    def test_point_values(self):
        assert reference_pdf("poisson", 0.0) == 1.0
        assert reference_pdf("goe", 0.0) == 0.0
        assert reference_pdf("gue", 0.0) == 0.0

    @pytest.mark.parametrize("kind", ["poisson", "goe", "gue"])
    def test_normalization_and_mean_by_quadrature(self, kind):
        norm, _ = quad(lambda s: reference_pdf(kind, s), 0, 40)
        mean, _ = quad(lambda s: s * reference_pdf(kind, s), 0, 40)
        assert norm == pytest.approx(1.0, abs=1e-8)
        assert mean == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("kind", ["poisson", "goe", "gue"])
    def test_cdf_matches_pdf_quadrature(self, kind):
        for s in (0.3, 0.9, 1.7, 3.2):
            val, _ = quad(lambda x: reference_pdf(kind, x), 0, s)
            assert reference_cdf(kind, s) == pytest.approx(val, abs=1e-10)

    def test_negative_s_rejected(self):
        with pytest.raises(DomainError):
            reference_pdf("goe", -0.1)
        with pytest.raises(DomainError):
            reference_cdf("poisson", [-1.0, 0.5])


class TestIntegratedDistribution:
    def test_limits(self):
        from bhlab.spectra import UnfoldedSpacings
        sp = UnfoldedSpacings(np.linspace(0.5, 1.5, 50), "t", 0.0)
        cdf = integrated_distribution(sp)
        assert cdf(0.0) == 0.0
        assert cdf(1e9) == 1.0

    def test_single_jump(self):
        from bhlab.spectra import UnfoldedSpacings
        sp = UnfoldedSpacings(np.ones(25), "t", 0.0)
        cdf = integrated_distribution(sp)
        assert cdf(0.999) == 0.0
        assert cdf(1.0) == 1.0

    def test_poisson_sup_norm(self):
        rng = np.random.default_rng(8)
        from bhlab.spectra import UnfoldedSpacings
        s = rng.exponential(size=10_000)
        sp = UnfoldedSpacings(s / s.mean(), "t", 0.0)
        cdf = integrated_distribution(sp)
        grid = np.linspace(0, 10, 2001)
        assert np.abs(cdf(grid) - (1 - np.exp(-grid))).max() < 0.02

    def test_insufficient(self):
        from bhlab.spectra import UnfoldedSpacings
        with pytest.raises(InsufficientDataError):
            integrated_distribution(UnfoldedSpacings(np.ones(5), "t", 0.0))


class TestKsDistance:
    def test_sample_from_reference_is_close(self):
        rng = np.random.default_rng(21)
        from bhlab.spectra import UnfoldedSpacings
        # GOE sampling oracle: s = sqrt of exponential with the right scale
        s = np.sqrt(rng.exponential(scale=4 / np.pi, size=10_000))
        sp = UnfoldedSpacings(s, "t", 0.0)
        assert ks_distance(sp, "goe") < 0.02

    def test_poisson_sample_vs_goe_reference_far(self):
        rng = np.random.default_rng(22)
        from bhlab.spectra import UnfoldedSpacings
        s = rng.exponential(size=10_000)
        sp = UnfoldedSpacings(s / s.mean(), "t", 0.0)
        assert ks_distance(sp, "goe") > 0.15

    def test_degenerate_zero_distance(self):
        from bhlab.spectra import UnfoldedSpacings
        # empirical CDF of the reference's own quantiles: distance -> 1/(2n)
        n = 4000
        q = (np.arange(1, n + 1) - 0.5) / n
        s = np.sqrt(-4.0 * np.log(1.0 - q) / np.pi)  # GOE inverse CDF
        sp = UnfoldedSpacings(s, "t", 0.0)
        assert ks_distance(sp, "goe") <= 0.5 / n + 1e-9
