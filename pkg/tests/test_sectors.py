"""Symmetry sectors against brute-force projector oracles."""
import numpy as np
import pytest

from bhlab.core import (HamiltonianSpec, Representation, build_hamiltonian,
                        build_hamiltonian_bloch, build_sectors,
                        enumerate_basis, project_to_sector,
                        quasimomentum_table)
from bhlab.errors import SymmetryBrokenError
from bhlab.spectra import eigh


def shift_matrix(basis):
    """Dense cyclic-shift permutation: oracle-side implementation."""
    t = np.zeros((basis.dim, basis.dim))
    for i in range(basis.dim):
        j = basis.index_of(np.roll(basis.occupations[i], -1))
        t[j, i] = 1.0
    return t


def reflection_matrix(basis):
    r = np.zeros((basis.dim, basis.dim))
    for i in range(basis.dim):
        j = basis.index_of(basis.occupations[i][::-1])
        r[j, i] = 1.0
    return r


def projector_rank(p):
    return int(round(np.trace(p).real))


def oracle_sector_dims(basis):
    """(k, parity) -> dimension from dense symmetrization projectors."""
    t = shift_matrix(basis)
    r = reflection_matrix(basis)
    eye = np.eye(basis.dim)
    powers = [np.linalg.matrix_power(t, l) for l in range(basis.L)]
    dims = {}
    for k in range(basis.L):
        kappa = 2 * np.pi * k / basis.L
        p = sum(np.exp(1j * kappa * l) * powers[l] for l in range(basis.L)) / basis.L
        if k == 0 or (basis.L % 2 == 0 and k == basis.L // 2):
            dims[(k, "even")] = projector_rank(p @ (eye + r) / 2)
            dims[(k, "odd")] = projector_rank(p @ (eye - r) / 2)
        else:
            dims[(k, "none")] = projector_rank(p)
    return {key: d for key, d in dims.items() if d > 0}


@pytest.mark.parametrize("n,l", [(5, 5), (3, 4), (4, 6), (2, 2)])
def test_sector_dims_match_projector_oracle(n, l):
    basis = enumerate_basis(n, l)
    dims = {(s.kappa_index, s.parity): s.dim for s in build_sectors(basis)}
    assert dims == oracle_sector_dims(basis)
    assert sum(dims.values()) == basis.dim


def test_single_particle_sectors():
    basis = enumerate_basis(1, 5)
    sectors = build_sectors(basis)
    assert [s.dim for s in sectors] == [1] * 5
    h = build_hamiltonian(HamiltonianSpec(N=1, L=5, J=1.0), basis)
    for s in sectors:
        e = eigh(project_to_sector(h, s, basis)).eigenvalues
        assert e[0] == pytest.approx(-np.cos(2 * np.pi * s.kappa_index / 5),
                                     abs=1e-12)


def test_single_particle_sector_vector_is_bloch_wave():
    # pins the quasimomentum sign convention: sector-k vector has site
    # amplitudes proportional to exp(-i kappa l)
    basis = enumerate_basis(1, 5)
    sectors = {s.kappa_index: s for s in build_sectors(basis)}
    v = sectors[1].basis_matrix.toarray()[:, 0]
    # basis state i has the atom on site i (descending-lex enumeration)
    sites = np.argmax(basis.occupations, axis=1)
    kappa = 2 * np.pi / 5
    expected = np.exp(-1j * kappa * sites) / np.sqrt(5)
    phase = v[0] / expected[0]
    assert np.allclose(v, expected * phase, atol=1e-12)


@pytest.mark.parametrize("u", [0.1, 0.5, 0.9])
def test_sector_completeness_n5(u):
    basis = enumerate_basis(5, 5)
    h = build_hamiltonian(HamiltonianSpec(N=5, L=5, J=1 - u, U=u), basis)
    full = np.sort(eigh(h).eigenvalues)
    parts = [eigh(project_to_sector(h, s, basis)).eigenvalues
             for s in build_sectors(basis)]
    pooled = np.sort(np.concatenate(parts))
    assert np.abs(pooled - full).max() < 1e-9


def test_momentum_blocks_match_bloch_blocks():
    # site-representation sector spectra agree per-k with the Bloch blocks
    n, l = 4, 5
    site = enumerate_basis(n, l)
    bloch = enumerate_basis(n, l, Representation.BLOCH)
    spec = HamiltonianSpec(N=n, L=l, J=0.8, U=0.6)
    h = build_hamiltonian(spec, site)
    hb = build_hamiltonian_bloch(spec, bloch)
    kappa = quasimomentum_table(bloch)
    dense = hb.to_dense()
    sectors = build_sectors(site)
    for k in range(l):
        idx = np.nonzero(kappa == k)[0]
        eb = np.sort(np.linalg.eigvalsh(dense[np.ix_(idx, idx)]))
        parts = [eigh(project_to_sector(h, s, site)).eigenvalues
                 for s in sectors if s.kappa_index == k]
        es = np.sort(np.concatenate(parts))
        assert np.abs(es - eb).max() < 1e-10


def test_disorder_refuses_projection():
    basis = enumerate_basis(3, 4)
    spec = HamiltonianSpec(N=3, L=4, J=1.0, U=0.5,
                           epsilon=(0.1, -0.05, 0.02, 0.08))
    h = build_hamiltonian(spec, basis)
    sector = build_sectors(basis)[0]
    with pytest.raises(SymmetryBrokenError):
        project_to_sector(h, sector, basis)


def test_peierls_phase_refuses_parity_projection_only():
    basis = enumerate_basis(3, 4)
    h = build_hamiltonian(HamiltonianSpec(N=3, L=4, J=1.0, U=0.5, theta=0.3),
                          basis)
    sectors = build_sectors(basis)
    momentum_only = [s for s in sectors if s.parity == "none"]
    parity = [s for s in sectors if s.parity != "none"]
    for s in momentum_only:
        project_to_sector(h, s, basis)  # translation still commutes
    with pytest.raises(SymmetryBrokenError):
        project_to_sector(h, parity[0], basis)
