"""Translation and reflection symmetry adaptation of the site Fock basis.

Site Fock states fall into orbits of the cyclic shift S|n_1,...,n_L> =
|n_2,...,n_L,n_1>.  An orbit of period P contributes one normalized basis
vector to every quasimomentum sector k with k*P = 0 (mod L).  The k = 0
sector (and k = L/2 for even L) is split further by the site reflection
l -> L+1-l, which acts on the momentum vectors as a signed permutation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..errors import SymmetryBrokenError
from .basis import BasisSet, Representation
from .hamiltonian import SparseHermitian


@dataclass
class SymmetrySector:
    """One (quasimomentum, parity) block of the symmetry-adapted basis.

    ``basis_matrix`` holds the orthonormal sector vectors as columns over the
    full site Fock basis, so the sector Hamiltonian is B+ H B.
    """

    kappa_index: int
    parity: str                      # "even" | "odd" | "none"
    orbit_reps: list[tuple[int, int]]  # (representative index, orbit length)
    dim: int
    basis_matrix: sp.csr_matrix
    source_tag: str

    @property
    def tag(self) -> str:
        return f"{self.source_tag}|k={self.kappa_index},parity={self.parity}"


def _orbits(basis: BasisSet):
    """Cyclic-shift orbits as (representative index, ordered member indices)."""
    occ = basis.occupations
    dim, L = occ.shape
    seen = np.zeros(dim, dtype=bool)
    orbits = []
    for i in range(dim):
        if seen[i]:
            continue
        members = [i]
        seen[i] = True
        state = occ[i]
        for shift in range(1, L):
            j = basis.index_of(np.roll(state, -shift))
            if j == i:
                break
            members.append(j)
            seen[j] = True
        orbits.append((i, members))
    return orbits


def _reflection_pairing(basis: BasisSet, orbits, rep_of: dict[int, int]):
    """For each orbit rep m, the rep m' and shift d with R|m> = S^d |m'>."""
    members_of = {rep: members for rep, members in orbits}
    pairing = {}
    for rep, _ in orbits:
        reflected = basis.occupations[rep][::-1]
        j = basis.index_of(reflected)
        partner = rep_of[j]
        d = members_of[partner].index(j)
        pairing[rep] = (partner, d)
    return pairing


def build_sectors(basis: BasisSet) -> list[SymmetrySector]:
    """Symmetry-adapted sectors of the full site basis.

    Sector dimensions sum to the full Hilbert-space dimension.  Parity is
    resolved only where reflection preserves the quasimomentum: k = 0 and,
    for even L, k = L/2.
    """
    if basis.representation is not Representation.SITE:
        raise ValueError("sectors are built over the site representation")
    L = basis.L
    orbits = _orbits(basis)
    rep_of = {}
    for rep, members in orbits:
        for j in members:
            rep_of[j] = rep
    parity_ks = {0} | ({L // 2} if L % 2 == 0 else set())
    pairing = _reflection_pairing(basis, orbits, rep_of)

    sectors = []
    for k in range(L):
        compatible = [(rep, members) for rep, members in orbits
                      if (k * len(members)) % L == 0]
        if not compatible:
            continue
        cols = {}
        kappa = 2.0 * np.pi * k / L
        for rep, members in compatible:
            p = len(members)
            amps = np.exp(1j * kappa * np.arange(p)) / np.sqrt(p)
            cols[rep] = (np.asarray(members), amps)
        reps_here = [(rep, len(members)) for rep, members in compatible]
        if k not in parity_ks:
            mat = _stack_columns(basis.dim, [cols[r] for r, _ in reps_here])
            sectors.append(SymmetrySector(k, "none", reps_here, len(cols),
                                          mat, basis.tag))
            continue
        # reflection acts as R|m, kappa> = sign * |m', kappa> with
        # sign = exp(i kappa d); real (+-1) exactly at kappa = 0, pi
        even_cols, odd_cols = [], []
        even_reps, odd_reps = [], []
        done = set()
        for rep, members in compatible:
            if rep in done:
                continue
            partner, d = pairing[rep]
            sign = 1.0 if k == 0 else (-1.0) ** (d % 2)
            if partner == rep:
                idx, amps = cols[rep]
                if sign > 0:
                    even_cols.append((idx, amps))
                    even_reps.append((rep, len(members)))
                else:
                    odd_cols.append((idx, amps))
                    odd_reps.append((rep, len(members)))
                done.add(rep)
            else:
                ia, aa = cols[rep]
                ib, ab = cols[partner]
                idx = np.concatenate([ia, ib])
                even_cols.append((idx, np.concatenate([aa, sign * ab]) / np.sqrt(2)))
                odd_cols.append((idx, np.concatenate([aa, -sign * ab]) / np.sqrt(2)))
                even_reps.append((rep, len(members)))
                odd_reps.append((rep, len(members)))
                done.add(rep)
                done.add(partner)
        for parity, pcols, preps in (("even", even_cols, even_reps),
                                     ("odd", odd_cols, odd_reps)):
            if not pcols:
                continue
            mat = _stack_columns(basis.dim, pcols)
            sectors.append(SymmetrySector(k, parity, preps, len(pcols),
                                          mat, basis.tag))
    return sectors


def _stack_columns(full_dim: int, columns) -> sp.csr_matrix:
    rows, cols, vals = [], [], []
    for c, (idx, amps) in enumerate(columns):
        rows.append(idx)
        cols.append(np.full(idx.shape, c, dtype=np.int64))
        vals.append(amps)
    return sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(full_dim, len(columns)))


def _shift_permutation(basis: BasisSet) -> sp.csr_matrix:
    dst = basis.index_of_batch(np.roll(basis.occupations, -1, axis=1))
    return sp.csr_matrix((np.ones(basis.dim), (dst, np.arange(basis.dim))),
                         shape=(basis.dim, basis.dim))


def _reflection_permutation(basis: BasisSet) -> sp.csr_matrix:
    dst = basis.index_of_batch(basis.occupations[:, ::-1])
    return sp.csr_matrix((np.ones(basis.dim), (dst, np.arange(basis.dim))),
                         shape=(basis.dim, basis.dim))


def project_to_sector(h: SparseHermitian, sector: SymmetrySector,
                      basis: BasisSet) -> SparseHermitian:
    """Sector block B+ H B of a symmetry-commuting Hamiltonian.

    Raises SymmetryBrokenError when H fails to commute with the cyclic shift
    (any sector) or with reflection (parity-resolved sectors): disorder and,
    for parity, a Peierls phase both break the projection.
    """
    if h.dim != basis.dim or sector.source_tag != basis.tag:
        raise SymmetryBrokenError("sector, basis and matrix do not match")
    m = h.csr()
    scale = max(1.0, float(np.abs(h.val).max()) if h.nnz else 1.0)
    t = _shift_permutation(basis)
    defect = _comm_norm(m, t)
    if defect > 1e-12 * scale:
        raise SymmetryBrokenError(
            f"matrix does not commute with translation (defect {defect:.3e})")
    if sector.parity != "none":
        r = _reflection_permutation(basis)
        defect = _comm_norm(m, r)
        if defect > 1e-12 * scale:
            raise SymmetryBrokenError(
                f"matrix does not commute with reflection (defect {defect:.3e})")
    b = sector.basis_matrix
    block = (b.getH() @ m @ b).tocoo()
    block = (0.5 * (block + block.getH())).tocoo()
    keep = (np.abs(block.data) > 1e-12 * scale) & (block.row <= block.col)
    return SparseHermitian(sector.dim, block.row[keep], block.col[keep],
                           block.data[keep], basis_tag=sector.tag)


def _comm_norm(a: sp.spmatrix, b: sp.spmatrix) -> float:
    d = a @ b - b @ a
    return 0.0 if d.nnz == 0 else float(np.abs(d.data).max())
