"""Many-body state vectors: the BEC condensate and Hamiltonian ground states."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from ..core.basis import BasisSet, Representation
from ..core.hamiltonian import SparseHermitian
from ..errors import DimensionMismatchError


@dataclass
class StateVector:
    """Normalized amplitude vector over a site Fock basis at one time."""

    amplitudes: np.ndarray
    time: float
    basis: BasisSet

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.basis.dim,):
            raise DimensionMismatchError("amplitude vector does not fit basis")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state norm {norm} deviates from 1 beyond 1e-9")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def bec_state(basis: BasisSet) -> StateVector:
    """Condensate of N non-interacting atoms in the zero-quasimomentum mode.

    Amplitude on Fock state n is sqrt(N! / prod n_l!) L^(-N/2); exact
    multinomial integers keep the amplitudes accurate at any filling.
    """
    if basis.representation is not Representation.SITE:
        raise ValueError("BEC state is expressed over the site basis")
    n = basis.N
    amps = np.empty(basis.dim)
    for i, occ in enumerate(basis.occupations):
        m = math.factorial(n)
        for nl in occ:
            m //= math.factorial(int(nl))
        amps[i] = math.sqrt(m)
    amps *= basis.L ** (-0.5 * n)
    amps /= np.linalg.norm(amps)  # guards rounding at large N
    return StateVector(amps.astype(np.complex128), 0.0, basis)


def fock_state(basis: BasisSet, occ) -> StateVector:
    amps = np.zeros(basis.dim, dtype=np.complex128)
    amps[basis.index_of(occ)] = 1.0
    return StateVector(amps, 0.0, basis)


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so the largest-modulus component is real positive."""
    i = int(np.argmax(np.abs(v)))
    phase = v[i] / abs(v[i])
    return v / phase


def ground_state(h: SparseHermitian, basis: BasisSet,
                 degeneracy_tol: float = 1e-10) -> StateVector:
    """Lowest eigenvector of H with a deterministic phase convention.

    Warns when the ground level is degenerate within ``degeneracy_tol``;
    the returned vector is then basis-dependent.
    """
    if h.dim != basis.dim:
        raise DimensionMismatchError("matrix and basis dimensions differ")
    if h.dim < 100:
        dense = h.to_dense()
        w, v = scipy.linalg.eigh(dense.real if h.is_real else dense)
        vals, vecs = w[:2], v[:, :2]
    else:
        mat = h.csr()
        vals, vecs = scipy.sparse.linalg.eigsh(
            mat.real if h.is_real else mat, k=2, which="SA")
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
    if vals.size > 1 and vals[1] - vals[0] < degeneracy_tol:
        warnings.warn("ground level degenerate within tolerance; "
                      "eigenvector choice is arbitrary", stacklevel=2)
    g = fix_phase(vecs[:, 0].astype(np.complex128))
    g /= np.linalg.norm(g)
    return StateVector(g, 0.0, basis)


def ground_energy(h: SparseHermitian) -> float:
    if h.dim < 100:
        dense = h.to_dense()
        return float(scipy.linalg.eigh(
            dense.real if h.is_real else dense, eigvals_only=True)[0])
    mat = h.csr()
    vals = scipy.sparse.linalg.eigsh(mat.real if h.is_real else mat, k=1,
                                     which="SA", return_eigenvectors=False)
    return float(vals[0])
