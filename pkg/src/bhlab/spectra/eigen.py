"""Dense Hermitian eigendecomposition with residual contracts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..errors import CapacityError, IntegrityError
from ..core.hamiltonian import SparseHermitian

DENSE_LIMIT = 12_000


@dataclass
class Spectrum:
    """Sorted eigenvalues (and optionally eigenvectors) with provenance."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    sector_tag: str

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def residual(self, h: SparseHermitian) -> float:
        """max_i ||H v_i - E_i v_i|| over the stored eigenpairs."""
        if self.eigenvectors is None:
            raise ValueError("spectrum stores no eigenvectors")
        hv = h.csr() @ self.eigenvectors
        return float(np.linalg.norm(
            hv - self.eigenvectors * self.eigenvalues, axis=0).max())


def eigh(h: SparseHermitian, want_vectors: bool = False,
         dense_limit: int = DENSE_LIMIT) -> Spectrum:
    """Full spectrum of a SparseHermitian, densified.

    Falls to the real-symmetric LAPACK path whenever every stored entry is
    real; eigenvalues come back ascending either way.
    """
    if h.dim > dense_limit:
        raise CapacityError(f"dim {h.dim} exceeds dense limit {dense_limit}")
    if h.nnz and not np.all(np.isfinite(h.val)):
        raise IntegrityError("matrix contains non-finite entries")
    dense = h.to_dense()
    if h.is_real:
        dense = dense.real
    if want_vectors:
        w, v = scipy.linalg.eigh(dense)
    else:
        w = scipy.linalg.eigh(dense, eigvals_only=True)
        v = None
    return Spectrum(np.ascontiguousarray(w), v, h.basis_tag)
