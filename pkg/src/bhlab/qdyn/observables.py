"""Observables of the tilted-lattice dynamics.

The mean momentum per atom in the co-moving gauge is

    p(t) = -(J/N) Im < sum_l a+_{l+1} a_l e^{i F t} >,

and the one-particle density matrix is R_{lm} = <a+_l a_m>/N with linear
entropy S = Tr(R^2) running from 1 (pure condensate) down to 1/L.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..core.basis import BasisSet
from ..core.hamiltonian import HamiltonianSpec, hop_matrix
from .states import StateVector


def hop_expectation(psi: StateVector) -> complex:
    """< sum_l a+_{l+1} a_l > on the state."""
    k = hop_matrix(psi.basis)
    return complex(np.vdot(psi.amplitudes, k @ psi.amplitudes))


def mean_momentum(psi: StateVector, t: float, spec: HamiltonianSpec) -> float:
    if spec.N < 1:
        raise ValueError("momentum per atom needs N >= 1")
    phase = np.exp(1j * spec.F * t)
    return float(-(spec.J / spec.N) * (phase * hop_expectation(psi)).imag)


def _pair_operators(basis: BasisSet) -> list[list[sp.csr_matrix]]:
    """Cached sparse a+_l a_m for every site pair."""
    ops = basis._cache.get("pair_ops")
    if ops is not None:
        return ops
    occ = basis.occupations
    dim, L = occ.shape
    ops = [[None] * L for _ in range(L)]
    for m in range(L):
        src = np.nonzero(occ[:, m] > 0)[0]
        lowered = occ[src].copy()
        amp_m = np.sqrt(lowered[:, m].astype(float))
        lowered[:, m] -= 1
        for l in range(L):
            raised = lowered.copy()
            amp = amp_m * np.sqrt(raised[:, l] + 1.0)
            raised[:, l] += 1
            dst = basis.index_of_batch(raised)
            ops[l][m] = sp.csr_matrix((amp, (dst, src)), shape=(dim, dim))
    basis._cache["pair_ops"] = ops
    return ops


def one_particle_dm(psi: StateVector) -> np.ndarray:
    """R_{lm} = <a+_l a_m>/N: Hermitian, trace one, positive semidefinite."""
    basis = psi.basis
    ops = _pair_operators(basis)
    L = basis.L
    r = np.empty((L, L), dtype=np.complex128)
    c = psi.amplitudes
    for l in range(L):
        for m in range(l, L):
            val = np.vdot(c, ops[l][m] @ c)
            r[l, m] = val
            r[m, l] = np.conj(val)
    r /= basis.N
    return 0.5 * (r + r.conj().T)


def linear_entropy(r: np.ndarray) -> float:
    """Purity Tr(R^2) of the normalized one-particle density matrix."""
    return float(np.real(np.trace(r @ r)))
