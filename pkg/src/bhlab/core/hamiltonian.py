"""Sparse Hermitian Bose-Hubbard matrices on a periodic ring.

The static Hamiltonian is

    H = -(J/2) sum_l (e^{i theta} a+_{l+1} a_l + h.c.)
        + (U/2) sum_l n_l (n_l - 1) + sum_l eps_l n_l ,

with site L+1 identified with site 1.  Matrices are stored as the upper
triangle of a complex Hermitian matrix; symmetric completion is implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionMismatchError, RepresentationError
from .basis import BasisSet, Representation, quasimomentum_table


@dataclass(frozen=True)
class HamiltonianSpec:
    """Physical parameters of one Bose-Hubbard configuration.

    ``F`` is the static tilt (Bloch frequency, hbar = 1, lattice period 1);
    it enters only the time-dependent propagation, never the static build.
    """

    N: int
    L: int
    J: float = 1.0
    U: float = 0.0
    epsilon: tuple[float, ...] | None = None
    theta: float = 0.0
    F: float = 0.0
    epsilon_max: float = 0.0

    def __post_init__(self):
        for name in ("J", "U", "theta", "F"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.epsilon is not None:
            eps = tuple(float(e) for e in self.epsilon)
            if len(eps) != self.L:
                raise ValueError("epsilon must have one entry per site")
            object.__setattr__(self, "epsilon", eps)
            emax = max(abs(e) for e in eps) if eps else 0.0
            if self.epsilon_max and emax > self.epsilon_max + 1e-12:
                raise ValueError("disorder exceeds the recorded epsilon_max")
            if not self.epsilon_max:
                object.__setattr__(self, "epsilon_max", emax)

    @property
    def epsilon_array(self) -> np.ndarray:
        if self.epsilon is None:
            return np.zeros(self.L)
        return np.asarray(self.epsilon, dtype=float)

    def tag(self) -> str:
        parts = [f"N={self.N}", f"L={self.L}", f"J={self.J:.12g}",
                 f"U={self.U:.12g}"]
        if self.theta:
            parts.append(f"theta={self.theta:.12g}")
        if self.epsilon is not None and any(self.epsilon):
            parts.append(f"eps_max={self.epsilon_max:.12g}")
        if self.F:
            parts.append(f"F={self.F:.12g}")
        return ",".join(parts)


def disorder_spec(N: int, L: int, J: float, U: float, epsilon_max: float,
                  seed: int, theta: float = 0.0, F: float = 0.0
                  ) -> HamiltonianSpec:
    """Spec with on-site energies drawn uniformly from [-epsilon_max, epsilon_max]."""
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0xD15C0)))
    eps = tuple(rng.uniform(-epsilon_max, epsilon_max, size=L))
    return HamiltonianSpec(N=N, L=L, J=J, U=U, epsilon=eps, theta=theta, F=F,
                           epsilon_max=epsilon_max)


class SparseHermitian:
    """Upper triangle of a sparse Hermitian matrix over a tagged basis.

    Constructor triplets are Hermitian *contributions*: (i, j, v) adds v to
    H[i, j] and conj(v) to H[j, i]; a diagonal triplet adds once and must be
    real.  Pass one triangle only of an already-Hermitian matrix, or a
    one-directional operator A to assemble A + A-dagger.
    """

    def __init__(self, dim: int, rows, cols, vals, basis_tag: str = ""):
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.complex128)
        # fold lower-triangle contributions onto the upper triangle
        lower = rows > cols
        rows2 = np.where(lower, cols, rows)
        cols2 = np.where(lower, rows, cols)
        vals2 = np.where(lower, np.conj(vals), vals)
        coo = sp.coo_matrix((vals2, (rows2, cols2)), shape=(dim, dim))
        upper = coo.tocsr().tocoo()  # sums duplicates
        keep = upper.data != 0
        order = np.lexsort((upper.col[keep], upper.row[keep]))
        self.dim = dim
        self.row = upper.row[keep][order].astype(np.int64)
        self.col = upper.col[keep][order].astype(np.int64)
        self.val = upper.data[keep][order]
        # the diagonal of a Hermitian matrix is real
        diag = self.row == self.col
        self.val[diag] = self.val[diag].real
        self.basis_tag = basis_tag
        self._csr = None

    @property
    def nnz(self) -> int:
        return self.val.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.val.imag == 0.0))

    def csr(self) -> sp.csr_matrix:
        """Symmetrically completed CSR form."""
        if self._csr is None:
            off = self.row != self.col
            rows = np.concatenate([self.row, self.col[off]])
            cols = np.concatenate([self.col, self.row[off]])
            vals = np.concatenate([self.val, np.conj(self.val[off])])
            self._csr = sp.csr_matrix((vals, (rows, cols)),
                                      shape=(self.dim, self.dim))
        return self._csr

    def to_dense(self) -> np.ndarray:
        return self.csr().toarray()

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.csr() @ v

    def hermiticity_defect(self) -> float:
        m = self.csr()
        d = m - m.getH()
        return 0.0 if d.nnz == 0 else float(np.abs(d.data).max())

    def dump_triples(self, path) -> None:
        """Debug dump: one 'row col re im' line per stored upper entry."""
        with open(path, "w") as fh:
            for r, c, v in zip(self.row, self.col, self.val):
                fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")


def hop_matrix(basis: BasisSet) -> sp.csr_matrix:
    """One-directional hop operator sum_l a+_{l+1} a_l on a site basis.

    The full kinetic term is -(J/2)(e^{i theta} K + h.c.) with K this matrix.
    Cached on the basis: assembly is the only O(dim * L) loop in the build.
    """
    if basis.representation is not Representation.SITE:
        raise RepresentationError("hop matrix requires the site representation")
    cached = basis._cache.get("hop")
    if cached is not None:
        return cached
    occ = basis.occupations
    dim, L = occ.shape
    rows, cols, vals = [], [], []
    for l in range(L):
        lp = (l + 1) % L
        src = np.nonzero(occ[:, l] > 0)[0]
        moved = occ[src].copy()
        amp = np.sqrt(moved[:, l] * (moved[:, lp] + 1.0))
        moved[:, l] -= 1
        moved[:, lp] += 1
        dst = basis.index_of_batch(moved)
        rows.append(dst)
        cols.append(src)
        vals.append(amp)
    k = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim))
    basis._cache["hop"] = k
    return k


def interaction_diagonal(basis: BasisSet) -> np.ndarray:
    """sum_l n_l (n_l - 1) per state, exact integers."""
    occ = basis.occupations
    return (occ * (occ - 1)).sum(axis=1)


def build_hamiltonian(spec: HamiltonianSpec, basis: BasisSet) -> SparseHermitian:
    """Assemble the static site-representation Hamiltonian."""
    if spec.F != 0.0:
        raise ValueError("static build requires F = 0; the tilt is applied "
                         "by the time-dependent propagator")
    if (spec.N, spec.L) != (basis.N, basis.L):
        raise DimensionMismatchError(
            f"spec (N={spec.N}, L={spec.L}) does not match basis {basis.tag}")
    if basis.representation is not Representation.SITE:
        raise RepresentationError("build_hamiltonian needs a site basis")
    k = hop_matrix(basis).tocoo()
    hopv = (-0.5 * spec.J * np.exp(1j * spec.theta)) * k.data
    diag = 0.5 * spec.U * interaction_diagonal(basis).astype(float)
    eps = spec.epsilon_array
    if eps.any():
        diag = diag + basis.occupations @ eps
    rows = np.concatenate([k.row, np.arange(basis.dim)])
    cols = np.concatenate([k.col, np.arange(basis.dim)])
    vals = np.concatenate([hopv, diag.astype(np.complex128)])
    return SparseHermitian(basis.dim, rows, cols, vals, basis_tag=basis.tag)


def build_hamiltonian_bloch(spec: HamiltonianSpec, basis: BasisSet
                            ) -> SparseHermitian:
    """Assemble the Hamiltonian over Bloch-mode occupations.

    Kinetic part is diagonal, -J sum_k cos(2 pi k / L) n_k; the interaction
    scatters (k3, k4) -> (k1, k2) with total mode index conserved mod L, at
    strength U/(2L) and bosonic square-root amplitudes.
    """
    if basis.representation is not Representation.BLOCH:
        raise RepresentationError("build_hamiltonian_bloch needs a Bloch basis")
    if (spec.N, spec.L) != (basis.N, basis.L):
        raise DimensionMismatchError(
            f"spec (N={spec.N}, L={spec.L}) does not match basis {basis.tag}")
    if spec.theta != 0.0 or (spec.epsilon is not None and any(spec.epsilon)):
        raise RepresentationError(
            "disorder and Peierls phase are supported in the site "
            "representation only")
    if spec.F != 0.0:
        raise ValueError("static build requires F = 0")
    occ = basis.occupations
    dim, L = occ.shape
    kin = -spec.J * occ @ np.cos(2.0 * np.pi * np.arange(L) / L)
    rows = [np.arange(dim)]
    cols = [np.arange(dim)]
    vals = [kin.astype(np.complex128)]
    if spec.U != 0.0:
        g4 = 0.5 * spec.U / L
        r, c, v = _bloch_interaction(basis)
        rows.append(r)
        cols.append(c)
        vals.append(g4 * v)
    return SparseHermitian(dim, np.concatenate(rows), np.concatenate(cols),
                           np.concatenate(vals), basis_tag=basis.tag)


def _bloch_interaction(basis: BasisSet):
    """COO triplets of sum b+_{k1} b+_{k2} b_{k3} b_{k4} delta(k1+k2-k3-k4)."""
    occ = basis.occupations
    dim, L = occ.shape
    rows, cols, vals = [], [], []
    scratch = np.empty(L, dtype=np.int64)
    for j in range(dim):
        n = occ[j]
        for k4 in range(L):
            if n[k4] == 0:
                continue
            for k3 in range(L):
                np.copyto(scratch, n)
                a = scratch[k4]
                scratch[k4] -= 1
                b = scratch[k3]
                if b == 0:
                    continue
                scratch[k3] -= 1
                amp34 = np.sqrt(a * b)
                ksum = k3 + k4
                for k2 in range(L):
                    k1 = (ksum - k2) % L
                    m = scratch.copy()
                    c = m[k2] + 1
                    m[k2] += 1
                    d = m[k1] + 1
                    m[k1] += 1
                    i = basis.index_of(m)
                    if i > j:
                        continue  # lower triangle repeats the conjugates
                    rows.append(i)
                    cols.append(j)
                    vals.append(amp34 * np.sqrt(c * d))
    return (np.asarray(rows), np.asarray(cols), np.asarray(vals, dtype=float))


def check_quasimomentum_conservation(h: SparseHermitian, basis: BasisSet) -> bool:
    """True iff every stored entry connects states of equal quasimomentum."""
    kappa = quasimomentum_table(basis)
    return bool(np.all(kappa[h.row] == kappa[h.col]))
