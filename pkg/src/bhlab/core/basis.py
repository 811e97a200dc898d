"""Occupation-number bases for N bosons on a ring of L sites (or L Bloch modes).

States are compositions of N into L non-negative parts, enumerated in
descending lexicographic order so that matrices built on top of a basis are
reproducible bit-for-bit.  Lookup uses exact combinatorial ranking, not
hashing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import CapacityError, RepresentationError

# enumerating beyond this many states serves no purpose at desk scale
MAX_BASIS_STATES = 20_000_000


class Representation(str, Enum):
    SITE = "site"
    BLOCH = "bloch"


@dataclass(frozen=True)
class FockState:
    """A single occupation-number state |n_1, ..., n_L>."""

    occ: tuple[int, ...]
    representation: Representation = Representation.SITE

    def __post_init__(self):
        if len(self.occ) < 2:
            raise ValueError("need at least two sites/modes")
        if any(n < 0 for n in self.occ):
            raise ValueError("occupation numbers must be non-negative")

    @property
    def n_atoms(self) -> int:
        return int(sum(self.occ))

    @property
    def n_sites(self) -> int:
        return len(self.occ)


def hilbert_dimension(N: int, L: int) -> int:
    """Number of N-atom, L-site Fock states: binomial(N+L-1, N)."""
    return math.comb(N + L - 1, N)


def _binomial_table(nmax: int, kmax: int) -> np.ndarray:
    """Pascal triangle as a (nmax+1, kmax+1) int64 array."""
    table = np.zeros((nmax + 1, kmax + 1), dtype=np.int64)
    table[:, 0] = 1
    for n in range(1, nmax + 1):
        kk = min(n, kmax)
        table[n, 1 : kk + 1] = table[n - 1, 1 : kk + 1] + table[n - 1, 0:kk]
        if n <= kmax:
            table[n, n] = 1
    return table


class BasisSet:
    """Complete ordered Fock basis for fixed (N, L) in one representation.

    ``occupations`` is a (dim, L) int array holding every state;
    ``index_of`` ranks a state back to its ordinal in O(L).
    """

    def __init__(self, N: int, L: int,
                 representation: Representation = Representation.SITE):
        if N < 0 or L < 2:
            raise ValueError("need N >= 0 and L >= 2")
        dim = hilbert_dimension(N, L)
        if dim > MAX_BASIS_STATES:
            raise CapacityError(
                f"basis for N={N}, L={L} has {dim} states "
                f"(limit {MAX_BASIS_STATES})")
        self.N = N
        self.L = L
        self.representation = Representation(representation)
        self.occupations = _enumerate_descending(N, L)
        self._binom = _binomial_table(N + L, L)
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.occupations.shape[0]

    @property
    def tag(self) -> str:
        return f"{self.representation.value}:N={self.N},L={self.L}"

    def state(self, i: int) -> FockState:
        return FockState(tuple(int(n) for n in self.occupations[i]),
                         self.representation)

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        for i in range(self.dim):
            yield self.state(i)

    def index_of(self, occ) -> int:
        """Rank of one state in the descending-lex order."""
        occ = np.asarray(occ, dtype=np.int64)
        if occ.shape != (self.L,) or occ.sum() != self.N or (occ < 0).any():
            raise ValueError(f"not an (N={self.N}, L={self.L}) Fock state: {occ}")
        return int(self.index_of_batch(occ[None, :])[0])

    def index_of_batch(self, occs: np.ndarray) -> np.ndarray:
        """Vectorized ranking of a (m, L) block of valid states."""
        occs = np.asarray(occs, dtype=np.int64)
        L = self.L
        # rem[:, i] = atoms left for positions i.. ; states ranked earlier put
        # more atoms at position i, counted by a hockey-stick binomial sum
        rem = self.N - np.cumsum(occs, axis=1) + occs
        a = rem[:, : L - 1] - occs[:, : L - 1] - 1
        p = np.arange(L - 1, 0, -1, dtype=np.int64)
        terms = np.where(a >= 0, self._binom[np.maximum(a, 0) + p, p], 0)
        return terms.sum(axis=1)


def _enumerate_descending(N: int, L: int) -> np.ndarray:
    """All compositions of N into L parts, descending lexicographic order."""
    dim = hilbert_dimension(N, L)
    out = np.zeros((dim, L), dtype=np.int64)
    occ = [0] * L
    occ[0] = N
    out[0] = occ
    for row in range(1, dim):
        # rightmost non-terminal nonzero moves one atom right, tail resets
        i = L - 2
        while occ[i] == 0:
            i -= 1
        occ[i] -= 1
        occ[i + 1] = N - sum(occ[: i + 1])
        for j in range(i + 2, L):
            occ[j] = 0
        out[row] = occ
    return out


def enumerate_basis(N: int, L: int,
                    representation: Representation = Representation.SITE
                    ) -> BasisSet:
    """Build the complete (N, L) Fock basis in the given representation."""
    return BasisSet(N, L, representation)


def quasimomentum_of(state: FockState | np.ndarray, L: int | None = None) -> int:
    """Total quasimomentum index k in 0..L-1 of a Bloch-mode Fock state.

    The physical quasimomentum is 2*pi*k/L; k is the mode-weighted occupation
    sum reduced modulo L.
    """
    if isinstance(state, FockState):
        if state.representation is not Representation.BLOCH:
            raise RepresentationError(
                "quasimomentum is defined for Bloch-mode occupations only")
        occ = np.asarray(state.occ, dtype=np.int64)
    else:
        occ = np.asarray(state, dtype=np.int64)
    L = len(occ) if L is None else L
    k = np.arange(L, dtype=np.int64)
    return int((k * occ).sum() % L)


def quasimomentum_table(basis: BasisSet) -> np.ndarray:
    """Quasimomentum index of every state of a Bloch-representation basis."""
    if basis.representation is not Representation.BLOCH:
        raise RepresentationError("basis is not in the Bloch representation")
    k = np.arange(basis.L, dtype=np.int64)
    return (basis.occupations @ k) % basis.L
