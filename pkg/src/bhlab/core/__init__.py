"""Fock bases, symmetry sectors, and sparse Bose-Hubbard matrices."""
from .basis import (BasisSet, FockState, Representation, enumerate_basis,
                    hilbert_dimension, quasimomentum_of, quasimomentum_table)
from .hamiltonian import (HamiltonianSpec, SparseHermitian,
                          build_hamiltonian, build_hamiltonian_bloch,
                          check_quasimomentum_conservation, disorder_spec,
                          hop_matrix, interaction_diagonal)
from .symmetry import SymmetrySector, build_sectors, project_to_sector

__all__ = [
    "BasisSet", "FockState", "Representation", "enumerate_basis",
    "hilbert_dimension", "quasimomentum_of", "quasimomentum_table",
    "HamiltonianSpec", "SparseHermitian", "build_hamiltonian",
    "build_hamiltonian_bloch", "check_quasimomentum_conservation",
    "disorder_spec", "hop_matrix", "interaction_diagonal",
    "SymmetrySector", "build_sectors", "project_to_sector",
]
