"""bhlab: a desk-scale numerical laboratory for the 1D Bose-Hubbard ring.

Subpackages
-----------
core       Fock bases, symmetry sectors, sparse Hamiltonians.
spectra    Eigensolvers, unfolding, spacing statistics, RMT, overlaps.
qdyn       Many-body Bloch-oscillation dynamics and observables.
classical  DNLSE integration, stability analysis, Husimi ensembles.
bogoliubov Semiclassical low-energy level predictions.
cli        Command-line front end and artifact writers.
"""

__version__ = "0.1.0"
