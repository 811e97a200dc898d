"""Quantum Bloch-oscillation dynamics: states, propagation, observables."""
from .decay import DecayFit, fit_decay, revival_amplitude, revival_envelope
from .observables import (hop_expectation, linear_entropy, mean_momentum,
                          one_particle_dm)
from .propagate import (EvolutionRecord, TiltedPropagator, default_dt, evolve)
from .states import (StateVector, bec_state, fix_phase, fock_state,
                     ground_energy, ground_state)

__all__ = [
    "DecayFit", "fit_decay", "revival_amplitude", "revival_envelope",
    "hop_expectation", "linear_entropy", "mean_momentum", "one_particle_dm",
    "EvolutionRecord", "TiltedPropagator", "default_dt", "evolve",
    "StateVector", "bec_state", "fix_phase", "fock_state", "ground_energy",
    "ground_state",
]
