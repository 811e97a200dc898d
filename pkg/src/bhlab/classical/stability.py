"""Floquet stability of the Bloch-oscillating uniform solution.

The mean-field equation linearized about the uniform oscillating solution
is a Bogoliubov-de-Gennes pair system for (da, da*); in real coordinates it
is a 2L-dimensional linear ODE with T_B-periodic coefficients.  Stability
is read off the Floquet multipliers of the one-period fundamental matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import DomainError, IntegratorError


@dataclass
class MonodromyResult:
    multipliers: np.ndarray
    max_exponent: float
    classification: str            # "stable" | "unstable"
    period: float
    determinant: float

    @property
    def stable(self) -> bool:
        return self.classification == "stable"


def critical_field(J: float, g: float) -> tuple[float, float]:
    """Critical tilt of the uniform solution: (3g for F < 2J, sqrt(10 g J) for F > 2J)."""
    if g < 0 or J <= 0:
        raise DomainError("requires g >= 0 and J > 0")
    return 3.0 * g, math.sqrt(10.0 * g * J)


def _real_system_matrix(t: float, J: float, g: float, F: float, L: int
                        ) -> np.ndarray:
    """Real 2L x 2L coefficient matrix of the linearization at time t."""
    hop = np.zeros((L, L), dtype=complex)
    up = np.exp(1j * F * t)
    for l in range(L):
        hop[l, (l + 1) % L] += -0.5 * J * up
        hop[l, (l - 1) % L] += -0.5 * J * np.conj(up)
    a = -1j * (hop + 2.0 * g * np.eye(L))
    phi = (J / F) * math.sin(F * t) - g * t
    b = -1j * g * np.exp(2j * phi) * np.eye(L)
    return np.block([[a.real + b.real, b.imag - a.imag],
                     [a.imag + b.imag, a.real - b.real]])


def monodromy(J: float, g: float, F: float, L: int,
              tol_multiplier: float = 1e-6,
              rtol: float = 1e-11, atol: float = 1e-13) -> MonodromyResult:
    """Floquet multipliers of the uniform Bloch-oscillating solution.

    Classification is 'stable' iff max |multiplier| <= 1 + tol_multiplier.
    Multipliers come in symplectic-reciprocal pairs (lam, 1/lam*).
    """
    if F == 0.0:
        raise DomainError("monodromy needs F != 0 (finite Bloch period)")
    if L < 3:
        raise DomainError("stability analysis needs L >= 3")
    period = 2.0 * math.pi / abs(F)
    n = 2 * L

    def rhs(t, y):
        m = _real_system_matrix(t, J, g, F, L)
        return (m @ y.reshape(n, n)).ravel()

    sol = solve_ivp(rhs, (0.0, period), np.eye(n).ravel(), method="DOP853",
                    rtol=rtol, atol=atol, dense_output=False)
    if not sol.success:
        raise IntegratorError(f"monodromy integration failed: {sol.message}")
    phi = sol.y[:, -1].reshape(n, n)
    mult = np.linalg.eigvals(phi)
    max_mod = float(np.abs(mult).max())
    classification = "stable" if max_mod <= 1.0 + tol_multiplier else "unstable"
    return MonodromyResult(mult, math.log(max_mod) / period, classification,
                           period, float(np.linalg.det(phi)))


def pairing_defect(mult: np.ndarray) -> float:
    """Worst distance from the symplectic pairing (lam, 1/lam*)."""
    inv_conj = 1.0 / np.conj(mult)
    worst = 0.0
    for m in mult:
        worst = max(worst, float(np.abs(inv_conj - m).min()))
    return worst
