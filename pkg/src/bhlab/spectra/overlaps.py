"""Eigenstate overlap matrices and their Breit-Wigner width.

R(m, n) = |<psi_m(U') | psi_n(U)>|^2 between the eigenbases of two
Hamiltonians at nearby interaction strengths.  For chaotic spectra the
profile averaged across the diagonal follows a Lorentzian of width Gamma.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from ..errors import (DegenerateProfileError, DimensionMismatchError,
                      InsufficientDataError)
from .eigen import Spectrum


@dataclass
class OverlapMatrix:
    """Doubly stochastic matrix of squared eigenvector overlaps."""

    R: np.ndarray
    params: tuple[str, str]        # provenance tags of the two spectra
    averaged_profile: tuple[np.ndarray, np.ndarray] | None = None


@dataclass
class BreitWignerFit:
    gamma: float
    d: np.ndarray
    profile: np.ndarray
    fit: np.ndarray
    relative_residual: float


def overlap_matrix(spec_a: Spectrum, spec_b: Spectrum) -> OverlapMatrix:
    """R[m, n] = |<a_m | b_n>|^2; rows/columns each sum to one."""
    if spec_a.eigenvectors is None or spec_b.eigenvectors is None:
        raise ValueError("both spectra must carry eigenvectors")
    if spec_a.eigenvectors.shape != spec_b.eigenvectors.shape:
        raise DimensionMismatchError("eigenvector blocks differ in shape")
    _check_same_basis(spec_a, spec_b)
    ov = spec_a.eigenvectors.conj().T @ spec_b.eigenvectors
    return OverlapMatrix(np.abs(ov) ** 2, (spec_a.sector_tag, spec_b.sector_tag))


def _check_same_basis(spec_a: Spectrum, spec_b: Spectrum) -> None:
    base_a = spec_a.sector_tag.split(",U=")[0] if spec_a.sector_tag else ""
    base_b = spec_b.sector_tag.split(",U=")[0] if spec_b.sector_tag else ""
    if base_a != base_b:
        raise DimensionMismatchError(
            f"spectra live on different bases: {base_a!r} vs {base_b!r}")


def central_window(dim: int, fraction: float = 1.0 / 3.0) -> range:
    """Index window centred in the spectrum (default: central third)."""
    half = int(dim * fraction / 2)
    mid = dim // 2
    return range(mid - half, mid + half)


def averaged_profile(r: np.ndarray, window: range, d_max: int
                     ) -> tuple[np.ndarray, np.ndarray]:
    """Mean of R(n + d, n) over n in the window, for |d| <= d_max."""
    dim = r.shape[0]
    ds = np.arange(-d_max, d_max + 1)
    prof = np.empty(ds.size)
    n = np.asarray(window)
    for i, d in enumerate(ds):
        rows = n + d
        ok = (rows >= 0) & (rows < dim)
        prof[i] = r[rows[ok], n[ok]].mean()
    return ds, prof


def overlap_profile(spec_a: Spectrum, spec_b: Spectrum, window: range,
                    d_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Averaged overlap profile without materializing the full R matrix.

    Only the rows window +- d_max of R are formed; at desk scale (dim ~ 6000)
    this keeps the memory footprint at a fraction of the full matrix.
    """
    if spec_a.eigenvectors is None or spec_b.eigenvectors is None:
        raise ValueError("both spectra must carry eigenvectors")
    _check_same_basis(spec_a, spec_b)
    dim = spec_a.eigenvectors.shape[1]
    lo = max(0, window.start - d_max)
    hi = min(dim, window.stop + d_max)
    rows = np.arange(lo, hi)
    block = np.abs(spec_a.eigenvectors[:, rows].conj().T
                   @ spec_b.eigenvectors[:, np.asarray(window)]) ** 2
    ds = np.arange(-d_max, d_max + 1)
    prof = np.empty(ds.size)
    n = np.asarray(window)
    for i, d in enumerate(ds):
        rr = n + d
        ok = (rr >= lo) & (rr < hi)
        prof[i] = block[rr[ok] - lo, np.nonzero(ok)[0]].mean()
    return ds, prof


def breit_wigner(d: np.ndarray, gamma: float) -> np.ndarray:
    return (gamma / (2.0 * np.pi)) / (d**2 + gamma**2 / 4.0)


def fit_breit_wigner_profile(ds: np.ndarray, prof: np.ndarray
                             ) -> BreitWignerFit:
    """Least-squares Lorentzian width from an averaged overlap profile."""
    off = prof[ds != 0]
    if off.size == 0 or off.max() < 1e-12:
        raise DegenerateProfileError(
            "profile has no off-diagonal weight (identical Hamiltonians?)")
    # moment-based start: half width where profile drops to half its peak
    peak = prof[ds == 0][0] if (ds == 0).any() else prof.max()
    above = prof >= 0.5 * peak
    width0 = max(1.0, float(np.abs(ds[above]).max()) * 2.0)
    (gamma,), _ = curve_fit(breit_wigner, ds.astype(float), prof,
                            p0=[width0], bounds=(1e-9, np.inf), maxfev=10000)
    fit = breit_wigner(ds.astype(float), gamma)
    core = np.abs(ds) <= max(3.0 * gamma, 1.0)
    rel = float(np.linalg.norm(prof[core] - fit[core])
                / np.linalg.norm(prof[core]))
    return BreitWignerFit(float(gamma), ds, prof, fit, rel)


def breit_wigner_fit(r: OverlapMatrix, window: range, d_max: int = 50
                     ) -> BreitWignerFit:
    """Averaged profile of an OverlapMatrix and its fitted width."""
    if len(window) < 20:
        raise InsufficientDataError("averaging window must span >= 20 states")
    ds, prof = averaged_profile(r.R, window, d_max)
    r.averaged_profile = (ds, prof)
    return fit_breit_wigner_profile(ds, prof)
