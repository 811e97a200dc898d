"""Random-matrix calibration ensembles (GOE and GUE).

The ensembles are normalized so that the mean level density of a GOE matrix
of size D is the semicircle rho(E) = sqrt(1 - (pi E / 2 D)^2): the density
integrates to D and the mean spacing at the band center is one.  That fixes
the independent-entry variances at 1/(2A) off the diagonal and 1/A on it,
with A = pi^2 / (2 D).
"""
from __future__ import annotations

import numpy as np

from .eigen import Spectrum
from .unfolding import SpacingLaw


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def sample_rmt_matrix(kind: SpacingLaw | str, dim: int, seed: int) -> np.ndarray:
    """One matrix drawn from the calibrated ensemble; bit-reproducible per seed."""
    kind = SpacingLaw(kind)
    if dim < 2:
        raise ValueError("dim must be at least 2")
    a = np.pi**2 / (2.0 * dim)
    rng = _rng(seed)
    if kind is SpacingLaw.GOE:
        sigma_off = np.sqrt(1.0 / (2.0 * a))
        h = rng.normal(scale=sigma_off, size=(dim, dim))
        h = np.triu(h, k=1)
        h = h + h.T
        h[np.diag_indices(dim)] = rng.normal(scale=np.sqrt(1.0 / a), size=dim)
        return h
    if kind is SpacingLaw.GUE:
        # P(H) ~ exp(-A Tr H+H): component variance 1/(4A) off-diagonal
        sigma_c = np.sqrt(1.0 / (4.0 * a))
        x = rng.normal(scale=sigma_c, size=(dim, dim))
        y = rng.normal(scale=sigma_c, size=(dim, dim))
        h = np.triu(x + 1j * y, k=1)
        h = h + h.conj().T
        h[np.diag_indices(dim)] = rng.normal(scale=np.sqrt(1.0 / (2.0 * a)),
                                             size=dim)
        return h
    raise ValueError("RMT sampling supports GOE and GUE only")


def sample_rmt(kind: SpacingLaw | str, dim: int, seed: int) -> Spectrum:
    """Spectrum of one random matrix from the calibrated ensemble."""
    h = sample_rmt_matrix(kind, dim, seed)
    w = np.linalg.eigvalsh(h)
    return Spectrum(w, None, f"rmt:{SpacingLaw(kind).value}:dim={dim}:seed={seed}")


def spacing_ensemble(kind: SpacingLaw | str, dim: int, count: int,
                     base_seed: int) -> np.ndarray:
    """Pooled nearest-neighbour spacings over `count` seeds, mean-normalized.

    For dim = 2 the spacing has the closed form
    sqrt((H11 - H22)^2 + 4 |H12|^2), which keeps large calibration sweeps
    (10^5 matrices) cheap.
    """
    kind = SpacingLaw(kind)
    spacings = np.empty(count * (dim - 1))
    for i in range(count):
        h = sample_rmt_matrix(kind, dim, base_seed + i)
        if dim == 2:
            spacings[i] = np.sqrt((h[0, 0].real - h[1, 1].real) ** 2
                                  + 4.0 * abs(h[0, 1]) ** 2)
        else:
            w = np.linalg.eigvalsh(h)
            spacings[i * (dim - 1):(i + 1) * (dim - 1)] = np.diff(w)
    return spacings / spacings.mean()


def semicircle_density(e: np.ndarray, dim: int) -> np.ndarray:
    """Mean GOE level density rho(E) = sqrt(1 - (pi E / 2 dim)^2), else 0.

    Integrates to dim over its support |E| <= 2 dim / pi.
    """
    x = np.pi * np.asarray(e, dtype=float) / (2.0 * dim)
    out = np.zeros_like(x)
    inside = np.abs(x) <= 1.0
    out[inside] = np.sqrt(1.0 - x[inside] ** 2)
    return out
