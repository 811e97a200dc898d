"""Monte-Carlo ensemble representing the BEC state's phase-space density.

The condensate's Husimi weight on a unit-norm field a is |c0|^(2N) where
c0 is the zero-quasimomentum amplitude of a.  Under the uniform sphere
measure the condensate weight w = |c0|^2 has marginal Beta(1, L-1), so the
weighted marginal is Beta(N+1, L-1); sampling w directly sidesteps the
rejection method's L^-N acceptance collapse (the rejection sampler survives
as a small-scale test oracle).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import IntegratorError
from .dnlse import ClassicalField, _SplitStepper, _march


@dataclass
class HusimiEnsemble:
    """Seeded collection of unit-norm fields distributed as the BEC Husimi."""

    fields: np.ndarray   # (count, L) complex
    seed: int
    N: int
    L: int

    @property
    def count(self) -> int:
        return self.fields.shape[0]

    def members(self, lam: float):
        return [ClassicalField(f, lam) for f in self.fields]


@dataclass
class EnsembleRecord:
    times: np.ndarray
    p_mean: np.ndarray
    p_stderr: np.ndarray
    count: int
    seed: int
    lam: float


def sample_husimi_bec(N: int, L: int, count: int, seed: int) -> HusimiEnsemble:
    """Draw `count` fields with density proportional to |c0|^(2N).

    Construction: w ~ Beta(N+1, L-1), uniform condensate phase, isotropic
    complement scaled to 1 - w; deterministic per seed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0xB05E)))
    w = rng.beta(N + 1, L - 1, size=count)
    phase = rng.uniform(0.0, 2.0 * math.pi, size=count)
    z = rng.standard_normal((count, L - 1)) + 1j * rng.standard_normal((count, L - 1))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    coeff = np.empty((count, L), dtype=complex)
    coeff[:, 0] = np.sqrt(w) * np.exp(1j * phase)
    coeff[:, 1:] = np.sqrt(1.0 - w)[:, None] * z
    # unitary map from Fourier coefficients to site amplitudes; column 0 is
    # the uniform (condensate) direction
    l = np.arange(L)
    wmat = np.exp(2j * np.pi * np.outer(l, l) / L) / math.sqrt(L)
    fields = coeff @ wmat.T
    return HusimiEnsemble(fields, seed, N, L)


def condensate_weight(fields: np.ndarray) -> np.ndarray:
    """w = |c0|^2, the squared overlap with the uniform direction."""
    l_sites = fields.shape[-1]
    c0 = fields.sum(axis=-1) / math.sqrt(l_sites)
    return np.abs(c0) ** 2


def rejection_sample_weights(N: int, L: int, count: int, seed: int,
                             max_proposals: int = 10_000_000) -> np.ndarray:
    """Accept-reject oracle for the condensate-weight marginal.

    Proposes uniform points on the unit sphere of C^L and accepts with
    probability w^N; tractable only at small N, L as the acceptance rate
    falls off steeply.
    """
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0xACC1)))
    out = np.empty(count)
    got = 0
    proposed = 0
    batch = max(1024, count)
    while got < count:
        if proposed > max_proposals:
            raise IntegratorError("rejection oracle exceeded proposal budget")
        z = rng.standard_normal((batch, L)) + 1j * rng.standard_normal((batch, L))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        w = condensate_weight(z)
        accept = rng.uniform(size=batch) < w**N
        taken = np.nonzero(accept)[0][: count - got]
        out[got:got + taken.size] = w[taken]
        got += taken.size
        proposed += batch
    return out


def aligned_site_deviations(ensemble: HusimiEnsemble) -> np.ndarray:
    """Per-member, per-site deviations sqrt(L) psi_l e^{-i arg c0} - sqrt(w).

    The Husimi density fixes no global phase, so members are rotated to a
    real-positive condensate amplitude before their spread is measured;
    this is the frame in which the cloud width scales as 1/sqrt(nbar).
    """
    f = ensemble.fields
    c0 = f.sum(axis=-1) / math.sqrt(ensemble.L)
    aligned = f * np.exp(-1j * np.angle(c0))[:, None] * math.sqrt(ensemble.L)
    return aligned - np.abs(c0)[:, None] * 1.0


def width_scaling_exponent(L: int, n_values, members: int, seed: int
                           ) -> float:
    """Log-log slope of the member-fluctuation width against N at fixed L."""
    widths = []
    for i, n in enumerate(n_values):
        ens = sample_husimi_bec(n, L, members, seed + 7 * i)
        dev = aligned_site_deviations(ens)
        widths.append(float(np.std(dev.real)))
    slope, _ = np.polyfit(np.log(np.asarray(n_values, dtype=float)),
                          np.log(widths), 1)
    return float(slope)


def ensemble_evolve(ensemble: HusimiEnsemble, J: float, lam: float, F: float,
                    t_max: float, dt: float = 1e-2, sample_every: int = 100,
                    chunk_size: int = 64) -> EnsembleRecord:
    """Mean classical momentum over the ensemble under the tilted DNLSE.

    Members integrate in fixed-size chunks (identical batching regardless of
    any outer parallelism) and reduce member-by-member in index order with
    compensated summation, so the averaged record is bit-reproducible.
    """
    stepper = _SplitStepper(ensemble.L, J, lam, F)
    n_steps = int(round(t_max / dt))
    sample_steps = [0] + [i for i in range(1, n_steps + 1)
                          if i % sample_every == 0 or i == n_steps]
    times = None
    total = kahan_comp = None
    total_sq = kahan_comp_sq = None

    for start in range(0, ensemble.count, chunk_size):
        block = ensemble.fields[start:start + chunk_size].copy()
        rows = []

        def on_sample(i, t, psi):
            rows.append(stepper.momentum(psi, t))

        _march(stepper, block, 0.0, n_steps, dt, sample_every, on_sample)
        p_block = np.stack(rows, axis=1)  # (chunk, n_samples)
        if times is None:
            times = dt * np.asarray(sample_steps, dtype=float)
            total = np.zeros(p_block.shape[1])
            kahan_comp = np.zeros_like(total)
            total_sq = np.zeros_like(total)
            kahan_comp_sq = np.zeros_like(total)
        for row in p_block:
            _kahan_add(total, kahan_comp, row)
            _kahan_add(total_sq, kahan_comp_sq, row * row)
    m = ensemble.count
    mean = total / m
    var = np.maximum(total_sq / m - mean**2, 0.0)
    stderr = np.sqrt(var / m)
    return EnsembleRecord(times, mean, stderr, m, ensemble.seed, lam)


def _kahan_add(total: np.ndarray, comp: np.ndarray, x: np.ndarray) -> None:
    y = x - comp
    t = total + y
    comp[:] = (t - total) - y
    total[:] = t
