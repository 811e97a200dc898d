"""Decay-rate extraction and the strong-field revival envelope."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientDataError
from .propagate import EvolutionRecord


@dataclass
class DecayFit:
    """Exponential decay rate of the oscillation extrema."""

    gamma: float
    residual: float
    window: tuple[float, float]
    extrema_times: np.ndarray
    extrema_values: np.ndarray


def _refined_extrema(t: np.ndarray, p: np.ndarray, floor: float):
    """Local |p| maxima with parabolic refinement of the sampled peak."""
    a = np.abs(p)
    idx = np.nonzero((a[1:-1] >= a[:-2]) & (a[1:-1] >= a[2:])
                     & (a[1:-1] > floor))[0] + 1
    times, values = [], []
    for i in idx:
        y0, y1, y2 = a[i - 1], a[i], a[i + 1]
        denom = y0 - 2 * y1 + y2
        if denom < 0:
            shift = 0.5 * (y0 - y2) / denom
            shift = float(np.clip(shift, -1.0, 1.0))
            times.append(t[i] + shift * (t[i] - t[i - 1]))
            values.append(y1 - 0.25 * (y0 - y2) * shift)
        else:
            times.append(t[i])
            values.append(y1)
    return np.asarray(times), np.asarray(values)


def fit_decay(record: EvolutionRecord,
              window: tuple[float, float] | None = None) -> DecayFit:
    """gamma from a log-linear regression on successive |p| extrema.

    The record must span at least five Bloch periods of the recorded tilt;
    ``window`` restricts the fit to a time range (defaults to the full run).
    """
    f = record.params.F
    if f <= 0:
        raise InsufficientDataError("decay fit needs a finite Bloch frequency")
    t_b = 2.0 * math.pi / f
    if record.times[-1] - record.times[0] < 5 * t_b:
        raise InsufficientDataError("record spans fewer than 5 Bloch periods")
    lo, hi = window if window is not None else (record.times[0],
                                                record.times[-1])
    sel = (record.times >= lo) & (record.times <= hi)
    t, p = record.times[sel], record.momentum[sel]
    floor = 1e-10 * max(abs(record.params.J), 1e-30)
    te, pe = _refined_extrema(t, p, floor)
    if te.size < 4:
        raise InsufficientDataError(
            f"only {te.size} extrema in the window; need at least 4")
    logs = np.log(pe)
    slope, intercept = np.polyfit(te, logs, 1)
    resid = logs - (slope * te + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    return DecayFit(float(-slope), rms, (float(lo), float(hi)), te, pe)


def revival_envelope(t, nbar: float, U: float, J: float, F: float):
    """Strong-field momentum prediction with periodic phase revivals."""
    t = np.asarray(t, dtype=float)
    out = -J * np.exp(-2.0 * nbar * (1.0 - np.cos(U * t))) * np.sin(F * t)
    return out if out.shape else float(out)


def revival_amplitude(t, nbar: float, U: float, J: float):
    """Envelope magnitude J exp(-2 nbar (1 - cos U t)) of the revivals."""
    t = np.asarray(t, dtype=float)
    out = abs(J) * np.exp(-2.0 * nbar * (1.0 - np.cos(U * t)))
    return out if out.shape else float(out)
