"""Gated single-photon counting of the transmitted wavefront."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FitError
from .interferometer import analyze

__all__ = [
    "CountingConfig",
    "CountRecord",
    "MalusFit",
    "rate_from_power",
    "windowed_power",
    "expected_rate",
    "sample_counts",
    "malus_sweep",
    "fit_malus",
    "dispersion_index",
]


@dataclass(frozen=True)
class CountingConfig:
    """Detector gating and source parameters.

    ``window`` is relative to the wavefront reference time passed to the
    counting functions.
    """

    window: tuple = (-1e-9, 2.5e-9)
    pulses_per_cycle: int = 500
    pulse_rate: float = 800e3
    cycle_rate: float = 40.0
    mu_bright: float = 0.11
    dark_rate: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        lo, hi = self.window
        if not lo < hi:
            raise ValueError("counting window must have t_lo < t_hi")
        if self.pulses_per_cycle <= 0 or self.pulse_rate <= 0 or self.cycle_rate <= 0:
            raise ValueError("pulse counts and rates must be positive")
        if self.pulses_per_cycle / self.pulse_rate >= 1.0 / self.cycle_rate:
            raise ValueError("probe pulse train does not fit in one cycle")
        if self.mu_bright < 0 or self.dark_rate < 0:
            raise ValueError("mu_bright and dark_rate must be non-negative")

    @property
    def pulses_per_second(self):
        return self.pulses_per_cycle * self.cycle_rate

    @classmethod
    def for_bright_rate(cls, rate, dark_rate=0.5, **kwargs):
        """Choose ``mu_bright`` so the bright port counts ``rate`` per second."""
        pps = kwargs.get("pulses_per_cycle", 500) * kwargs.get("cycle_rate", 40.0)
        return cls(mu_bright=(rate - dark_rate) / pps, dark_rate=dark_rate, **kwargs)


@dataclass(frozen=True)
class CountRecord:
    angle: float
    integration_time: float
    counts: int
    expected_rate: float
    seed: int = 0


@dataclass(frozen=True)
class MalusFit:
    """``rate(theta) = offset + amplitude * cos(2 * (theta - phase))**2``."""

    amplitude: float
    offset: float
    phase: float
    visibility: float
    r2: float
    residuals: np.ndarray

    @property
    def min_angle(self):
        return (self.phase + np.pi / 4) % (np.pi / 2)

    def __call__(self, theta):
        return self.offset + self.amplitude * np.cos(2 * (np.asarray(theta) - self.phase)) ** 2


def rate_from_power(power, bright_power, config):
    """Detected rate for a windowed power, scaled to the bright-port power."""
    mu = config.mu_bright * power / bright_power if bright_power > 0 else 0.0
    return config.pulses_per_second * mu + config.dark_rate


def windowed_power(trace, times, t_ref, window):
    sel = (times >= t_ref + window[0]) & (times <= t_ref + window[1])
    if not sel.any():
        raise ValueError("counting window contains no samples")
    return float(trace[sel].mean())


def expected_rate(state, config, hwp_angle, t_ref, bright_hwp_angle=np.pi / 8):
    """Expected count rate with the analysis half-wave plate at ``hwp_angle``."""
    t = state.times
    p = windowed_power(analyze(state, 2 * hwp_angle), t, t_ref, config.window)
    pb = windowed_power(analyze(state, 2 * bright_hwp_angle), t, t_ref, config.window)
    return rate_from_power(p, pb, config)


def sample_counts(rate, duration, seed):
    """Poisson counts with mean ``rate * duration``; reproducible per seed."""
    if rate < 0:
        raise ValueError("rate must be non-negative")
    if rate == 0:
        return 0
    return int(np.random.default_rng(seed).poisson(rate * duration))


def malus_sweep(state, config, hwp_angles, t_ref, integration_time=1.0, bright_hwp_angle=np.pi / 8):
    """Counts versus analysis HWP angle.

    One RNG, seeded from ``config.rng_seed``, is drawn in angle order.
    """
    angles = np.asarray(hwp_angles, dtype=float)
    if np.unique(np.round(angles, 12)).size < 8:
        raise ValueError("a Malus sweep needs at least 8 distinct angles")
    t = state.times
    pb = windowed_power(analyze(state, 2 * bright_hwp_angle), t, t_ref, config.window)
    rng = np.random.default_rng(config.rng_seed)
    records = []
    for theta in angles:
        p = windowed_power(analyze(state, 2 * theta), t, t_ref, config.window)
        rate = rate_from_power(p, pb, config)
        counts = int(rng.poisson(rate * integration_time))
        records.append(CountRecord(float(theta), integration_time, counts, rate, config.rng_seed))
    return records


def fit_malus(records, use="expected"):
    """Least-squares ``cos**2`` fit over HWP angle.

    The model is linear in ``(1, cos 4theta, sin 4theta)``, so the fit is a
    single ``lstsq`` solve. ``use`` selects expected rates or sampled count
    rates.
    """
    theta = np.array([r.angle for r in records])
    if use == "expected":
        y = np.array([r.expected_rate for r in records])
    elif use == "counts":
        y = np.array([r.counts / r.integration_time for r in records])
    else:
        raise ValueError(f"use must be 'expected' or 'counts', got {use!r}")
    A = np.column_stack([np.ones_like(theta), np.cos(4 * theta), np.sin(4 * theta)])
    coef, _, rank, _ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    if rank < 3:
        raise FitError("angles do not constrain a cos^2 law", residuals=resid)
    a0, a1, b1 = coef
    half_amp = float(np.hypot(a1, b1))
    amplitude = 2 * half_amp
    offset = float(a0 - half_amp)
    phase = float(np.arctan2(b1, a1) / 4) % (np.pi / 2)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 0.0
    p_max, p_min = offset + amplitude, offset
    vis = (p_max - p_min) / (p_max + p_min) if p_max + p_min > 0 else 0.0
    return MalusFit(amplitude, offset, phase, float(vis), r2, resid)


def dispersion_index(samples):
    """Variance-to-mean ratio (1 for Poisson)."""
    samples = np.asarray(samples, dtype=float)
    return float(samples.var(ddof=1) / samples.mean())
