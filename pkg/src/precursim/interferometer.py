"""Two-arm polarization interferometer.

The beam-displacer path is reduced to one scalar transfer function per
polarization: ``E_H`` sees the H-arm medium and ``E_V`` the V-arm medium.
Mechanical instability of the real setup enters only as a static
incoherent leakage fixed by the extinction ratio (``visibility_floor``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dispersion import kramers_kronig_phase
from .errors import GridMismatchError
from .medium import AbsorptionProfile
from .propagation import PulseEnvelope, propagate

__all__ = [
    "JonesState",
    "ArmPair",
    "probe_state",
    "hwp",
    "run_interferometer",
    "analyze",
    "bright_dark",
    "visibility",
    "edge_contrast",
    "leakage_fraction",
    "H_PLUS_V",
    "H_MINUS_V",
]

H_PLUS_V = np.pi / 4
H_MINUS_V = 3 * np.pi / 4


@dataclass(frozen=True)
class JonesState:
    t_start: float
    dt: float
    e_h: np.ndarray = field(repr=False)
    e_v: np.ndarray = field(repr=False)
    # depolarized share of the power; set by the interferometer's floor
    incoherent_fraction: float = 0.0

    def __post_init__(self):
        e_h = np.asarray(self.e_h, dtype=complex)
        e_v = np.asarray(self.e_v, dtype=complex)
        if e_h.shape != e_v.shape:
            raise GridMismatchError("H and V envelopes must share one time grid")
        object.__setattr__(self, "e_h", e_h)
        object.__setattr__(self, "e_v", e_v)

    @property
    def times(self):
        return self.t_start + np.arange(self.e_h.size) * self.dt

    @property
    def total_power(self):
        return np.abs(self.e_h) ** 2 + np.abs(self.e_v) ** 2

    def component(self, which):
        return PulseEnvelope(self.t_start, self.dt, self.e_h if which == "h" else self.e_v)


@dataclass(frozen=True)
class ArmPair:
    """Media in the two arms. ``None`` for a profile means the arm is blocked."""

    profile_h: AbsorptionProfile | None
    profile_v: AbsorptionProfile | None
    relative_phase: float = 0.0
    imbalance: float = 1.0
    visibility_floor: float = 1 / 8000

    def __post_init__(self):
        if not self.imbalance > 0:
            raise ValueError("imbalance must be positive")
        if self.visibility_floor < 0:
            raise ValueError("visibility_floor must be non-negative")
        if (
            self.profile_h is not None
            and self.profile_v is not None
            and self.profile_h.grid != self.profile_v.grid
        ):
            raise GridMismatchError("arm profiles must share one frequency grid")


def probe_state(pulse):
    """Split a scalar probe into equal H and V components (H+V polarization)."""
    a = pulse.samples / np.sqrt(2.0)
    return JonesState(pulse.t_start, pulse.dt, a, a.copy())


def hwp(state, angle):
    """Half-wave plate with fast axis at ``angle`` (radians) from H."""
    c, s = np.cos(2 * angle), np.sin(2 * angle)
    return JonesState(
        state.t_start,
        state.dt,
        c * state.e_h + s * state.e_v,
        s * state.e_h - c * state.e_v,
        state.incoherent_fraction,
    )


def leakage_fraction(floor):
    """Depolarized fraction giving ``P_min / P_max == floor`` for a perfect interferometer."""
    return 2.0 * floor / (1.0 + floor)


def _through(envelope, profile):
    if profile is None:
        return envelope.with_samples(np.zeros(envelope.n, dtype=complex))
    return propagate(envelope, kramers_kronig_phase(profile))


def run_interferometer(state, arms):
    """Propagate each polarization through its own arm and recombine."""
    out_h = _through(state.component("h"), arms.profile_h)
    out_v = _through(state.component("v"), arms.profile_v)
    e_v = out_v.samples * arms.imbalance * np.exp(1j * arms.relative_phase)
    return JonesState(
        state.t_start,
        state.dt,
        out_h.samples,
        e_v,
        leakage_fraction(arms.visibility_floor),
    )


def analyze(state, basis_angle):
    """Power transmitted by a PBS after a HWP set to project onto ``basis_angle``.

    ``basis_angle`` is the analysed polarization direction: 0 is H,
    ``pi/4`` is H+V and ``3*pi/4`` is H-V. The half-wave plate sits at half
    that angle.
    """
    rotated = hwp(state, 0.5 * basis_angle)
    eps = state.incoherent_fraction
    return (1.0 - eps) * np.abs(rotated.e_h) ** 2 + 0.5 * eps * state.total_power


def bright_dark(state):
    return analyze(state, H_PLUS_V), analyze(state, H_MINUS_V)


def visibility(bright, dark, times, window):
    """``(P_max - P_min) / (P_max + P_min)`` from windowed mean powers, clamped to [0, 1]."""
    sel = (times >= window[0]) & (times <= window[1])
    if not sel.any():
        raise ValueError("window contains no samples")
    p_max = float(np.mean(bright[sel]))
    p_min = float(np.mean(dark[sel]))
    if p_max <= 0:
        raise ValueError("bright port carries no energy in the window")
    return float(np.clip((p_max - p_min) / (p_max + p_min), 0.0, 1.0))


def edge_contrast(state, edge_time, window=(-1e-9, 2.5e-9)):
    """Dark-to-bright mean power ratio in a window around ``edge_time``."""
    bright, dark = bright_dark(state)
    t = state.times
    sel = (t >= edge_time + window[0]) & (t <= edge_time + window[1])
    return float(dark[sel].mean() / bright[sel].mean())
