"""Probe envelopes and linear FFT propagation.

Envelopes are complex baseband samples on the time grid conjugate to a
:class:`~precursim.medium.FrequencyGrid`; ``|a|**2`` is instantaneous power.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import curve_fit
from scipy.special import erf, erfinv

from .dispersion import ComplexResponse, to_fft_order, transfer_function
from .errors import (
    AliasingError,
    AmbiguousPeakError,
    GridMismatchError,
    NoFrontError,
    WindowTooSmallError,
)

__all__ = [
    "PulseEnvelope",
    "FrontReport",
    "SpikeMetrics",
    "gaussian_pulse",
    "square_pulse",
    "propagate",
    "peak_shift",
    "front_crossing",
    "pulse_onset",
    "edge_spike_metrics",
    "main_field_arrival",
    "windowed_mean",
]

# erf edge: power rises as (1 + erf(t / (sqrt(2) sigma))) / 2, so the 10-90 %
# duration is 2 * sqrt(2) * erfinv(0.8) * sigma
_ERF_10_90 = 2.0 * np.sqrt(2.0) * erfinv(0.8)
# raised-cosine edge over a full transition T: 10-90 % spans (1 - 2*acos(0.8)/pi) * T
_COS_10_90 = 1.0 - 2.0 * np.arccos(0.8) / np.pi


@dataclass(frozen=True)
class PulseEnvelope:
    t_start: float
    dt: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        a = np.asarray(self.samples, dtype=complex)
        if a.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(a)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", a)

    @property
    def n(self):
        return self.samples.size

    @property
    def times(self):
        return self.t_start + np.arange(self.n) * self.dt

    @property
    def power(self):
        return np.abs(self.samples) ** 2

    @property
    def energy(self):
        return float(self.power.sum() * self.dt)

    def with_samples(self, samples):
        return PulseEnvelope(self.t_start, self.dt, samples)

    def __add__(self, other):
        _check_same_axis(self, other)
        return self.with_samples(self.samples + other.samples)

    def __mul__(self, scalar):
        return self.with_samples(self.samples * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class FrontReport:
    threshold_fraction: float
    crossing_time: float
    pre_front_residual: float


@dataclass(frozen=True)
class SpikeMetrics:
    spike_peaks: tuple
    plateau: float
    ratio: float
    ratios: tuple


def _check_same_axis(a, b):
    if (
        a.n != b.n
        or not np.isclose(a.dt, b.dt, rtol=1e-12, atol=0)
        or abs(a.t_start - b.t_start) > 1e-6 * a.dt
    ):
        raise GridMismatchError("envelopes are sampled on different time grids")


def _time_axis(grid, t_start):
    if t_start is None:
        t_start = -0.25 * grid.n_points * grid.dt
    return t_start, grid.times(t_start)


def gaussian_pulse(fwhm, center, grid, t_start=None, clip_tol=1e-9):
    """Gaussian probe with unit peak amplitude; ``fwhm`` refers to power.

    ``t_start`` defaults to a quarter window before zero.
    """
    if fwhm < 4 * grid.dt:
        raise ValueError(f"fwhm {fwhm:.3g} s is below four samples ({4 * grid.dt:.3g} s)")
    t_start, t = _time_axis(grid, t_start)
    amp = np.exp2(-0.5 * (2.0 * (t - center) / fwhm) ** 2)
    if max(amp[0] ** 2, amp[-1] ** 2) > clip_tol:
        raise WindowTooSmallError("Gaussian tails are clipped by the time window")
    return PulseEnvelope(t_start, grid.dt, amp.astype(complex))


def _edge_power(t, rise_time, edge_shape):
    """Rising edge centred on t = 0 with the given 10-90 % power rise time."""
    if edge_shape == "erf":
        sigma = rise_time / _ERF_10_90
        return 0.5 * (1.0 + erf(t / (np.sqrt(2.0) * sigma)))
    if edge_shape == "raised_cosine":
        full = rise_time / _COS_10_90
        u = np.clip(t / full + 0.5, 0.0, 1.0)
        return 0.5 * (1.0 - np.cos(np.pi * u))
    raise ValueError(f"edge_shape must be 'erf' or 'raised_cosine', got {edge_shape!r}")


def square_pulse(width, rise_time, grid, edge_shape="erf", t_start=None, t0=0.0):
    """Flat-top probe with edges at ``t0`` and ``t0 + width``.

    Edges are defined on power; the 50 % points sit exactly at the nominal
    edge times.
    """
    if rise_time < 2 * grid.dt:
        raise ValueError(f"rise time {rise_time:.3g} s is unresolvable with dt={grid.dt:.3g} s")
    if not width > 4 * rise_time:
        raise ValueError("width must exceed four rise times")
    t_start, t = _time_axis(grid, t_start)
    rise = _edge_power(t - t0, rise_time, edge_shape)
    fall = _edge_power(t0 + width - t, rise_time, edge_shape)
    power = np.minimum(rise, fall)
    if max(power[0], power[-1]) > 1e-9:
        raise WindowTooSmallError("square pulse does not fit in the time window")
    return PulseEnvelope(t_start, grid.dt, np.sqrt(power).astype(complex))


def propagate(pulse, H, grid=None, boundary_fraction=1 / 64, alias_tol=1e-9):
    """Send ``pulse`` through a medium: ``ifft(fft(a) * H)``.

    ``H`` is a :class:`~precursim.dispersion.ComplexResponse` or a complex
    transfer function sampled on ``grid`` (centred detuning order).

    Raises:
        GridMismatchError: pulse and transfer grids are not conjugate.
        AliasingError: output energy within ``boundary_fraction`` of either
            window edge exceeds ``alias_tol`` of the total.
    """
    if isinstance(H, ComplexResponse):
        grid = H.grid
        H = transfer_function(H)
    elif grid is None:
        raise TypeError("grid is required when H is a plain array")
    H = np.broadcast_to(np.asarray(H, dtype=complex), (grid.n_points,))
    if pulse.n != grid.n_points or not np.isclose(pulse.dt * grid.df * grid.n_points, 1.0, rtol=1e-9):
        raise GridMismatchError(
            f"pulse (n={pulse.n}, dt={pulse.dt:.4g}) is not conjugate to grid "
            f"(n={grid.n_points}, df={grid.df:.4g})"
        )
    out = np.fft.ifft(np.fft.fft(pulse.samples) * to_fft_order(H))
    p = np.abs(out) ** 2
    total = p.sum()
    if total > 0:
        nb = max(1, int(pulse.n * boundary_fraction))
        edge = p[:nb].sum() + p[-nb:].sum()
        if edge > alias_tol * total:
            raise AliasingError(
                f"{edge / total:.2e} of the output energy sits at the window boundary"
            )
    return pulse.with_samples(out)


def _count_peaks(power):
    above = power >= 0.5 * power.max()
    return int(np.count_nonzero(np.diff(above.astype(np.int8)) == 1) + above[0])


def _parabolic(y0, y1, y2):
    denom = y0 - 2.0 * y1 + y2
    return 0.0 if denom == 0 else 0.5 * (y0 - y2) / denom


def _gauss(t, a, t0, w):
    return a * np.exp(-4.0 * np.log(2.0) * ((t - t0) / w) ** 2)


def _gaussian_center(pulse):
    p = pulse.power
    i = int(np.argmax(p))
    sel = p > 0.01 * p[i]
    t = pulse.times
    w0 = max(np.count_nonzero(sel) * pulse.dt / 2.5, 4 * pulse.dt)
    (a, t0, w), _ = curve_fit(_gauss, t[sel], p[sel], p0=(p[i], t[i], w0))
    return t0


def peak_shift(reference, output, method="xcorr"):
    """Delay of ``output`` relative to ``reference`` (positive = delayed).

    ``xcorr`` locates the maximum of the power cross-correlation and refines
    it with a parabola through the three samples around it; ``gaussian``
    fits a Gaussian to each trace and differences the centres.
    """
    _check_same_axis(reference, output)
    for name, p in (("reference", reference.power), ("output", output.power)):
        if _count_peaks(p) != 1:
            raise AmbiguousPeakError(f"{name} has several peaks above half maximum")
    offset = output.t_start - reference.t_start
    if method == "gaussian":
        return float(_gaussian_center(output) - _gaussian_center(reference))
    if method != "xcorr":
        raise ValueError(f"unknown method {method!r}")
    n = reference.n
    xc = np.fft.ifft(np.fft.fft(output.power) * np.conj(np.fft.fft(reference.power))).real
    k = int(np.argmax(xc))
    frac = _parabolic(xc[k - 1], xc[k], xc[(k + 1) % n])
    lag = k if k < n // 2 else k - n
    return float((lag + frac) * reference.dt + offset)


def pulse_onset(pulse, level=1e-12):
    """First time the power exceeds ``level`` times its peak."""
    p = pulse.power
    i = int(np.argmax(p > level * p.max()))
    return float(pulse.times[i])


def front_crossing(pulse, threshold_fraction=0.01, reference_power=None, onset=None):
    """First crossing of ``threshold_fraction * reference_power``.

    ``reference_power`` defaults to the pulse's own peak power. Comparing
    fronts across media is only meaningful with a shared reference, e.g. the
    input plateau. When ``onset`` (the input onset time) is given, the
    report includes the largest power before it relative to the peak.
    """
    if not 0.0 < threshold_fraction < 1.0:
        raise ValueError("threshold_fraction must lie in (0, 1)")
    p = pulse.power
    peak = float(p.max())
    ref = peak if reference_power is None else float(reference_power)
    level = threshold_fraction * ref
    above = np.flatnonzero(p > level)
    if above.size == 0:
        raise NoFrontError(f"power never exceeds {level:.3g}")
    i = int(above[0])
    t = pulse.times
    if i == 0:
        crossing = float(t[0])
    else:
        crossing = float(t[i - 1] + (level - p[i - 1]) / (p[i] - p[i - 1]) * pulse.dt)
    residual = float("nan")
    if onset is not None:
        before = t < onset
        residual = float(p[before].max() / peak) if before.any() else 0.0
    return FrontReport(threshold_fraction, crossing, residual)


def windowed_mean(pulse_or_power, times, window):
    """Mean power over ``times`` in ``[window[0], window[1]]``."""
    p = pulse_or_power.power if isinstance(pulse_or_power, PulseEnvelope) else pulse_or_power
    sel = (times >= window[0]) & (times <= window[1])
    if not sel.any():
        raise ValueError("window contains no samples")
    return float(p[sel].mean())


def edge_spike_metrics(output, edge_times, half_window=20e-9):
    """Edge spike peaks against the main-field plateau.

    The plateau is the median power over the central 60 % between the first
    and last edge. ``ratio`` uses the leading edge; ``ratios`` lists every
    edge.
    """
    t = output.times
    p = output.power
    edges = sorted(edge_times)
    peaks = []
    for te in edges:
        sel = np.abs(t - te) <= half_window
        peaks.append(float(p[sel].max()))
    t0, t1 = edges[0], edges[-1]
    span = t1 - t0
    sel = (t >= t0 + 0.2 * span) & (t <= t1 - 0.2 * span)
    plateau = float(np.median(p[sel]))
    ratios = tuple(pk / plateau for pk in peaks)
    return SpikeMetrics(tuple(peaks), plateau, ratios[0], ratios)


def main_field_arrival(pulse, plateau_window, cutoff=5e6):
    """Arrival of the slowly varying main field of a square-pulse response.

    The field is low-passed with a Gaussian spectral filter (standard
    deviation ``cutoff``) to suppress edge transients. The arrival is the
    last upward crossing of half the plateau power before the end of
    ``plateau_window``.
    """
    f = np.fft.fftfreq(pulse.n, pulse.dt)
    smooth = np.fft.ifft(np.fft.fft(pulse.samples) * np.exp(-0.5 * (f / cutoff) ** 2))
    y = np.abs(smooth) ** 2
    t = pulse.times
    plateau = float(np.median(y[(t >= plateau_window[0]) & (t <= plateau_window[1])]))
    above = y >= 0.5 * plateau
    ups = np.flatnonzero(~above[:-1] & above[1:] & (t[:-1] < plateau_window[1]))
    if ups.size == 0:
        raise NoFrontError("main field never rises to half its plateau")
    i = int(ups[-1])
    level = 0.5 * plateau
    return float(t[i] + (level - y[i]) / (y[i + 1] - y[i]) * pulse.dt)
