"""Programmable absorption profiles.

Optical depth is sampled on a uniform detuning grid centred on the probe
carrier. Profiles come either from a declarative list of holes/anti-holes
cut into a pumped transparency window, or from a reduced optical-pumping
model driven by a swept pump schedule.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import PhysicalLimitError

__all__ = [
    "FrequencyGrid",
    "MediumParams",
    "SpectralFeature",
    "AbsorptionProfile",
    "PumpSchedule",
    "inhomogeneous_background",
    "build_profile",
    "pump_to_profile",
    "unpumpable_fraction",
    "pump_fluence",
    "pump_preset",
    "lorentzian",
    "gaussian",
]


def _is_pow2(n):
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class FrequencyGrid:
    """Symmetric detuning grid, ``detuning[i] = (i - n_points // 2) * df``.

    The same grid defines the conjugate time axis used for propagation:
    ``dt = 1 / (n_points * df)``.
    """

    n_points: int
    df: float

    def __post_init__(self):
        if not _is_pow2(int(self.n_points)):
            raise ValueError(f"n_points must be a power of two >= 2, got {self.n_points}")
        if not self.df > 0:
            raise ValueError(f"df must be positive, got {self.df}")

    @classmethod
    def from_time_step(cls, n_points, dt):
        return cls(int(n_points), 1.0 / (n_points * dt))

    @property
    def span(self):
        return self.n_points * self.df

    @property
    def dt(self):
        return 1.0 / (self.n_points * self.df)

    @property
    def detuning(self):
        return (np.arange(self.n_points) - self.n_points // 2) * self.df

    @property
    def center_index(self):
        return self.n_points // 2

    def times(self, t_start):
        return t_start + np.arange(self.n_points) * self.dt

    def check_feature_width(self, width):
        if not self.span > 2 * width:
            raise ValueError(
                f"grid span {self.span:.4g} Hz must exceed twice the widest "
                f"feature ({width:.4g} Hz)"
            )


@dataclass(frozen=True)
class MediumParams:
    """Crystal parameters. Defaults describe a 3 mm Nd:YVO4 sample."""

    length: float = 3e-3
    n_bg: float = 2.2
    gamma_inh: float = 2.1e9
    gamma_h: float = 63e3
    od_peak: float = 12.0

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError("length must be positive")
        if not self.n_bg >= 1:
            raise ValueError("n_bg must be >= 1")
        if not self.gamma_h < self.gamma_inh:
            raise ValueError("gamma_h must be narrower than gamma_inh")
        if not self.od_peak >= 0:
            raise ValueError("od_peak must be non-negative")


def lorentzian(x, fwhm):
    """Unit-peak Lorentzian."""
    hw = 0.5 * fwhm
    return hw * hw / (x * x + hw * hw)


def gaussian(x, fwhm):
    """Unit-peak Gaussian, ``2**-(2x/fwhm)**2``."""
    return np.exp2(-((2.0 * x / fwhm) ** 2))


@dataclass(frozen=True)
class SpectralFeature:
    kind: str  # "hole" | "antihole"
    center: float
    fwhm: float
    depth: float
    shape: str = "lorentzian"

    def __post_init__(self):
        if self.kind not in ("hole", "antihole"):
            raise ValueError(f"kind must be 'hole' or 'antihole', got {self.kind!r}")
        if self.shape not in ("lorentzian", "gaussian"):
            raise ValueError(f"shape must be 'lorentzian' or 'gaussian', got {self.shape!r}")
        if not self.fwhm > 0:
            raise ValueError("fwhm must be positive")
        if not self.depth >= 0:
            raise ValueError("depth must be non-negative")

    @property
    def sign(self):
        return 1.0 if self.kind == "antihole" else -1.0

    def contribution(self, detuning):
        """Signed optical-depth contribution (antiholes add, holes subtract)."""
        shape = lorentzian if self.shape == "lorentzian" else gaussian
        return self.sign * self.depth * shape(np.asarray(detuning) - self.center, self.fwhm)


@dataclass(frozen=True)
class AbsorptionProfile:
    grid: FrequencyGrid
    od: np.ndarray = field(repr=False)
    od_floor: float = 0.0
    clamped: bool = False

    def __post_init__(self):
        od = np.asarray(self.od, dtype=float)
        if od.shape != (self.grid.n_points,):
            raise ValueError("od length does not match the grid")
        if np.any(od < 0) or not np.all(np.isfinite(od)):
            raise ValueError("optical depth must be finite and non-negative")
        object.__setattr__(self, "od", od)

    @property
    def detuning(self):
        return self.grid.detuning

    def at(self, detuning):
        """Optical depth linearly interpolated at arbitrary detunings."""
        return np.interp(detuning, self.grid.detuning, self.od)

    @property
    def edge_level(self):
        return 0.5 * (self.od[0] + self.od[-1])


def inhomogeneous_background(grid, medium):
    """Unpumped Gaussian line: peak ``od_peak``, FWHM ``gamma_inh``, at zero detuning."""
    return medium.od_peak * gaussian(grid.detuning, medium.gamma_inh)


def _window_blend(detuning, center, width, edge_width):
    """1 inside the window, raised-cosine roll-off to 0 over ``edge_width`` outside."""
    x = np.abs(detuning - center) - 0.5 * width
    if edge_width <= 0:
        return (x <= 0).astype(float)
    u = np.clip(x / edge_width, 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(np.pi * u))


def build_profile(grid, medium, window, features=(), d0=0.0, pedestal=0.0, edge_width=2e6):
    """Assemble an absorption profile from holes and anti-holes.

    Inside the pumped window the optical depth is ``d0 + pedestal`` plus the
    signed feature contributions, clamped at zero. Outside it is the
    unpumped inhomogeneous line. The two regions are joined by a
    raised-cosine transition of ``edge_width`` placed just outside the
    window, so values at the nominal window edge still belong to the
    window.

    Args:
        grid: detuning grid.
        medium: crystal parameters.
        window: ``(center, width)`` of the pumped window in Hz.
        features: iterable of :class:`SpectralFeature`.
        d0: residual background optical depth inside the window.
        pedestal: extra flat optical depth inside the window that holes
            are cut from.
        edge_width: width of the window roll-off in Hz.

    Returns:
        AbsorptionProfile. ``clamped`` is set when a hole would have driven
        the optical depth negative.
    """
    center, width = window
    features = list(features)
    if width <= 0:
        raise ValueError("window width must be positive")
    if width > grid.span:
        raise ValueError(f"window width {width:.4g} Hz exceeds grid span {grid.span:.4g} Hz")
    if d0 < 0 or pedestal < 0:
        raise ValueError("d0 and pedestal must be non-negative")
    for f in features:
        if f.fwhm < medium.gamma_h:
            raise PhysicalLimitError(
                f"feature FWHM {f.fwhm:.4g} Hz is below the homogeneous linewidth "
                f"{medium.gamma_h:.4g} Hz"
            )
        if abs(f.center - center) + 0.5 * f.fwhm > 0.5 * width:
            raise ValueError(f"feature at {f.center:.4g} Hz (FWHM {f.fwhm:.4g}) exceeds the window")
    if features:
        grid.check_feature_width(max(f.fwhm for f in features))

    det = grid.detuning
    inside = np.full(grid.n_points, d0 + pedestal, dtype=float)
    for f in features:
        inside += f.contribution(det)
    clamped = bool(np.any(inside < 0))
    if clamped:
        warnings.warn("hole deeper than pedestal; optical depth clamped at 0", stacklevel=2)
        inside = np.maximum(inside, 0.0)

    blend = _window_blend(det, center, width, edge_width)
    od = blend * inside + (1.0 - blend) * inhomogeneous_background(grid, medium)
    return AbsorptionProfile(grid, np.maximum(od, 0.0), od_floor=float(d0), clamped=clamped)


@dataclass(frozen=True)
class PumpSchedule:
    """Swept pump used to burn a profile during the preparation phase.

    ``steps`` holds ``(frequency offset [Hz], relative amplitude)`` pairs
    visited once per sweep period. ``pump_efficiency`` converts the
    dimensionless pump fluence into a depletion exponent.
    """

    steps: tuple
    sweep_span: float = 100e6
    sweep_period: float = 100e-6
    prep_duration: float = 9e-3
    wait: float = 1e-3
    cycle_rate: float = 40.0
    pump_efficiency: float = 10.0
    power_broadening_width: float = 1e6
    zeeman_lifetime: float = 10e-3
    branching_ratio: float = 0.4

    def __post_init__(self):
        steps = tuple((float(f), float(a)) for f, a in self.steps)
        object.__setattr__(self, "steps", steps)
        if not self.sweep_span > 0:
            raise ValueError("sweep_span must be positive")
        if any(not 0.0 <= a <= 1.0 for _, a in steps):
            raise ValueError("pump amplitudes must lie in [0, 1]")
        if any(abs(f) > 0.5 * self.sweep_span * (1 + 1e-9) for f, _ in steps):
            raise ValueError("pump step outside the sweep span")
        if not self.prep_duration + self.wait < 1.0 / self.cycle_rate:
            raise ValueError("prep + wait must fit within one cycle")
        if self.sweep_period <= 0 or self.prep_duration <= 0 or self.wait < 0:
            raise ValueError("sweep period and prep duration must be positive")
        if not 0.0 <= self.branching_ratio <= 1.0:
            raise ValueError("branching_ratio must lie in [0, 1]")
        if not self.zeeman_lifetime > 0:
            raise ValueError("zeeman_lifetime must be positive")
        if self.pump_efficiency < 0 or self.power_broadening_width < 0:
            raise ValueError("pump_efficiency and power_broadening_width must be >= 0")

    @property
    def n_sweeps(self):
        return max(1, int(round(self.prep_duration / self.sweep_period)))

    def sweep_weights(self):
        """Zeeman-decay weight of each sweep as seen at the start of the probe phase."""
        mid = (np.arange(self.n_sweeps) + 0.5) * self.sweep_period
        age = self.prep_duration + self.wait - mid
        return np.exp(-age / self.zeeman_lifetime)


def unpumpable_fraction(pump):
    """Fraction of the unpumped optical depth that survives saturated pumping.

    Per sweep pass a resonant packet transfers a fraction ``branching_ratio``
    into the auxiliary Zeeman level while a fraction
    ``sweep_period / zeeman_lifetime`` relaxes back. The residual approaches
    the rate balance geometrically over the passes in the preparation phase.
    """
    relax = pump.sweep_period / pump.zeeman_lifetime
    beta = pump.branching_ratio
    if beta + relax == 0:
        return 1.0
    steady = relax / (relax + beta)
    factor = abs(1.0 - beta - relax)
    return float(steady + (1.0 - steady) * factor ** pump.n_sweeps)


def pump_fluence(detuning, pump, gamma_h, block=64):
    """Decay-weighted pump fluence seen by each detuning.

    Each step contributes ``amplitude**2 * (dwell / sweep_period) * W``
    spread over a unit-peak Lorentzian of FWHM
    ``max(gamma_h, power_broadening_width)``; ``W`` is the summed sweep
    weight. Evaluated by direct summation over steps.
    """
    detuning = np.asarray(detuning, dtype=float)
    if not pump.steps:
        raise ValueError("pump step table is empty")
    width = max(gamma_h, pump.power_broadening_width)
    offsets = np.array([f for f, _ in pump.steps])
    amps = np.array([a for _, a in pump.steps])
    per_step = amps**2 * pump.sweep_weights().sum() / len(pump.steps)
    keep = per_step > 0
    offsets, per_step = offsets[keep], per_step[keep]
    fluence = np.zeros_like(detuning)
    for i in range(0, offsets.size, block):
        o = offsets[i : i + block, None]
        w = per_step[i : i + block, None]
        fluence += (w * lorentzian(detuning[None, :] - o, width)).sum(axis=0)
    return fluence


def pump_to_profile(grid, medium, pump):
    """Burn a profile with the reduced optical-pumping model.

    ``od = od_unpumped * (s + (1 - s) * exp(-kappa * F))`` with ``F`` from
    :func:`pump_fluence` and ``s`` from :func:`unpumpable_fraction`.
    """
    s = unpumpable_fraction(pump)
    bg = inhomogeneous_background(grid, medium)
    fluence = pump_fluence(grid.detuning, pump, medium.gamma_h)
    # -expm1 keeps od exactly equal to bg where the fluence is zero
    depleted = -np.expm1(-pump.pump_efficiency * fluence)
    od = bg * (1.0 - (1.0 - s) * depleted)
    return AbsorptionProfile(grid, np.maximum(od, 0.0), od_floor=float(s * medium.od_peak))


def pump_preset(kind, sweep_span=100e6, n_steps=1000, notch_width=6e6, base=0.3, **kwargs):
    """Idealised pump schedules.

    ``flat`` pumps the whole span uniformly, ``notch`` leaves a central gap
    (anti-hole, fast light), and ``peak`` pumps the centre harder than a
    weaker base level (hole, slow light).
    """
    offsets = (np.arange(n_steps) + 0.5) / n_steps * sweep_span - 0.5 * sweep_span
    centre = np.abs(offsets) < 0.5 * notch_width
    if kind == "flat":
        amps = np.ones(n_steps)
    elif kind == "notch":
        amps = np.where(centre, 0.0, 1.0)
    elif kind == "peak":
        amps = np.where(centre, 1.0, base)
    else:
        raise ValueError(f"unknown pump preset {kind!r}")
    return PumpSchedule(steps=tuple(zip(offsets, amps)), sweep_span=sweep_span, **kwargs)

