"""Simulation of optical precursors and slow/fast light in pumped
rare-earth crystals, with a polarization interferometer and gated
photon counting on top."""

from .dispersion import (
    ComplexResponse,
    GroupDelayCurve,
    analytic_lorentzian_response,
    causality_residual,
    group_delay,
    group_velocity,
    impulse_response,
    kramers_kronig_phase,
    transfer_function,
)
from .errors import (
    AliasingError,
    AmbiguousPeakError,
    CausalityError,
    ConfigError,
    EdgeArtifactError,
    FitError,
    GridMismatchError,
    InfiniteGroupVelocity,
    NoFrontError,
    PhaseWrapError,
    PhysicalLimitError,
    PhysicsValidationError,
    PrecursimError,
    WindowTooSmallError,
)
from .interferometer import ArmPair, JonesState, analyze, bright_dark, edge_contrast, run_interferometer, visibility
from .medium import (
    AbsorptionProfile,
    FrequencyGrid,
    MediumParams,
    PumpSchedule,
    SpectralFeature,
    build_profile,
    pump_preset,
    pump_to_profile,
)
from .photons import CountingConfig, fit_malus, malus_sweep
from .presets import preset
from .propagation import (
    PulseEnvelope,
    edge_spike_metrics,
    front_crossing,
    gaussian_pulse,
    main_field_arrival,
    peak_shift,
    propagate,
    square_pulse,
)
from .scenario import kk_check, run_scenario, sweep, validate_config

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "AmbiguousPeakError",
    "CausalityError",
    "ConfigError",
    "EdgeArtifactError",
    "FitError",
    "GridMismatchError",
    "InfiniteGroupVelocity",
    "NoFrontError",
    "PhaseWrapError",
    "PhysicalLimitError",
    "PhysicsValidationError",
    "PrecursimError",
    "WindowTooSmallError",
    "ComplexResponse",
    "GroupDelayCurve",
    "analytic_lorentzian_response",
    "causality_residual",
    "group_delay",
    "group_velocity",
    "impulse_response",
    "kramers_kronig_phase",
    "transfer_function",
    "AbsorptionProfile",
    "FrequencyGrid",
    "MediumParams",
    "PumpSchedule",
    "SpectralFeature",
    "build_profile",
    "pump_preset",
    "pump_to_profile",
    "PulseEnvelope",
    "edge_spike_metrics",
    "front_crossing",
    "gaussian_pulse",
    "main_field_arrival",
    "peak_shift",
    "propagate",
    "square_pulse",
    "ArmPair",
    "JonesState",
    "analyze",
    "bright_dark",
    "edge_contrast",
    "run_interferometer",
    "visibility",
    "CountingConfig",
    "fit_malus",
    "malus_sweep",
    "preset",
    "kk_check",
    "run_scenario",
    "sweep",
    "validate_config",
]
