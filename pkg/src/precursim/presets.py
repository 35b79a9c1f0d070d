"""Embedded scenario configurations.

``fig2`` propagates a 250 ns Gaussian through flat, anti-hole and hole
media. ``fig3`` sends a 500 ns square pulse through two-arm pairings of
media with an on-resonance optical depth near 4. ``s1`` adds gated photon
counting to the balanced fast/fast pairing.
"""

from __future__ import annotations

import copy

SCHEMA = "precursim/1"

MEDIUM = {"length": 3e-3, "n_bg": 2.2, "gamma_inh": 2.1e9, "gamma_h": 63e3, "od_peak": 12.0}
WINDOW = {"center": 0.0, "width": 100e6, "edge_width": 2e6}
D0 = 0.35


def _lor(kind, depth, fwhm, center=0.0):
    return {"kind": kind, "center": center, "fwhm": fwhm, "depth": depth, "shape": "lorentzian"}


FIG2_MEDIA = {
    "flat": {"d0": D0},
    "fast": {"d0": D0, "features": [_lor("antihole", 1.4, 6e6)]},
    "slow": {"d0": D0, "pedestal": 0.9, "features": [_lor("hole", 0.9, 6e6)]},
}

# on-resonance od ~4 for the fast arm; the slow arm cuts a hole into a
# broader anti-hole of equal spectral area so the two arms pass the same
# wideband edge content
FIG3_MEDIA = {
    "flat": {"d0": D0},
    "fast": {"d0": D0, "features": [_lor("antihole", 3.65, 6e6)]},
    "slow": {
        "d0": D0,
        "features": [_lor("antihole", 2.5, 15e6), _lor("hole", 2.5, 6e6)],
    },
}

_FIG2 = {
    "schema": SCHEMA,
    "name": "fig2",
    "seed": 0,
    "grid": {"n_points": 2**17, "dt": 1e-10},
    "medium": MEDIUM,
    "window": WINDOW,
    "media": FIG2_MEDIA,
    "reference": "flat",
    "probe": {"kind": "gaussian", "fwhm": 250e-9, "center": 0.0},
    "output": {"directory": "fig2", "trace_window": [-1e-6, 1e-6], "profile_span": 200e6},
}

_FIG3 = {
    "schema": SCHEMA,
    "name": "fig3",
    "seed": 0,
    "grid": {"n_points": 2**18, "dt": 5e-11},
    "medium": MEDIUM,
    "window": WINDOW,
    "media": FIG3_MEDIA,
    "reference": "flat",
    "probe": {"kind": "square", "width": 500e-9, "rise_time": 0.4e-9, "edge_shape": "erf", "t0": 0.0},
    "interferometer": {
        "relative_phase": 0.0,
        "imbalance": 1.0,
        "visibility_floor": 1 / 8000,
        "edge_window": [-1e-9, 2.5e-9],
        "pairs": [
            {"name": "ab", "h": "fast", "v": "fast"},
            {"name": "cd", "h": "slow", "v": "fast"},
            {"name": "ef", "h": "flat", "v": "fast"},
        ],
    },
    "output": {"directory": "fig3", "trace_window": [-100e-9, 700e-9], "profile_span": 200e6},
}

_S1 = copy.deepcopy(_FIG3)
_S1.update(
    {
        "name": "s1",
        "counting": {
            "pair": "ab",
            "window": [-1e-9, 2.5e-9],
            "pulses_per_cycle": 500,
            "pulse_rate": 800e3,
            "cycle_rate": 40.0,
            "bright_rate": 2200.0,
            # 2/s dark port = extinction-limited leakage (2200/8000) + detector dark counts
            "dark_rate": 2.0 - 2200.0 / 8000,
            "integration_time": 1.0,
            "angles_deg": [5.0 * k for k in range(37)],
            "compare_h": ["fast", "slow", "flat"],
        },
        "output": {"directory": "s1", "trace_window": [-20e-9, 40e-9], "profile_span": 200e6},
    }
)

PRESETS = {"fig2": _FIG2, "fig3": _FIG3, "s1": _S1}


def preset(name):
    """Fresh copy of an embedded configuration."""
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
