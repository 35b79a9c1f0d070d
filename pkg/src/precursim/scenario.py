"""Configuration-driven scenario runner.

A scenario is a JSON document (see :mod:`precursim.presets` for complete
examples). It is validated in full and every profile is built before any
propagation runs. All files are rendered in memory and written only after
the whole computation succeeds.
"""

from __future__ import annotations

import copy
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from . import io as pio
from .dispersion import (
    analytic_lorentzian_response,
    causality_residual,
    group_delay,
    group_velocity,
    kramers_kronig_phase,
)
from .errors import ConfigError, InfiniteGroupVelocity, NoFrontError, PhysicalLimitError
from .interferometer import (
    H_MINUS_V,
    ArmPair,
    analyze,
    bright_dark,
    edge_contrast,
    probe_state,
    run_interferometer,
    visibility,
)
from .medium import (
    FrequencyGrid,
    MediumParams,
    PumpSchedule,
    SpectralFeature,
    build_profile,
    pump_preset,
    pump_to_profile,
)
from .photons import CountingConfig, expected_rate, fit_malus, malus_sweep
from .presets import PRESETS, SCHEMA
from .propagation import (
    edge_spike_metrics,
    front_crossing,
    gaussian_pulse,
    main_field_arrival,
    peak_shift,
    propagate,
    pulse_onset,
    square_pulse,
)

__all__ = [
    "CONFIG_SCHEMA",
    "Scenario",
    "RunResult",
    "validate_config",
    "load_config",
    "run_scenario",
    "write_outputs",
    "sweep",
    "set_path",
    "kk_check",
]

_num = {"type": "number"}
_pos = {"type": "number", "exclusiveMinimum": 0}
_nonneg = {"type": "number", "minimum": 0}
_pair_num = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}

_FEATURE = {
    "type": "object",
    "required": ["kind", "fwhm", "depth"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["hole", "antihole"]},
        "center": _num,
        "fwhm": _pos,
        "depth": _nonneg,
        "shape": {"enum": ["lorentzian", "gaussian"]},
    },
}

_PUMP = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "preset": {"enum": ["flat", "notch", "peak"]},
        "n_steps": {"type": "integer", "minimum": 1},
        "notch_width": _pos,
        "base": {"type": "number", "minimum": 0, "maximum": 1},
        "steps": {"type": "array", "minItems": 1, "items": _pair_num},
        "sweep_span": _pos,
        "sweep_period": _pos,
        "prep_duration": _pos,
        "wait": _nonneg,
        "cycle_rate": _pos,
        "pump_efficiency": _nonneg,
        "power_broadening_width": _nonneg,
        "zeeman_lifetime": _pos,
        "branching_ratio": {"type": "number", "minimum": 0, "maximum": 1},
    },
}

_MEDIUM_SPEC = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "d0": _nonneg,
        "pedestal": _nonneg,
        "features": {"type": "array", "items": _FEATURE},
        "pump": _PUMP,
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["schema", "grid", "medium", "media", "probe"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA},
        "name": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "grid": {
            "type": "object",
            "required": ["n_points", "dt"],
            "additionalProperties": False,
            "properties": {"n_points": {"type": "integer", "minimum": 2}, "dt": _pos, "t_start": _num},
        },
        "medium": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: _num for k in ("length", "n_bg", "gamma_inh", "gamma_h", "od_peak")},
        },
        "window": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"center": _num, "width": _pos, "edge_width": _nonneg},
        },
        "media": {"type": "object", "minProperties": 1, "additionalProperties": _MEDIUM_SPEC},
        "reference": {"type": "string"},
        "probe": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind", "fwhm"],
                    "additionalProperties": False,
                    "properties": {"kind": {"const": "gaussian"}, "fwhm": _pos, "center": _num},
                },
                {
                    "type": "object",
                    "required": ["kind", "width", "rise_time"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "square"},
                        "width": _pos,
                        "rise_time": _pos,
                        "edge_shape": {"enum": ["erf", "raised_cosine"]},
                        "t0": _num,
                    },
                },
            ]
        },
        "interferometer": {
            "type": "object",
            "required": ["pairs"],
            "additionalProperties": False,
            "properties": {
                "relative_phase": _num,
                "imbalance": _pos,
                "visibility_floor": _nonneg,
                "edge_window": _pair_num,
                "pairs": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["name", "h", "v"],
                        "additionalProperties": False,
                        "properties": {
                            "name": {"type": "string", "pattern": "^[A-Za-z0-9_-]+$"},
                            "h": {"type": "string"},
                            "v": {"type": "string"},
                        },
                    },
                },
            },
        },
        "counting": {
            "type": "object",
            "required": ["pair", "angles_deg"],
            "additionalProperties": False,
            "properties": {
                "pair": {"type": "string"},
                "window": _pair_num,
                "pulses_per_cycle": {"type": "integer", "minimum": 1},
                "pulse_rate": _pos,
                "cycle_rate": _pos,
                "bright_rate": _pos,
                "dark_rate": _nonneg,
                "integration_time": _pos,
                "angles_deg": {"type": "array", "items": _num},
                "compare_h": {"type": "array", "items": {"type": "string"}},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "directory": {"type": "string"},
                "trace_window": _pair_num,
                "profile_span": _pos,
            },
        },
    },
}


@dataclass
class Scenario:
    raw: dict
    name: str
    seed: int
    grid: FrequencyGrid
    t_start: float
    medium: MediumParams
    profiles: dict
    reference: str
    probe: dict
    interferometer: dict | None = None
    counting: dict | None = None
    output: dict = field(default_factory=dict)


@dataclass
class RunResult:
    summary: dict
    files: dict


def _config_error(exc, where):
    return ConfigError(f"{where}: {exc}")


def _build_profile(grid, medium, window, spec):
    if "pump" in spec:
        if "features" in spec or "pedestal" in spec:
            raise ConfigError("a medium takes either a pump schedule or a feature list, not both")
        pump = dict(spec["pump"])
        if "preset" in pump:
            kind = pump.pop("preset")
            schedule = pump_preset(kind, **pump)
        else:
            if "steps" not in pump:
                raise ConfigError("pump needs either 'preset' or 'steps'")
            for key in ("n_steps", "notch_width", "base"):
                if key in pump:
                    raise ConfigError(f"pump key {key!r} only applies to presets")
            schedule = PumpSchedule(**pump)
        return pump_to_profile(grid, medium, schedule)
    features = [SpectralFeature(**f) for f in spec.get("features", [])]
    return build_profile(
        grid,
        medium,
        (window.get("center", 0.0), window.get("width", 100e6)),
        features,
        d0=spec.get("d0", 0.0),
        pedestal=spec.get("pedestal", 0.0),
        edge_width=window.get("edge_width", 2e6),
    )


def validate_config(raw):
    """Check a configuration and build its absorption profiles.

    Raises:
        ConfigError: on any schema or consistency violation.
    """
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {exc.message}") from None

    try:
        grid = FrequencyGrid.from_time_step(raw["grid"]["n_points"], raw["grid"]["dt"])
        medium = MediumParams(**raw["medium"])
    except ValueError as exc:
        raise _config_error(exc, "grid/medium") from None
    t_start = raw["grid"].get("t_start", -0.25 * grid.n_points * grid.dt)

    window = raw.get("window", {})
    profiles = {}
    for name, spec in raw["media"].items():
        try:
            profiles[name] = _build_profile(grid, medium, window, spec)
        except (ValueError, TypeError, PhysicalLimitError) as exc:
            raise _config_error(exc, f"media/{name}") from None

    reference = raw.get("reference", next(iter(raw["media"])))
    if reference not in profiles:
        raise ConfigError(f"reference medium {reference!r} is not defined")

    inter = raw.get("interferometer")
    if inter is not None:
        names = [p["name"] for p in inter["pairs"]]
        if len(set(names)) != len(names):
            raise ConfigError("interferometer pair names must be unique")
        for p in inter["pairs"]:
            for arm in ("h", "v"):
                if p[arm] not in profiles:
                    raise ConfigError(f"interferometer/{p['name']}: unknown medium {p[arm]!r}")
        lo, hi = inter.get("edge_window", (-1e-9, 2.5e-9))
        if lo >= hi:
            raise ConfigError("interferometer/edge_window must be increasing")
        if raw["probe"]["kind"] != "square":
            raise ConfigError("interferometer analysis needs a square probe")

    counting = raw.get("counting")
    if counting is not None:
        if inter is None:
            raise ConfigError("counting needs an interferometer block")
        pairs = {p["name"]: p for p in inter["pairs"]}
        if counting["pair"] not in pairs:
            raise ConfigError(f"counting/pair: unknown pair {counting['pair']!r}")
        for h in counting.get("compare_h", []):
            if h not in profiles:
                raise ConfigError(f"counting/compare_h: unknown medium {h!r}")
        angles = np.round(np.asarray(counting["angles_deg"], dtype=float), 9)
        if np.unique(angles).size < 8:
            raise ConfigError("counting/angles_deg needs at least 8 distinct angles")
        try:
            _counting_config(counting, raw.get("seed", 0))
        except ValueError as exc:
            raise _config_error(exc, "counting") from None

    return Scenario(
        raw=raw,
        name=raw.get("name", "scenario"),
        seed=int(raw.get("seed", 0)),
        grid=grid,
        t_start=t_start,
        medium=medium,
        profiles=profiles,
        reference=reference,
        probe=raw["probe"],
        interferometer=inter,
        counting=counting,
        output=raw.get("output", {}),
    )


def load_config(path):
    """Read a JSON scenario, or return a preset when ``path`` names one."""
    p = Path(path)
    if not p.exists() and str(path) in PRESETS:
        return copy.deepcopy(PRESETS[str(path)])
    text = p.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None


def _counting_config(counting, seed):
    kwargs = {
        "window": tuple(counting.get("window", (-1e-9, 2.5e-9))),
        "pulses_per_cycle": counting.get("pulses_per_cycle", 500),
        "pulse_rate": counting.get("pulse_rate", 800e3),
        "cycle_rate": counting.get("cycle_rate", 40.0),
        "rng_seed": seed,
    }
    return CountingConfig.for_bright_rate(
        counting.get("bright_rate", 2200.0), dark_rate=counting.get("dark_rate", 0.5), **kwargs
    )


def _make_probe(sc):
    p = sc.probe
    if p["kind"] == "gaussian":
        return gaussian_pulse(p["fwhm"], p.get("center", 0.0), sc.grid, t_start=sc.t_start)
    return square_pulse(
        p["width"],
        p["rise_time"],
        sc.grid,
        edge_shape=p.get("edge_shape", "erf"),
        t_start=sc.t_start,
        t0=p.get("t0", 0.0),
    )


def _span_columns(columns, span):
    sel = np.abs(columns["detuning_hz"]) <= 0.5 * span
    return {k: np.asarray(v)[sel] for k, v in columns.items()}


def _trace_window(sc, probe):
    if "trace_window" in sc.output:
        return tuple(sc.output["trace_window"])
    t = probe.times
    return (t[0], t[-1])


def run_scenario(sc):
    """Run a validated scenario; returns the summary and rendered files."""
    grid = sc.grid
    probe = _make_probe(sc)
    tw = _trace_window(sc, probe)
    span = sc.output.get("profile_span", grid.span)
    files = {}
    summary = {
        "name": sc.name,
        "seed": sc.seed,
        "grid": {"n_points": grid.n_points, "dt_s": grid.dt, "df_hz": grid.df},
        "probe": dict(sc.probe),
        "reference": sc.reference,
        "media": {},
    }

    responses, outputs = {}, {}
    for name, prof in sc.profiles.items():
        resp = kramers_kronig_phase(prof)
        responses[name] = resp
        outputs[name] = propagate(probe, resp)
        tau0 = group_delay(resp).at_center()
        try:
            vg = group_velocity(tau0, sc.medium)
        except InfiniteGroupVelocity:
            vg = None
        summary["media"][name] = {
            "od_center": float(prof.od[grid.center_index]),
            "clamped": prof.clamped,
            "tau_g_center_s": tau0,
            "group_velocity_m_s": vg.velocity if vg else math.inf,
            "background_transit_s": vg.background_transit if vg else None,
            "causality_residual": causality_residual(resp),
            "energy_transmission": outputs[name].energy / probe.energy,
        }
        files[f"profile_{name}.csv"] = pio.csv_text(_span_columns(pio.profile_columns(prof), span))
        files[f"response_{name}.csv"] = pio.csv_text(_span_columns(pio.response_columns(resp), span))
        files[f"trace_{name}.csv"] = pio.csv_text(pio.trace_columns(outputs[name], tw))

    ref_out = outputs[sc.reference]
    ref_tau = summary["media"][sc.reference]["tau_g_center_s"]
    if sc.probe["kind"] == "gaussian":
        for name, out in outputs.items():
            m = summary["media"][name]
            m["delay_s"] = peak_shift(ref_out, out)
            m["delay_fit_s"] = peak_shift(ref_out, out, method="gaussian")
            m["tau_g_relative_s"] = m["tau_g_center_s"] - ref_tau
    else:
        _square_summary(sc, probe, outputs, summary)

    if sc.interferometer is not None:
        _interferometer_runs(sc, probe, outputs, summary, files, tw)

    blocks = [("input", _gp(pio.trace_columns(probe, tw)))]
    blocks += [(name, _gp(pio.trace_columns(out, tw))) for name, out in outputs.items()]
    files["plot.dat"] = pio.gnuplot_text(blocks)
    files["summary.json"] = pio.json_text(summary)
    return RunResult(summary, files)


def _gp(cols):
    return {"time_s": cols["time_s"], "power": cols["power"]}


def _square_summary(sc, probe, outputs, summary):
    p = sc.probe
    t0, width = p.get("t0", 0.0), p["width"]
    onset = pulse_onset(probe)
    input_peak = float(probe.power.max())
    fronts = {}
    for name, out in outputs.items():
        m = summary["media"][name]
        fr = front_crossing(out, 0.01, reference_power=input_peak, onset=onset)
        spikes = edge_spike_metrics(out, (t0, t0 + width))
        fronts[name] = fr.crossing_time
        m["front_time_s"] = fr.crossing_time
        m["pre_front_residual"] = fr.pre_front_residual
        m["spike_peaks"] = list(spikes.spike_peaks)
        m["plateau_power"] = spikes.plateau
        m["spike_ratio"] = spikes.ratio
        try:
            m["main_field_arrival_s"] = main_field_arrival(out, (t0 + 0.3 * width, t0 + 0.9 * width))
        except NoFrontError:
            m["main_field_arrival_s"] = None
    times = list(fronts.values())
    summary["front_spread_s"] = max(times) - min(times)


def _arms(sc, h, v):
    inter = sc.interferometer
    return ArmPair(
        sc.profiles[h] if h is not None else None,
        sc.profiles[v] if v is not None else None,
        relative_phase=inter.get("relative_phase", 0.0),
        imbalance=inter.get("imbalance", 1.0),
        visibility_floor=inter.get("visibility_floor", 1 / 8000),
    )


def _interferometer_runs(sc, probe, outputs, summary, files, tw):
    inter = sc.interferometer
    p = sc.probe
    t0, width = p.get("t0", 0.0), p["width"]
    win = tuple(inter.get("edge_window", (-1e-9, 2.5e-9)))
    source = probe_state(probe)
    t = probe.times
    sel = (t >= tw[0]) & (t <= tw[1])
    pairs = {}
    states = {}
    for pair in inter["pairs"]:
        h, v = pair["h"], pair["v"]
        state = run_interferometer(source, _arms(sc, h, v))
        states[pair["name"]] = state
        h_only = analyze(run_interferometer(source, _arms(sc, h, None)), H_MINUS_V)
        v_only = analyze(run_interferometer(source, _arms(sc, None, v)), H_MINUS_V)
        bright, dark = bright_dark(state)
        main = (t >= t0 + 100e-9) & (t <= t0 + 400e-9)
        rise_c = edge_contrast(state, t0, win)
        fall_c = edge_contrast(state, t0 + width, win)
        pairs[pair["name"]] = {
            "h": h,
            "v": v,
            "rising_edge_dark_to_bright": rise_c,
            "falling_edge_dark_to_bright": fall_c,
            "rising_edge_visibility": visibility(bright, dark, t, (t0 + win[0], t0 + win[1])),
            "main_field_dark_power": float(dark[main].mean()),
            "rising_edge_dark_power": float(
                dark[(t >= t0 + win[0]) & (t <= t0 + win[1])].mean()
            ),
        }
        files[f"arms_{pair['name']}.csv"] = pio.csv_text(
            {"time_s": t[sel], "power_h_arm": h_only[sel], "power_v_arm": v_only[sel]}
        )
        files[f"interference_{pair['name']}.csv"] = pio.csv_text(
            {"time_s": t[sel], "power_bright": bright[sel], "power_dark": dark[sel]}
        )
    summary["interferometer"] = pairs

    if sc.counting is not None:
        _counting_runs(sc, probe, outputs, states, summary, files, source)


def _counting_runs(sc, probe, outputs, states, summary, files, source):
    c = sc.counting
    cc = _counting_config(c, sc.seed)
    t_ref = front_crossing(outputs[sc.reference], 0.01, reference_power=float(probe.power.max())).crossing_time
    angles = np.radians(np.asarray(c["angles_deg"], dtype=float))
    tint = c.get("integration_time", 1.0)
    pair = next(p for p in sc.interferometer["pairs"] if p["name"] == c["pair"])
    records = malus_sweep(states[c["pair"]], cc, angles, t_ref, integration_time=tint)
    fit_exp = fit_malus(records, use="expected")
    fit_cnt = fit_malus(records, use="counts")
    files[f"counts_{c['pair']}.csv"] = pio.csv_text(pio.counts_columns(records))
    fit_doc = {
        "amplitude": fit_cnt.amplitude,
        "offset": fit_cnt.offset,
        "phase": fit_cnt.phase,
        "visibility": fit_cnt.visibility,
        "r2": fit_cnt.r2,
        "expected": {
            "amplitude": fit_exp.amplitude,
            "offset": fit_exp.offset,
            "phase": fit_exp.phase,
            "visibility": fit_exp.visibility,
            "r2": fit_exp.r2,
        },
    }
    files["malus_fit.json"] = pio.json_text(fit_doc)
    regimes = {}
    for h in c.get("compare_h", []):
        state = run_interferometer(source, _arms(sc, h, pair["v"]))
        recs = malus_sweep(state, cc, angles, t_ref, integration_time=tint)
        fit = fit_malus(recs, use="expected")
        regimes[h] = {
            "dark_rate_hz": expected_rate(state, cc, 3 * np.pi / 8, t_ref),
            "bright_rate_hz": expected_rate(state, cc, np.pi / 8, t_ref),
            "min_angle_deg": float(np.degrees(fit.min_angle)),
            "visibility": fit.visibility,
        }
    summary["counting"] = {
        "pair": c["pair"],
        "t_ref_s": t_ref,
        "fit": fit_doc,
        "regimes": regimes,
        "total_counts": int(sum(r.counts for r in records)),
    }


def write_outputs(result, directory):
    directory = Path(directory)
    for name in sorted(result.files):
        pio.write_atomic(directory / name, result.files[name])
    return directory


def set_path(raw, path, value):
    """Set a dotted path (list indices as integers) to a numeric value."""
    keys = path.split(".")
    node = raw
    try:
        for k in keys[:-1]:
            node = node[int(k)] if isinstance(node, list) else node[k]
        last = int(keys[-1]) if isinstance(node, list) else keys[-1]
        current = node[last]
    except (KeyError, IndexError, ValueError, TypeError):
        raise ConfigError(f"unknown parameter path {path!r}") from None
    if isinstance(current, bool) or not isinstance(current, (int, float)):
        raise ConfigError(f"parameter {path!r} is not numeric")
    node[last] = type(current)(value) if isinstance(current, int) and float(value).is_integer() else float(value)


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (bool, np.bool_)):
            out[key] = float(v)
        elif isinstance(v, (int, float, np.integer, np.floating)) and v is not None:
            out[key] = float(v)
    return out


def _sweep_point(args):
    raw, path, value = args
    raw = copy.deepcopy(raw)
    set_path(raw, path, value)
    sc = validate_config(raw)
    return _flatten(run_scenario(sc).summary)


def sweep(raw, parameter, values, jobs=1):
    """One flattened summary row per parameter value.

    Returns ``(columns, rows)``; the first column is ``value``.
    """
    values = [float(v) for v in values]
    probe = copy.deepcopy(raw)
    set_path(probe, parameter, values[0] if values else 0.0)
    validate_config(probe)
    if not values:
        return ["value"], []
    tasks = [(raw, parameter, v) for v in values]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_point, tasks))
    else:
        results = [_sweep_point(t) for t in tasks]
    columns = ["value"]
    for r in results:
        for k in r:
            if k not in columns and k not in ("seed",):
                columns.append(k)
    rows = [[v] + [r.get(k, math.nan) for k in columns[1:]] for v, r in zip(values, results)]
    return columns, rows


def kk_check(grid=None, flip_sign=False, seed=0):
    """Verify the dispersion-engine invariants.

    Returns a report ``{"passed": bool, "checks": [...]}``; each check lists
    its measured value and tolerance. ``flip_sign`` inverts the Hilbert
    convention as a negative control.
    """
    sign = -1.0 if flip_sign else 1.0
    grid = grid or FrequencyGrid.from_time_step(2**17, 1e-10)
    det = grid.detuning
    central = np.abs(det) <= 0.4 * grid.span
    checks = []

    def record(name, value, tol, passed):
        checks.append({"name": name, "value": float(value), "tolerance": tol, "passed": bool(passed)})

    def kk(profile):
        return kramers_kronig_phase(profile, _sign=sign)

    def lorentz_profile(depth, fwhm, center=0.0):
        od = depth * (0.5 * fwhm) ** 2 / ((det - center) ** 2 + (0.5 * fwhm) ** 2)
        from .medium import AbsorptionProfile

        return AbsorptionProfile(grid, od)

    worst = 0.0
    for d in (0.9, 1.4, 4.0):
        ph = kk(lorentz_profile(d, 6e6)).phase
        ref = analytic_lorentzian_response(grid, d, 6e6).phase
        worst = max(worst, float(np.abs(ph - ref)[central].max()))
    record("oracle equivalence", worst, 1e-3, worst < 1e-3)

    worst = 0.0
    for name in ("fig2", "fig3"):
        sc = validate_config(copy.deepcopy(PRESETS[name]))
        for prof in sc.profiles.values():
            worst = max(worst, causality_residual(kk(prof)))
    record("causality", worst, 1e-6, worst < 1e-6)

    rng = np.random.default_rng(seed)
    ok = True
    margin = math.inf
    for _ in range(16):
        d = rng.uniform(0.1, 4.0)
        w = rng.uniform(1e6, 20e6)
        base = lorentz_profile(4.0, 40e6).od
        hole = kk(type(lorentz_profile(d, w))(grid, base - lorentz_profile(d, w).od))
        hole_tau = group_delay(hole).at_center() - group_delay(kk(lorentz_profile(4.0, 40e6))).at_center()
        anti_tau = group_delay(kk(lorentz_profile(d, w))).at_center()
        ok &= hole_tau > 0 and anti_tau < 0
        margin = min(margin, hole_tau, -anti_tau)
    record("sign convention lock", margin, 0.0, ok)

    a, b = lorentz_profile(1.4, 6e6, -10e6), lorentz_profile(0.9, 3e6, 12e6)
    summed = type(a)(grid, a.od + b.od)
    err = float(np.abs(kk(summed).phase - (kk(a).phase + kk(b).phase)).max())
    record("linearity", err, 1e-9, err < 1e-9)

    d, w = 0.9, 6e6
    tau = -group_delay(kk(lorentz_profile(d, w))).at_center()
    ratio = tau * 2 * np.pi * w / d
    record("estimator consistency", abs(ratio - 1), 0.02, abs(ratio - 1) < 0.02)

    return {"passed": all(c["passed"] for c in checks), "checks": checks}
