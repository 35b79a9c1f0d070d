import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from precursim.errors import PhysicalLimitError
from precursim.medium import (
    FrequencyGrid,
    MediumParams,
    PumpSchedule,
    SpectralFeature,
    build_profile,
    gaussian,
    inhomogeneous_background,
    lorentzian,
    pump_fluence,
    pump_preset,
    pump_to_profile,
    unpumpable_fraction,
)

GRID = FrequencyGrid.from_time_step(2**14, 1e-9)  # df ~ 61 kHz, span 1 GHz
MED = MediumParams()
WIN = (0.0, 100e6)


def test_grid_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        FrequencyGrid(1000, 1e3)
    with pytest.raises(ValueError):
        FrequencyGrid(1024, 0.0)


def test_grid_detuning_layout():
    g = FrequencyGrid(8, 2.0)
    assert np.array_equal(g.detuning, np.arange(-4, 4) * 2.0)
    assert g.detuning[g.center_index] == 0.0
    assert g.dt * g.df * g.n_points == pytest.approx(1.0)


def test_line_shapes_unit_peak_and_half_max():
    assert lorentzian(0.0, 6e6) == 1.0
    assert lorentzian(3e6, 6e6) == pytest.approx(0.5)
    assert gaussian(3e6, 6e6) == pytest.approx(0.5)


def test_inhomogeneous_background_values():
    g = FrequencyGrid(2**14, 1e6)  # 16 GHz span, exact grid points at the test detunings
    bg = inhomogeneous_background(g, MED)
    at = lambda f: bg[g.center_index + int(round(f / g.df))]  # noqa: E731
    assert at(0.0) == pytest.approx(12.0)
    assert at(1.05e9) == pytest.approx(6.0)
    assert at(-1.05e9) == pytest.approx(6.0)
    assert at(2.1e9) == pytest.approx(0.75)


def test_feature_below_homogeneous_width_is_rejected():
    with pytest.raises(PhysicalLimitError):
        build_profile(GRID, MED, WIN, [SpectralFeature("hole", 0.0, 10e3, 0.5)])


def test_feature_outside_window_is_rejected():
    with pytest.raises(ValueError):
        build_profile(GRID, MED, WIN, [SpectralFeature("antihole", 49e6, 6e6, 1.0)])


def test_unknown_feature_kind():
    with pytest.raises(ValueError):
        SpectralFeature("bump", 0.0, 6e6, 1.0)


def test_feature_depths_inside_window():
    p = build_profile(
        GRID, MED, WIN, [SpectralFeature("antihole", 0.0, 6e6, 1.4)], d0=0.35
    )
    assert p.at(0.0) == pytest.approx(1.75)
    assert p.at(3e6) == pytest.approx(0.35 + 0.7, rel=1e-3)
    assert not p.clamped


def test_deep_hole_is_clamped_with_flag():
    with pytest.warns(UserWarning):
        p = build_profile(GRID, MED, WIN, [SpectralFeature("hole", 0.0, 6e6, 2.0)], d0=0.3)
    assert p.clamped
    assert p.od.min() == 0.0


def test_outside_window_follows_inhomogeneous_line():
    p = build_profile(GRID, MED, WIN, d0=0.35)
    bg = inhomogeneous_background(GRID, MED)
    far = np.abs(GRID.detuning) > 60e6
    assert np.array_equal(p.od[far], bg[far])


_feature = st.builds(
    SpectralFeature,
    kind=st.sampled_from(["hole", "antihole"]),
    center=st.floats(-30e6, 30e6),
    fwhm=st.floats(1e6, 20e6),
    depth=st.floats(0.0, 5.0),
    shape=st.sampled_from(["lorentzian", "gaussian"]),
)


@settings(max_examples=40, deadline=None)
@given(st.lists(_feature, max_size=5), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_od_is_never_negative(features, d0, pedestal):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p = build_profile(GRID, MED, WIN, features, d0=d0, pedestal=pedestal)
    assert np.all(p.od >= 0)


@settings(max_examples=30, deadline=None)
@given(st.lists(_feature, max_size=4), st.floats(0.0, 2.0))
def test_symmetric_feature_lists_give_symmetric_profiles(features, d0):
    mirrored = [SpectralFeature(f.kind, -f.center, f.fwhm, f.depth, f.shape) for f in features]
    # grid is symmetric about index n/2; drop the unpaired first point
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p = build_profile(GRID, MED, WIN, features + mirrored, d0=d0)
    od = p.od[1:]
    np.testing.assert_allclose(od, od[::-1], rtol=1e-12, atol=1e-12)


# -- pumping ----------------------------------------------------------------


def test_zero_pump_leaves_background_exactly():
    pump = PumpSchedule(steps=[(f, 0.0) for f in np.linspace(-40e6, 40e6, 50)])
    p = pump_to_profile(GRID, MED, pump)
    assert np.array_equal(p.od, inhomogeneous_background(GRID, MED))


def test_empty_pump_table_is_rejected():
    pump = PumpSchedule(steps=())
    with pytest.raises(ValueError):
        pump_to_profile(GRID, MED, pump)


def test_uniform_strong_pump_without_residual_clears_window():
    pump = pump_preset("flat", zeeman_lifetime=1e9, branching_ratio=1.0, pump_efficiency=1e4)
    assert unpumpable_fraction(pump) < 1e-9
    p = pump_to_profile(GRID, MED, pump)
    inside = np.abs(GRID.detuning) <= 45e6
    assert p.od[inside].max() < 0.01


def test_unpumpable_fraction_limits():
    base = dict(steps=[(0.0, 1.0)])
    # no relaxation and full branching: everything is pumped after one pass
    assert unpumpable_fraction(PumpSchedule(zeeman_lifetime=1e12, branching_ratio=1.0, **base)) < 1e-9
    # no branching: nothing can be pumped
    assert unpumpable_fraction(PumpSchedule(branching_ratio=0.0, **base)) == pytest.approx(1.0)
    # defaults land near the rate balance relax / (relax + beta)
    s = unpumpable_fraction(PumpSchedule(**base))
    assert s == pytest.approx(0.01 / 0.41, rel=1e-6)


def test_pump_fluence_matches_direct_summation():
    pump = pump_preset("notch", n_steps=37, notch_width=6e6, power_broadening_width=2e6)
    det = np.linspace(-60e6, 60e6, 301)
    W = pump.sweep_weights().sum()
    ref = np.zeros_like(det)
    for f, a in pump.steps:
        for k, x in enumerate(det):
            hw = 1e6  # half of the 2 MHz broadened width
            ref[k] += a * a * W / len(pump.steps) * hw * hw / ((x - f) ** 2 + hw * hw)
    np.testing.assert_allclose(pump_fluence(det, pump, MED.gamma_h), ref, rtol=1e-12)


def _fwhm(x, y):
    base = y.min()
    half = base + 0.5 * (y.max() - base)
    above = x[y >= half]
    return above.max() - above.min()


def _notch_fwhm(pbw):
    pump = pump_preset("notch", notch_width=6e6, power_broadening_width=pbw)
    p = pump_to_profile(GRID, MED, pump)
    sel = np.abs(GRID.detuning) <= 20e6
    return _fwhm(GRID.detuning[sel], p.od[sel])


def test_notch_pump_burns_an_antihole_narrowed_by_power_broadening():
    widths = [_notch_fwhm(pbw) for pbw in (0.3e6, 1e6, 2e6)]
    # the unpumped gap survives as an antihole no wider than the notch;
    # broader pump lines eat into it from both sides
    assert all(w <= 6e6 + GRID.df for w in widths)
    assert widths[0] > widths[1] > widths[2]


def test_peak_pump_burns_a_hole():
    p = pump_to_profile(GRID, MED, pump_preset("peak", notch_width=6e6))
    assert p.at(0.0) < p.at(15e6)


def test_binary_mask_limit():
    g = FrequencyGrid(2**12, 50e3)
    det = g.detuning
    support = (np.abs(det) >= 10e6) & (np.abs(det) <= 40e6)
    steps = [(f, 1.0) for f in det[support]]
    pump = PumpSchedule(
        steps=steps,
        power_broadening_width=0.0,
        pump_efficiency=1e3,
        zeeman_lifetime=1e12,
        branching_ratio=1.0,
    )
    med = MediumParams(gamma_h=1.0)
    p = pump_to_profile(g, med, pump)
    bg = inhomogeneous_background(g, med)
    np.testing.assert_allclose(p.od / bg, np.where(support, 0.0, 1.0), atol=1e-6)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(0.0, 1.0), min_size=8, max_size=8),
    st.integers(0, 7),
    st.floats(0.0, 1.0),
)
def test_pumping_harder_never_raises_od(amps, idx, bump):
    offsets = np.linspace(-40e6, 40e6, 8)
    pump_a = PumpSchedule(steps=list(zip(offsets, amps)))
    amps_b = list(amps)
    amps_b[idx] = max(amps_b[idx], bump)
    pump_b = PumpSchedule(steps=list(zip(offsets, amps_b)))
    od_a = pump_to_profile(GRID, MED, pump_a).od
    od_b = pump_to_profile(GRID, MED, pump_b).od
    assert np.all(od_b <= od_a + 1e-12)


def test_pump_schedule_validation():
    with pytest.raises(ValueError):
        PumpSchedule(steps=[(0.0, 1.5)])
    with pytest.raises(ValueError):
        PumpSchedule(steps=[(80e6, 1.0)])
    with pytest.raises(ValueError):
        PumpSchedule(steps=[(0.0, 1.0)], prep_duration=30e-3)
