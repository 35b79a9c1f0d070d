import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from precursim.dispersion import (
    ComplexResponse,
    analytic_lorentzian_response,
    causality_residual,
    complex_lorentzian,
    group_delay,
    group_velocity,
    hilbert_transform,
    impulse_response,
    kramers_kronig_phase,
    transfer_function,
)
from precursim.errors import EdgeArtifactError, InfiniteGroupVelocity, PhaseWrapError
from precursim.medium import AbsorptionProfile, FrequencyGrid, MediumParams, SpectralFeature, build_profile
from precursim.presets import preset
from precursim.scenario import kk_check, validate_config

GRID = FrequencyGrid.from_time_step(2**17, 1e-10)
DET = GRID.detuning
CENTRAL = np.abs(DET) <= 0.4 * GRID.span
MED = MediumParams()


def lorentz(depth, fwhm, center=0.0):
    hw = 0.5 * fwhm
    return depth * hw * hw / ((DET - center) ** 2 + hw * hw)


def antihole(depth, fwhm, center=0.0):
    return AbsorptionProfile(GRID, lorentz(depth, fwhm, center))


def hole(depth, fwhm):
    """Lorentzian hole cut to zero from a pedestal of the same depth."""
    hw = 0.5 * fwhm
    return AbsorptionProfile(GRID, depth * DET**2 / (DET**2 + hw * hw))


def closed_form_tau0(depth, fwhm, sign):
    """d(phase)/d(omega) at line centre from a symmetric difference of the closed form."""
    h = 1.0
    d_plus = complex_lorentzian(h, depth, fwhm).imag
    d_minus = complex_lorentzian(-h, depth, fwhm).imag
    dphase = -0.5 * sign * (d_plus - d_minus) / (2 * h)
    return dphase / (2 * np.pi)


def test_hilbert_of_cosine_is_sine():
    n = 256
    x = np.cos(2 * np.pi * 5 * np.arange(n) / n)
    np.testing.assert_allclose(hilbert_transform(x), np.sin(2 * np.pi * 5 * np.arange(n) / n), atol=1e-12)


def test_constant_od_is_dispersionless():
    r = kramers_kronig_phase(AbsorptionProfile(GRID, np.full(GRID.n_points, 3.0)))
    assert np.abs(r.phase).max() < 1e-12
    np.testing.assert_allclose(transfer_function(r), np.exp(-1.5), rtol=1e-12)


@pytest.mark.parametrize("depth", [0.9, 1.4, 4.0])
def test_oracle_equivalence_on_central_band(depth):
    num = kramers_kronig_phase(antihole(depth, 6e6)).phase
    ref = analytic_lorentzian_response(GRID, depth, 6e6).phase
    assert np.abs(num - ref)[CENTRAL].max() < 1e-3


@settings(max_examples=15, deadline=None)
@given(st.floats(0.1, 4.0), st.floats(1e6, 20e6), st.floats(-50e6, 50e6))
def test_oracle_equivalence_random_lines(depth, fwhm, center):
    # tail truncation by the finite span grows as depth * fwhm / span; the
    # 1e-3 rad bound holds up to the d=4, 6 MHz envelope on this grid
    assume(depth * fwhm <= 24e6)
    num = kramers_kronig_phase(antihole(depth, fwhm, center)).phase
    ref = analytic_lorentzian_response(GRID, depth, fwhm, center).phase
    assert np.abs(num - ref)[CENTRAL].max() < 1e-3


def test_transfer_function_matches_oracle():
    num = transfer_function(kramers_kronig_phase(antihole(1.4, 6e6)))
    ref = transfer_function(analytic_lorentzian_response(GRID, 1.4, 6e6))
    assert (np.abs(num - ref) / np.abs(ref))[CENTRAL].max() < 1e-3


def test_analytic_response_special_points():
    g = FrequencyGrid(1024, 1e5)
    r = analytic_lorentzian_response(g, 1.4, 6e6)
    c = g.center_index
    assert r.ln_amp[c] == pytest.approx(-0.7)
    assert r.phase[c] == 0.0
    D = complex_lorentzian(3e6, 1.4, 6e6)
    assert D.real == pytest.approx(0.7)
    assert D.imag == pytest.approx(0.7)
    z = analytic_lorentzian_response(g, 0.0, 6e6)
    assert not np.any(z.ln_amp) and not np.any(z.phase)
    with pytest.raises(ValueError):
        analytic_lorentzian_response(g, 1.0, 0.0)


def test_zero_phase_gives_zero_delay():
    r = ComplexResponse(GRID, np.zeros(GRID.n_points), np.zeros(GRID.n_points))
    assert not np.any(group_delay(r).tau_g)
    np.testing.assert_array_equal(transfer_function(r), 1.0)


def test_od4_transmission():
    r = ComplexResponse(GRID, np.full(GRID.n_points, -2.0), np.zeros(GRID.n_points))
    assert abs(transfer_function(r)[0]) == pytest.approx(np.exp(-2), rel=1e-12)


def test_hole_delay_matches_closed_form():
    tau = group_delay(kramers_kronig_phase(hole(0.9, 6e6))).at_center()
    ref = closed_form_tau0(0.9, 6e6, sign=-1)
    assert ref == pytest.approx(0.9 / (2 * np.pi * 6e6), rel=1e-9)  # 23.9 ns
    assert tau == pytest.approx(ref, rel=0.02)


def test_antihole_advance_matches_closed_form():
    tau = group_delay(kramers_kronig_phase(antihole(1.4, 6e6))).at_center()
    ref = closed_form_tau0(1.4, 6e6, sign=1)
    assert ref < 0
    assert tau == pytest.approx(ref, rel=0.02)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.1, 4.0), st.floats(1e6, 20e6))
def test_sign_convention_lock(depth, fwhm):
    assert group_delay(kramers_kronig_phase(hole(depth, fwhm))).at_center() > 0
    assert group_delay(kramers_kronig_phase(antihole(depth, fwhm))).at_center() < 0


@settings(max_examples=10, deadline=None)
@given(
    st.lists(st.tuples(st.floats(0.1, 3.0), st.floats(1e6, 20e6), st.floats(-40e6, 40e6)), min_size=2, max_size=4)
)
def test_kk_is_linear(lines):
    parts = [lorentz(*ln) for ln in lines]
    total = kramers_kronig_phase(AbsorptionProfile(GRID, sum(parts))).phase
    summed = sum(kramers_kronig_phase(AbsorptionProfile(GRID, p)).phase for p in parts)
    assert np.abs(total - summed).max() < 1e-9


@settings(max_examples=10, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(2e6, 15e6))
def test_estimator_consistency(depth, fwhm):
    tau = group_delay(kramers_kronig_phase(hole(depth, fwhm))).at_center()
    assert tau * 2 * np.pi * fwhm / depth == pytest.approx(1.0, rel=0.02)


@pytest.mark.parametrize("name", ["fig2", "fig3"])
def test_preset_media_are_causal(name):
    sc = validate_config(preset(name))
    for prof in sc.profiles.values():
        assert causality_residual(kramers_kronig_phase(prof)) < 1e-6


_feature = st.builds(
    SpectralFeature,
    kind=st.sampled_from(["hole", "antihole"]),
    center=st.floats(-30e6, 30e6),
    fwhm=st.floats(1e6, 15e6),
    depth=st.floats(0.0, 3.0),
)


@settings(max_examples=15, deadline=None)
@given(st.lists(_feature, max_size=3), st.floats(0.0, 1.0))
@pytest.mark.filterwarnings("ignore::UserWarning")
def test_random_windowed_media_are_causal(features, d0):
    prof = build_profile(GRID, MED, (0.0, 100e6), features, d0=d0, pedestal=3.0)
    r = kramers_kronig_phase(prof)
    assert np.all(r.ln_amp <= 0)
    assert causality_residual(r) < 1e-6
    assert np.all(np.isfinite(group_delay(r).tau_g))


def test_impulse_response_of_identity_is_delta():
    r = ComplexResponse(GRID, np.zeros(GRID.n_points), np.zeros(GRID.n_points))
    t, h = impulse_response(r)
    assert t[np.argmax(np.abs(h))] == 0.0
    assert causality_residual(r) == 0.0


def test_unsettled_edges_raise():
    od = np.linspace(0.0, 5.0, GRID.n_points)
    with pytest.raises(EdgeArtifactError):
        kramers_kronig_phase(AbsorptionProfile(GRID, od))


def test_phase_wrap_detected():
    phase = np.zeros(GRID.n_points)
    phase[GRID.n_points // 2 :] = 4.0
    with pytest.raises(PhaseWrapError):
        group_delay(ComplexResponse(GRID, np.zeros(GRID.n_points), phase))


def test_group_velocity_values():
    v0 = group_velocity(0.0, MED)
    assert v0.velocity == pytest.approx(299792458.0 / 2.2)
    assert v0.background_transit == pytest.approx(22e-12, rel=0.01)
    assert group_velocity(72e-9, MED).velocity == pytest.approx(4.2e4, rel=0.02)
    assert group_velocity(-23e-9, MED).velocity == pytest.approx(-1.3e5, rel=0.02)
    with pytest.raises(InfiniteGroupVelocity):
        group_velocity(-v0.background_transit, MED)


def test_kk_check_passes_and_negative_control_fails():
    report = kk_check()
    assert report["passed"], report
    flipped = kk_check(flip_sign=True)
    failed = {c["name"] for c in flipped["checks"] if not c["passed"]}
    assert "sign convention lock" in failed
