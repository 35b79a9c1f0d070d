"""
Slow and fast light with a Gaussian probe
=========================================

A 250 ns Gaussian crosses a flat window, an anti-hole and a hole. Delays
are measured against the flat-window output.
"""

from precursim.presets import preset
from precursim.scenario import run_scenario, validate_config

result = run_scenario(validate_config(preset("fig2")))
for name, m in result.summary["media"].items():
    print(f"{name:5s} delay {m['delay_s'] * 1e9:+7.2f} ns (fit {m['delay_fit_s'] * 1e9:+7.2f} ns)  "
          f"tau_g(0) rel {m['tau_g_relative_s'] * 1e9:+7.2f} ns  "
          f"v_g {m['group_velocity_m_s']:.3g} m/s  T={m['energy_transmission']:.3f}")
