"""
Polarization interferometer
===========================

Each polarization of an H+V probe crosses its own medium. At the
wavefront the two arms interfere destructively in the H-V port whatever
the media are; the main fields do not.
"""

from precursim.presets import preset
from precursim.scenario import run_scenario, validate_config

summary = run_scenario(validate_config(preset("fig3"))).summary
for name, p in summary["interferometer"].items():
    print(f"{name} ({p['h']:4s}/{p['v']:4s}) rising edge dark/bright {p['rising_edge_dark_to_bright']:.2e}  "
          f"falling edge {p['falling_edge_dark_to_bright']:.2e}  "
          f"main-field dark power {p['main_field_dark_power']:.2e}")
