"""
Engineering absorption profiles
===============================

Holes and anti-holes are burned into a 100 MHz window of the inhomogeneous
line. Outside the window the crystal keeps its unpumped optical depth.
"""

import numpy as np

from precursim.medium import (
    FrequencyGrid,
    MediumParams,
    SpectralFeature,
    build_profile,
    pump_preset,
    pump_to_profile,
)

grid = FrequencyGrid.from_time_step(2**15, 2e-10)
medium = MediumParams()
window = (0.0, 100e6)

# an anti-hole (fast light) and a hole cut into a pedestal (slow light)
fast = build_profile(grid, medium, window, [SpectralFeature("antihole", 0.0, 6e6, 1.4)], d0=0.35)
slow = build_profile(grid, medium, window, [SpectralFeature("hole", 0.0, 6e6, 0.9)], d0=0.35, pedestal=0.9)

for name, p in (("fast", fast), ("slow", slow)):
    print(f"{name}: od(0)={p.at(0.0):.3f}  od(3 MHz)={p.at(3e6):.3f}  od(200 MHz)={p.at(200e6):.2f}")

# the same kind of profile produced by the optical-pumping model
notch = pump_to_profile(grid, medium, pump_preset("notch", notch_width=6e6))
det = np.array([0.0, 2e6, 5e6, 20e6])
print("pumped notch od:", np.round(notch.at(det), 3))
