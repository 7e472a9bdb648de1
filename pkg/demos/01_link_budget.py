"""
Link budget of a refractive surface and a phased array
=======================================================

Both antennas serve a user 50 m away at 26 GHz. The surface has 100 x 100
elements at lambda/6 pitch lit by a horn 15 cm behind it; the array has
64 x 64 elements at lambda/2.
"""

import numpy as np

from rrsim import default_scene
from rrsim.em_model import PhaseMask, exact_rate_pa, exact_snr_rrs, optimal_phase_mask, snr_with_phases
from rrsim.rates import rate_pa_quadrature, rate_rrs_quadrature

scene = default_scene()

# element-by-element sums, every phase aligned
rrs = exact_snr_rrs(scene)
pa = exact_rate_pa(scene)
print(f"surface  exact sum  {rrs.rate:.4f} bit/s/Hz")
print(f"array    exact sum  {pa.rate:.4f} bit/s/Hz")

# the continuous approximation agrees to about 1e-5
print(f"surface  integral   {rate_rrs_quadrature(scene).rate:.4f}")
print(f"array    integral   {rate_pa_quadrature(scene).rate:.4f}")

# a random configuration throws almost all of the coherent gain away
rng = np.random.default_rng(0)
random_rate = snr_with_phases(scene, PhaseMask.random(scene.surface, rng)).rate
print(f"surface, random phases  {random_rate:.2f}")

# coarse phase control on the aligned mask
best = optimal_phase_mask(scene)
for bits in (1, 2, 3):
    print(f"surface, {bits}-bit phases   {snr_with_phases(scene, best.quantized(bits)).rate:.3f}")
