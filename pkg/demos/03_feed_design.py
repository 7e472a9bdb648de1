"""
Choosing the feed
=================

Moving the horn back or widening its beam spreads power more evenly over
a large surface, which raises the saturation rate.
"""

from rrsim import default_scene
from rrsim.rates import farfield_thresholds, rate_rrs_quadrature, rrs_farfield_scale

for rf, alpha in ((0.15, 5.0), (0.25, 5.0), (0.15, 3.0), (0.25, 3.0)):
    scene = default_scene(feed_distance=rf, gain_exponent=alpha)
    r5 = rate_rrs_quadrature(scene, element_count=1e5).rate
    ceiling = rate_rrs_quadrature(scene, element_count=1e9).rate
    thr = farfield_thresholds(scene).rate_threshold
    print(f"r_F={rf:.2f} alpha={alpha:.0f}:  C(1e5)={r5:.3f}  C(1e9)={ceiling:.3f}  far-field up to {thr:.3f}")

# in the far field the disc bound can never exceed log2(1 + scale^2)
s = default_scene()
print("far-field SNR ceiling (reference feed):", rrs_farfield_scale(s) ** 2)
