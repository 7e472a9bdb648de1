"""
Which antenna draws less power?
===============================

A surface element costs a PIN diode plus its share of a voltage converter;
an array element costs a phase shifter. The surface needs more elements for
the same rate, so it wins as long as the element-count ratio g(C) stays
below the per-element power ratio l_pw.
"""

from dataclasses import replace

from rrsim import default_scene
from rrsim.power import PowerModel, crossover_rates, g_closed, verdict

scene = default_scene()
model = PowerModel()

rep = crossover_rates(scene, model)
print(f"l_pw = {rep.l_pw:.2f}, g is smallest ({rep.g_min:.2f}) at C = {rep.g_min_rate:.3f}")
print(f"g(C) = l_pw at C = {rep.c_e1:.3f} and {rep.c_e2:.3f}")
print(f"surface wins on {rep.rrs_wins_interval[0]:.3f} .. {rep.rrs_wins_interval[1]:.3f}")

for c in (20.0, 22.0, 24.0, 25.0):
    v = verdict(c, scene, model)
    print(f"C={c:5.1f}  g={g_closed(c, scene):6.2f}  surface {v.rrs_count:6d} el {v.power_rrs:7.2f} W"
          f"  array {v.pa_count:5d} el {v.power_pa:7.2f} W  -> {v.outcome}")

# sharing one converter among four elements makes the surface even cheaper
grouped = crossover_rates(scene, replace(model, group_size=4))
print(f"group of 4: l_pw = {grouped.l_pw:.1f}")

# with nearly free phase shifters the array always wins
cheap = crossover_rates(scene, replace(model, shifter_power=1e-7))
print("free phase shifters, surface-wins window:", cheap.rrs_wins_interval)
