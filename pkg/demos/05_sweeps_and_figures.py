"""
Sweeps and figure data
======================

Sweeps run from a small text config; every CSV starts with provenance lines
(tool version, config hash, tolerances). The same thing is available as
``rrsim sweep --config run.conf`` and ``rrsim repro fig2a fig2b fig2c``.
"""

import tempfile
from pathlib import Path

from rrsim.config import parse_config
from rrsim.repro import repro_figure
from rrsim.sweep import run_sweep

cfg = parse_config("""
tx_power_dbm = 43
noise_power_dbm = -96
ue_zenith_deg = 30
quantity = rate_rrs_lower_farfield
sweep.rrs_count = 1e2:1e6:9:log
""")
table = run_sweep(cfg)
print(table.to_csv())  # far-field points only; the rest carry NotFarField in the error column

out = Path(tempfile.mkdtemp())
for fig in ("fig2a", "fig2b", "fig2c"):
    for path in repro_figure(fig, out):
        print("wrote", path)
