"""Regenerate the data behind the three evaluation figures as CSV + gnuplot scripts."""

from __future__ import annotations

import math
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import em_model, power, rates
from .config import RunConfig
from .errors import RrsError
from .sweep import SweepTable, provenance

# (feed distance [m], gain exponent) pairs drawn in the rate-vs-size and power figures.
# (0.15, 5) is the reference feed; the others move each parameter both ways.
FIGURE_CASES = ((0.15, 5.0), (0.25, 5.0), (0.15, 3.0), (0.25, 3.0))


def _case_label(rf, alpha):
    return f"rF{rf:g}_a{alpha:g}"


def _square_counts(lo, hi, points):
    sides = np.unique(np.round(np.sqrt(np.geomspace(lo, hi, points))).astype(int))
    return [int(s) * int(s) for s in sides]


def fig2a(cfg=None, counts=None):
    """Exact, quadrature and disc-bound rates versus surface size at r_F=0.15 m, alpha=5."""
    cfg = cfg or RunConfig()
    cfg = replace(cfg, feed_distance=0.15, feed_gain_exponent=5.0, rrs_count=None, sweep=None)
    counts = counts or _square_counts(1e2, 1e6, 33)
    base = cfg.scene()
    rows = []
    for n in counts:
        side = int(round(math.sqrt(n)))
        scene = base.with_(rrs_side=side)
        exact = em_model.exact_snr_rrs(scene).rate
        full = rates.rate_rrs_quadrature(scene, rel_tol=cfg.rel_tol).rate
        lower = rates.rate_rrs_lower(scene, rel_tol=cfg.rel_tol).rate
        rows.append([side * side, exact, full, lower, full - lower, (full - lower) / full])
    cols = ["element_count", "rate_exact", "rate", "rate_lower", "gap", "rel_gap"]
    return SweepTable(cols, rows, provenance(cfg, figure="2a", feed_distance=0.15, gain_exponent=5))


def fig2b(cfg=None, counts=None):
    """Quadrature rate versus surface size for the four (r_F, alpha) cases."""
    cfg = cfg or RunConfig()
    cfg = replace(cfg, rrs_count=None, sweep=None)
    counts = counts or _square_counts(1e2, 1e7, 41)
    cols = ["element_count"] + [f"rate_{_case_label(*c)}" for c in FIGURE_CASES]
    rows = []
    for n in counts:
        row = [n]
        for rf, alpha in FIGURE_CASES:
            scene = replace(cfg, feed_distance=rf, feed_gain_exponent=alpha).scene()
            row.append(rates.rate_rrs_quadrature(scene, rel_tol=cfg.rel_tol, element_count=n).rate)
        rows.append(row)
    prov = provenance(
        cfg, figure="2b", cases=" ".join(_case_label(*c) for c in FIGURE_CASES),
        reference_case=_case_label(0.15, 5.0),
    )
    return SweepTable(cols, rows, prov)


def fig2c(cfg=None, rate_grid=None):
    """P_R / P_P versus the required rate, across the far/near-field boundary.

    Points a case cannot reach are written as NaN with the reason in
    ``error``. Each case's far-field threshold is recorded in the header and
    as a per-row ``far_<case>`` flag.
    """
    cfg = cfg or RunConfig()
    cfg = replace(cfg, rrs_count=None, pa_count=None, sweep=None)
    model = cfg.power_model()
    scenes = [replace(cfg, feed_distance=rf, feed_gain_exponent=a).scene() for rf, a in FIGURE_CASES]
    thresholds = [rates.farfield_thresholds(s).rate_threshold for s in scenes]
    if rate_grid is None:
        top = max(math.log2(1.0 + rates.rrs_farfield_scale(s) ** 2) for s in scenes)
        rate_grid = np.linspace(model.min_rate, math.floor(top * 4) / 4, 49)
    labels = [_case_label(*c) for c in FIGURE_CASES]
    cols = ["rate"]
    for lab in labels:
        cols += [f"ratio_{lab}", f"far_{lab}"]
    cols.append("error")
    rows = []
    for c in rate_grid:
        c = float(c)
        row = [c]
        problems = []
        for scene, thr, lab in zip(scenes, thresholds, labels):
            try:
                v = power.verdict(c, scene, model, rel_tol=cfg.rel_tol)
                row.append(v.power_ratio)
            except RrsError as exc:
                row.append(math.nan)
                problems.append(f"{lab}: {exc}")
            row.append(1.0 if c < thr else 0.0)
        row.append("; ".join(problems))
        rows.append(row)
    prov = provenance(
        cfg, figure="2c", l_pw=repr(power.element_power_ratio(model)),
        **{f"c_thr_{lab}": repr(t) for lab, t in zip(labels, thresholds)},
    )
    return SweepTable(cols, rows, prov)


_SCRIPTS = {
    "fig2a": """set datafile separator ","
set datafile commentschars "#"
set key autotitle columnhead
set logscale x
set xlabel "number of surface elements"
set ylabel "rate (bit/s/Hz)"
plot "fig2a.csv" using 1:3 with lines, "" using 1:4 with lines dashtype 2, "" using 1:2 with points
""",
    "fig2b": """set datafile separator ","
set datafile commentschars "#"
set key autotitle columnhead
set logscale x
set xlabel "number of surface elements"
set ylabel "rate (bit/s/Hz)"
plot for [i=2:5] "fig2b.csv" using 1:i with lines
""",
    "fig2c": """set datafile separator ","
set datafile commentschars "#"
set key autotitle columnhead
set logscale y
set xlabel "required rate C (bit/s/Hz)"
set ylabel "P_R / P_P"
# far-field thresholds are listed in the CSV header (c_thr_*)
plot for [i=2:8:2] "fig2c.csv" using 1:i with linespoints
""",
}

FIGURES = {"fig2a": fig2a, "fig2b": fig2b, "fig2c": fig2c}


def repro_figure(figure_id, output_dir, cfg=None):
    """Write ``<figure>.csv`` and ``<figure>.gp`` into ``output_dir``; return both paths."""
    key = figure_id if figure_id.startswith("fig") else f"fig{figure_id}"
    if key not in FIGURES:
        raise ValueError(f"unknown figure {figure_id!r}; choose from {sorted(FIGURES)}")
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = FIGURES[key](cfg)
    csv_path = out / f"{key}.csv"
    table.to_csv(csv_path)
    script = out / f"{key}.gp"
    script.write_text(_SCRIPTS[key], encoding="utf-8")
    return csv_path, script
