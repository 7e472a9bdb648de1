"""Named quantities, one-axis parameter sweeps and provenance-stamped CSV tables."""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, em_model, power, rates
from .errors import RrsError

VERDICT_CODES = {"rrs-wins": 1, "array-wins": 0, "infeasible": -1}


def _rrs_rate(fn):
    def q(cfg):
        r = fn(cfg.scene(), rel_tol=cfg.rel_tol, element_count=cfg.rrs_count)
        return {"rate": r.rate, "error_estimate": r.estimated_numerical_error}

    return q


def _q_rrs_upper(cfg):
    r = rates.rate_rrs_upper(
        cfg.scene(), exclusion_band=cfg.exclusion_band or None, rel_tol=cfg.rel_tol, element_count=cfg.rrs_count
    )
    return {"rate": r.rate, "error_estimate": r.estimated_numerical_error}


def _q_pa_quad(cfg):
    r = rates.rate_pa_quadrature(cfg.scene(), rel_tol=cfg.rel_tol, element_count=cfg.pa_count)
    return {"rate": r.rate, "error_estimate": r.estimated_numerical_error}


def _q_verdict(cfg):
    v = power.verdict(cfg.target_rate(), cfg.scene(), cfg.power_model(), rel_tol=cfg.rel_tol)
    return {
        "rrs_count": v.rrs_count,
        "pa_count": v.pa_count,
        "power_rrs": v.power_rrs,
        "power_pa": v.power_pa,
        "power_ratio": v.power_ratio,
        "outcome": VERDICT_CODES[v.outcome],
    }


def _rrs_count(cfg):
    return cfg.rrs_count if cfg.rrs_count is not None else cfg.rrs_m * cfg.rrs_n


def _pa_count(cfg):
    return cfg.pa_count if cfg.pa_count is not None else cfg.pa_m * cfg.pa_n


QUANTITIES = {
    "rate_rrs_exact": (("rate",), lambda c: {"rate": em_model.exact_snr_rrs(c.scene()).rate}),
    "rate_rrs_quadrature": (("rate", "error_estimate"), _rrs_rate(rates.rate_rrs_quadrature)),
    "rate_rrs_lower": (("rate", "error_estimate"), _rrs_rate(rates.rate_rrs_lower)),
    "rate_rrs_upper": (("rate", "error_estimate"), _q_rrs_upper),
    "rate_rrs_lower_farfield": (
        ("rate",),
        lambda c: {"rate": rates.rate_rrs_lower_farfield(c.scene(), element_count=c.rrs_count).rate},
    ),
    "rate_pa_exact": (("rate",), lambda c: {"rate": em_model.exact_rate_pa(c.scene()).rate}),
    "rate_pa_quadrature": (("rate", "error_estimate"), _q_pa_quad),
    "rate_pa_farfield": (
        ("rate",), lambda c: {"rate": rates.rate_pa_farfield(c.scene(), element_count=c.pa_count).rate}
    ),
    "cauchy_bound": (
        ("snr_exact", "snr_bound"),
        lambda c: {
            "snr_exact": em_model.exact_snr_rrs(c.scene()).snr,
            "snr_bound": em_model.cauchy_snr_bound(c.scene()),
        },
    ),
    "power_rrs": (("watts",), lambda c: {"watts": power.power_rrs(c.power_model(), _rrs_count(c)).watts}),
    "power_pa": (("watts",), lambda c: {"watts": power.power_pa(c.power_model(), _pa_count(c)).watts}),
    "l_pw": (("l_pw",), lambda c: {"l_pw": power.element_power_ratio(c.power_model())}),
    "g_closed": (("g",), lambda c: {"g": power.g_closed(c.target_rate(), c.scene())}),
    "g_numeric": (("g",), lambda c: {"g": power.g_numeric(c.target_rate(), c.scene(), rel_tol=c.rel_tol)}),
    "verdict": (("rrs_count", "pa_count", "power_rrs", "power_pa", "power_ratio", "outcome"), _q_verdict),
}


def evaluate(cfg, quantity=None):
    name = quantity or cfg.quantity
    _, fn = QUANTITIES[name]
    return fn(cfg)


@dataclass
class SweepTable:
    columns: list
    rows: list
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError("sweep table rows must match the column count")

    def column(self, name):
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self, path=None):
        """Write (or return) the table as CSV with ``# key: value`` provenance lines first."""
        buf = io.StringIO()
        for key, value in self.provenance.items():
            buf.write(f"# {key}: {value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text


def _fmt(v):
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return v


def read_csv(path):
    """Parse a table written by :meth:`SweepTable.to_csv` back into a SweepTable."""
    provenance = {}
    body = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            provenance[key] = value
        else:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    rows = []
    for rec in reader:
        rows.append([_parse_cell(x) for x in rec])
    return SweepTable(columns, rows, provenance)


def _parse_cell(text):
    try:
        return float(text)
    except ValueError:
        return text


def provenance(cfg, **extra):
    from .config import emit_config

    text = emit_config(cfg)
    prov = {
        "tool": f"rrsim {__version__}",
        "config_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "rel_tol": repr(cfg.rel_tol),
        "solver_tol": repr(cfg.solver_tol),
        "exclusion_band": repr(cfg.exclusion_band),
        "wavelength_m": repr(cfg.wavelength),
        "group_size": str(cfg.group_size),
    }
    prov.update({k: str(v) for k, v in extra.items()})
    return prov


def run_sweep(cfg, quantity=None):
    """Evaluate ``quantity`` at every point of the config's sweep axis.

    Failures at a point become rows with NaN values and the error message in
    the ``error`` column; the sweep carries on.
    """
    if cfg.sweep is None:
        raise ValueError("config has no sweep axis")
    name = quantity or cfg.quantity
    cols, fn = QUANTITIES[name]
    axis = cfg.sweep
    rows = []
    for x in axis.values():
        x = float(x)
        point = cfg.at(axis.key, x)
        try:
            vals = fn(point)
            rows.append([x, *[float(vals[c]) for c in cols], ""])
        except (RrsError, ValueError) as exc:
            rows.append([x, *[math.nan] * len(cols), f"{type(exc).__name__}: {exc}"])
    return SweepTable([axis.key, *cols, "error"], rows, provenance(cfg, quantity=name, sweep=axis.text()))
