"""Command-line entry point: ``rrsim <subcommand> [--config F] [--set k=v ...]``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import em_model, power, rates
from .config import parse_config
from .errors import RrsError
from .repro import repro_figure
from .sweep import run_sweep


def _load(args):
    text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
    cfg = parse_config(text, overrides=args.set or ())
    if args.tol is not None:
        cfg = replace(cfg, rel_tol=args.tol)
    return cfg


def _print(rows):
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        if isinstance(value, float):
            value = f"{value:.10g}"
        print(f"{key:<{width}}  {value}")


def _try(fn):
    try:
        return fn()
    except RrsError as exc:
        return f"undefined ({type(exc).__name__}: {exc})"


def cmd_rate_rrs(cfg, args):
    scene = cfg.scene()
    q = rates.rate_rrs_quadrature(scene, rel_tol=cfg.rel_tol, element_count=cfg.rrs_count)
    rows = [
        ("elements", scene.surface.element_count if cfg.rrs_count is None else cfg.rrs_count),
        ("rate_quadrature", q.rate),
        ("quadrature_error", q.estimated_numerical_error),
        ("rate_exact_sum", em_model.exact_snr_rrs(scene).rate),
        ("rate_lower_farfield", _try(lambda: rates.rate_rrs_lower_farfield(scene, cfg.rrs_count).rate)),
    ]
    _print(rows)


def cmd_rate_pa(cfg, args):
    scene = cfg.scene()
    q = rates.rate_pa_quadrature(scene, rel_tol=cfg.rel_tol, element_count=cfg.pa_count)
    _print([
        ("elements", scene.require_array().element_count if cfg.pa_count is None else cfg.pa_count),
        ("rate_quadrature", q.rate),
        ("quadrature_error", q.estimated_numerical_error),
        ("rate_exact_sum", em_model.exact_rate_pa(scene).rate),
        ("rate_farfield", _try(lambda: rates.rate_pa_farfield(scene, cfg.pa_count).rate)),
    ])


def cmd_bounds(cfg, args):
    scene = cfg.scene()
    n = cfg.rrs_count
    exact = em_model.exact_snr_rrs(scene)
    _print([
        ("rate_lower", rates.rate_rrs_lower(scene, rel_tol=cfg.rel_tol, element_count=n).rate),
        ("rate_quadrature", rates.rate_rrs_quadrature(scene, rel_tol=cfg.rel_tol, element_count=n).rate),
        ("rate_upper", _try(lambda: rates.rate_rrs_upper(
            scene, exclusion_band=cfg.exclusion_band or None, rel_tol=cfg.rel_tol, element_count=n).rate)),
        ("snr_exact", exact.snr),
        ("snr_cauchy_bound", em_model.cauchy_snr_bound(scene)),
    ])


def cmd_power(cfg, args):
    model = cfg.power_model()
    scene = cfg.scene()
    n_r = cfg.rrs_count if cfg.rrs_count is not None else scene.surface.element_count
    n_p = cfg.pa_count if cfg.pa_count is not None else scene.require_array().element_count
    pr, pp = power.power_rrs(model, n_r), power.power_pa(model, n_p)
    _print([
        ("rrs_elements", n_r),
        ("power_rrs_w", pr.watts),
        ("rrs_over_budget", pr.exceeds_budget),
        ("pa_elements", n_p),
        ("power_pa_w", pp.watts),
        ("pa_over_budget", pp.exceeds_budget),
        ("l_pw", _try(lambda: power.element_power_ratio(model))),
        ("group_size", model.group_size),
    ])


def cmd_crossover(cfg, args):
    rep = power.crossover_rates(cfg.scene(), cfg.power_model(), tol=cfg.solver_tol)
    interval = "empty" if rep.rrs_wins_interval is None else "[{:.6g}, {:.6g}]".format(*rep.rrs_wins_interval)
    _print([
        ("l_pw", rep.l_pw),
        ("group_size", rep.group_size),
        ("c_min", rep.c_min),
        ("c_thr", rep.c_thr),
        ("g_min", rep.g_min),
        ("g_min_rate", rep.g_min_rate),
        ("c_e1", "none" if rep.c_e1 is None else rep.c_e1),
        ("c_e2", "none" if rep.c_e2 is None else rep.c_e2),
        ("rrs_wins_interval", interval),
    ])


def cmd_verdict(cfg, args):
    v = power.verdict(cfg.target_rate(), cfg.scene(), cfg.power_model(), rel_tol=cfg.rel_tol)
    _print([
        ("rate", v.rate),
        ("outcome", v.outcome),
        ("rrs_elements", v.rrs_count),
        ("pa_elements", v.pa_count),
        ("power_rrs_w", v.power_rrs),
        ("power_pa_w", v.power_pa),
        ("element_ratio", v.ratio),
        ("l_pw", v.l_pw),
        ("rrs_sizing", v.rrs_method),
        ("pa_sizing", v.pa_method),
        ("over_budget", ",".join(v.over_budget) or "none"),
    ])


def cmd_sweep(cfg, args):
    table = run_sweep(cfg)
    out = args.out or cfg.output
    if out:
        path = Path(out)
        if path.suffix.lower() != ".csv":
            path.mkdir(parents=True, exist_ok=True)
            path = path / f"sweep_{cfg.quantity}_{cfg.sweep.key}.csv"
        table.to_csv(path)
        print(path)
    else:
        sys.stdout.write(table.to_csv())


def cmd_repro(cfg, args):
    out = args.out or cfg.output or "."
    for fig in args.figures:
        for path in repro_figure(fig, out, cfg):
            print(path)


COMMANDS = {
    "rate-rrs": (cmd_rate_rrs, "surface rate: quadrature, exact sum, far-field bound"),
    "rate-pa": (cmd_rate_pa, "phased-array rate: quadrature, exact sum, far-field form"),
    "bounds": (cmd_bounds, "lower/upper rate bounds and the Cauchy SNR bound"),
    "power": (cmd_power, "power draw of both technologies at the configured sizes"),
    "crossover": (cmd_crossover, "rates where both technologies draw equal power"),
    "verdict": (cmd_verdict, "size both for the target rate and compare power"),
    "sweep": (cmd_sweep, "evaluate a quantity along the configured sweep axis"),
    "repro": (cmd_repro, "regenerate figure data (fig2a, fig2b, fig2c)"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    common.add_argument("--out", help="output directory (or .csv path for sweep)")
    common.add_argument("--tol", type=float, help="relative quadrature tolerance")

    parser = argparse.ArgumentParser(prog="rrsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "repro":
            p.add_argument("figures", nargs="+", choices=["fig2a", "fig2b", "fig2c"])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        COMMANDS[args.command][0](cfg, args)
    except RrsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
