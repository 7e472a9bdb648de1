"""Flat ``key = value`` run configuration.

Every key has a default taken from the reference scenario. Powers may be
given in dBm with a ``_dbm`` suffix, angles in degrees with ``_deg``, and the
carrier as ``frequency_ghz``; everything is converted to SI at parse time.
A single sweep axis is declared as ``sweep.<key> = start:stop:points[:lin|log]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .errors import ConfigError
from .geometry import (
    DEFAULT_FREQUENCY_GHZ,
    DEFAULT_WAVELENGTH,
    SPEED_OF_LIGHT,
    ArrayGeometry,
    FeedModel,
    Scene,
    SurfaceGeometry,
    UePlacement,
    dbm_to_watt,
)
from .power import PowerModel

POWER_KEYS = (
    "tx_power", "noise_power", "diode_power", "converter_power",
    "fpga_power", "shifter_power", "max_power",
)
ANGLE_KEYS = ("ue_zenith", "ue_azimuth")
INT_KEYS = ("rrs_m", "rrs_n", "pa_m", "pa_n", "diodes_per_element", "group_size")


@dataclass(frozen=True)
class SweepAxis:
    key: str
    start: float
    stop: float
    points: int
    scale: str = "lin"

    def __post_init__(self):
        if self.points < 1:
            raise ConfigError(f"sweep over {self.key!r} needs at least one point")
        if self.scale not in ("lin", "log"):
            raise ConfigError(f"sweep scale must be 'lin' or 'log', got {self.scale!r}")
        if self.scale == "log" and not (self.start > 0 and self.stop > 0):
            raise ConfigError("log sweeps need positive endpoints")

    def values(self):
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    def text(self):
        return f"{self.start!r}:{self.stop!r}:{self.points}:{self.scale}"


@dataclass(frozen=True)
class RunConfig:
    # carrier
    frequency_ghz: float = DEFAULT_FREQUENCY_GHZ
    exact_wavelength: bool = False
    wavelength: float = DEFAULT_WAVELENGTH
    # UE and link budget
    ue_range: float = 50.0
    ue_zenith: float = math.pi / 6
    ue_azimuth: float = math.pi / 4
    ue_gain: float = 1.0
    tx_power: float = dbm_to_watt(43.0)
    noise_power: float = dbm_to_watt(-96.0)
    # feed and surface
    feed_distance: float = 0.15
    feed_gain_exponent: float = 5.0
    rrs_m: int = 100
    rrs_n: int = 100
    rrs_dy: float = DEFAULT_WAVELENGTH / 6
    rrs_dz: float = DEFAULT_WAVELENGTH / 6
    refraction_amplitude: float = 0.8
    rrs_count: float | None = None
    # phased array
    pa_m: int = 64
    pa_n: int = 64
    pa_dy: float = DEFAULT_WAVELENGTH / 2
    pa_dz: float = DEFAULT_WAVELENGTH / 2
    element_gain: float = 1.0
    pa_count: float | None = None
    # power model
    diode_power: float = 5e-6
    diodes_per_element: int = 1
    converter_power: float = 5e-4
    group_size: int = 1
    fpga_power: float = 5.0
    shifter_power: float = 0.1
    max_power: float = 250.0
    min_rate: float = 20.0
    # run control
    rate: float | None = None
    quantity: str = "rate_rrs_quadrature"
    output: str | None = None
    rel_tol: float = 1e-8
    solver_tol: float = 1e-9
    exclusion_band: float = 1e-3
    sweep: SweepAxis | None = field(default=None)

    def scene(self):
        k_r = self.rrs_m / self.rrs_n
        m_r, n_r = self.rrs_m, self.rrs_n
        if self.rrs_count is not None:
            n_r = max(1, round(math.sqrt(self.rrs_count / k_r)))
            m_r = max(1, round(k_r * n_r))
        k_p = self.pa_m / self.pa_n
        m_p, n_p = self.pa_m, self.pa_n
        if self.pa_count is not None:
            n_p = max(1, round(math.sqrt(self.pa_count / k_p)))
            m_p = max(1, round(k_p * n_p))
        return Scene(
            feed=FeedModel(self.feed_gain_exponent, self.feed_distance),
            surface=SurfaceGeometry(m_r, n_r, self.rrs_dy, self.rrs_dz, self.refraction_amplitude),
            ue=UePlacement(self.ue_range, self.ue_zenith, self.ue_azimuth, self.ue_gain),
            tx_power=self.tx_power,
            noise_power=self.noise_power,
            wavelength=self.wavelength,
            array=ArrayGeometry(m_p, n_p, self.pa_dy, self.pa_dz, self.element_gain),
        )

    def power_model(self):
        return PowerModel(
            diode_power=self.diode_power,
            diodes_per_element=self.diodes_per_element,
            converter_power=self.converter_power,
            group_size=self.group_size,
            fpga_power=self.fpga_power,
            shifter_power=self.shifter_power,
            max_power=self.max_power,
            min_rate=self.min_rate,
        )

    def target_rate(self):
        return self.min_rate if self.rate is None else self.rate

    def at(self, key, value):
        """Copy with one key replaced (used by sweeps)."""
        if key in INT_KEYS:
            value = int(round(value))
        return replace(self, **{key: value, "sweep": None})


_FIELDS = {f.name: f for f in fields(RunConfig)}
NUMERIC_KEYS = tuple(
    name for name in _FIELDS
    if name not in ("exact_wavelength", "quantity", "output", "sweep")
)


def _base_name(key):
    if key.endswith("_dbm") and key[:-4] in POWER_KEYS:
        return key[:-4]
    if key.endswith("_deg") and key[:-4] in ANGLE_KEYS:
        return key[:-4]
    return key


def _to_bool(text, line, key):
    low = text.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}", line, key)


def _to_number(text, line, key):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}", line, key) from None


def _parse_sweep(key, text, line):
    parts = [p.strip() for p in text.split(":")]
    if len(parts) not in (3, 4):
        raise ConfigError(f"sweep.{key}: expected start:stop:points[:lin|log]", line, key)
    start = _to_number(parts[0], line, key)
    stop = _to_number(parts[1], line, key)
    try:
        points = int(parts[2])
    except ValueError:
        raise ConfigError(f"sweep.{key}: point count must be an integer", line, key) from None
    scale = parts[3] if len(parts) == 4 else "lin"
    try:
        return SweepAxis(key, start, stop, points, scale)
    except ConfigError as exc:
        raise ConfigError(str(exc), line, key) from None


def parse_config(text, overrides=()):
    """Parse a config document (plus ``key=value`` overrides) into a validated RunConfig.

    Unknown keys, duplicate keys, a key given both as a value and as a sweep
    axis, and malformed values are rejected with the offending line number.
    Overrides replace document values for the same key.
    """
    entries = {}
    sweeps = {}
    lines = [(i, raw) for i, raw in enumerate(text.splitlines(), start=1)]
    lines += [(None, o) for o in overrides]
    for lineno, raw in lines:
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'key = value', got {body!r}", lineno)
        key, value = (s.strip() for s in body.split("=", 1))
        if not key:
            raise ConfigError("empty key", lineno)
        if key.startswith("sweep."):
            base = key[len("sweep."):]
            if lineno is None:
                entries = {k: v for k, v in entries.items() if _base_name(k) != base}
            sweeps[base] = (value, lineno)
            continue
        if lineno is None:
            # an override replaces the document's value whatever unit it used
            entries = {k: v for k, v in entries.items() if _base_name(k) != _base_name(key)}
            sweeps.pop(_base_name(key), None)
        elif key in entries:
            raise ConfigError(f"duplicate key {key!r}", lineno, key)
        entries[key] = (value, lineno)

    values = {}
    seen_units = {}
    for key, (text_value, lineno) in entries.items():
        name = key
        if key.endswith("_dbm") and key[:-4] in POWER_KEYS:
            name = key[:-4]
            number = dbm_to_watt(_to_number(text_value, lineno, key))
        elif key.endswith("_deg") and key[:-4] in ANGLE_KEYS:
            name = key[:-4]
            number = math.radians(_to_number(text_value, lineno, key))
        elif key in _FIELDS and key != "sweep":
            number = None
        else:
            raise ConfigError(f"unknown key {key!r}", lineno, key)
        if name in seen_units:
            raise ConfigError(f"{name!r} given twice ({seen_units[name]} and {key})", lineno, key)
        seen_units[name] = key
        if number is None:
            number = _convert(name, text_value, lineno)
        values[name] = (number, lineno)

    sweep = None
    if len(sweeps) > 1:
        raise ConfigError(f"only one sweep axis allowed, got {sorted(sweeps)}", max(l or 0 for _, l in sweeps.values()))
    for key, (text_value, lineno) in sweeps.items():
        if key not in NUMERIC_KEYS:
            raise ConfigError(f"cannot sweep {key!r}", lineno, key)
        if key in values:
            raise ConfigError(f"{key!r} has both a fixed value and a sweep axis", lineno, key)
        sweep = _parse_sweep(key, text_value, lineno)

    kwargs = {name: v for name, (v, _) in values.items()}
    if "wavelength" not in kwargs and ("frequency_ghz" in kwargs or kwargs.get("exact_wavelength")):
        kwargs["wavelength"] = SPEED_OF_LIGHT / (kwargs.get("frequency_ghz", DEFAULT_FREQUENCY_GHZ) * 1e9)
    lam = kwargs.get("wavelength", DEFAULT_WAVELENGTH)
    kwargs.setdefault("rrs_dy", lam / 6)
    kwargs.setdefault("rrs_dz", lam / 6)
    kwargs.setdefault("pa_dy", lam / 2)
    kwargs.setdefault("pa_dz", lam / 2)
    kwargs["sweep"] = sweep
    cfg = RunConfig(**kwargs)
    _validate(cfg, {name: ln for name, (_, ln) in values.items()})
    return cfg


def _convert(name, text, lineno):
    if name == "exact_wavelength":
        return _to_bool(text, lineno, name)
    if name in ("rate", "rrs_count", "pa_count", "output") and text.lower() in ("none", ""):
        return None
    if name in ("quantity", "output"):
        return text
    number = _to_number(text, lineno, name)
    if name in INT_KEYS:
        if number != int(number):
            raise ConfigError(f"{name}: expected an integer, got {text!r}", lineno, name)
        return int(number)
    return number


_POSITIVE = (
    "frequency_ghz", "wavelength", "ue_range", "ue_gain", "noise_power", "feed_distance",
    "rrs_dy", "rrs_dz", "pa_dy", "pa_dz", "element_gain", "rel_tol", "solver_tol",
    "rrs_m", "rrs_n", "pa_m", "pa_n", "group_size",
)
_NONNEGATIVE = (
    "tx_power", "feed_gain_exponent", "diode_power", "converter_power", "fpga_power",
    "shifter_power", "max_power", "min_rate", "diodes_per_element", "exclusion_band",
)


def _validate(cfg, lines):
    for name in _POSITIVE:
        if not getattr(cfg, name) > 0:
            raise ConfigError(f"{name} must be positive", lines.get(name), name)
    for name in _NONNEGATIVE:
        if not getattr(cfg, name) >= 0:
            raise ConfigError(f"{name} must be nonnegative", lines.get(name), name)
    if not 0 < cfg.refraction_amplitude <= 1:
        raise ConfigError("refraction_amplitude must lie in (0, 1]", lines.get("refraction_amplitude"))
    for name in ("rrs_count", "pa_count"):
        v = getattr(cfg, name)
        if v is not None and not v >= 1:
            raise ConfigError(f"{name} must be >= 1", lines.get(name), name)
    from .sweep import QUANTITIES

    if cfg.quantity not in QUANTITIES:
        raise ConfigError(f"unknown quantity {cfg.quantity!r}", lines.get("quantity"), "quantity")
    try:
        cfg.scene()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def emit_config(cfg):
    """Render a config so that ``parse_config(emit_config(c)) == c``."""
    out = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        if f.name == "sweep":
            if value is not None:
                out.append(f"sweep.{value.key} = {value.text()}")
            continue
        if value is None:
            if cfg.sweep is not None and cfg.sweep.key == f.name:
                continue
            out.append(f"{f.name} = none")
        elif f.name == "exact_wavelength":
            out.append(f"{f.name} = {'true' if value else 'false'}")
        elif isinstance(value, str):
            out.append(f"{f.name} = {value}")
        elif cfg.sweep is not None and cfg.sweep.key == f.name:
            continue
        else:
            out.append(f"{f.name} = {value!r}")
    return "\n".join(out) + "\n"
