"""Config-file ingestion for simulations and sweeps.

The format is an INI-style tree of sections.  Either a ``[couplings]`` block
(direct coefficients, the default path) or a ``[geometry]`` block (derived
coefficients) must be used, not both.  Unknown sections or keys are rejected
with the offending name in the message.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from .harness import Axis, RunSettings, SweepSpec
from .params import (CavityGeometry, CouplingCoefficients, ParameterError,
                     SystemParams)


class ConfigError(ValueError):
    """Malformed configuration file or override."""


_SCHEMA = {
    "oscillators": {"omega_m1", "omega_m2", "gamma_m1", "gamma_m2"},
    "couplings": {"g1", "g2", "g3", "g1_1", "g1_2", "g2_1", "g2_2"},
    "geometry": {"length", "reflectivity", "wavelength",
                 "membrane_equilibrium", "light_speed", "normalization"},
    "drive": {"amplitude", "modulation_amplitude", "modulation_frequency",
              "detuning", "kappa"},
    "bath": {"n_thermal"},
    "run": {"horizon", "output_dt", "window_periods", "rtol", "atol",
            "divergence_bound"},
    "sweep": {"axis1", "axis2", "engine", "metrics"},
}

# map config keys to SystemParams constructor fields
_PARAM_KEYS = {
    ("oscillators", "omega_m1"): "omega_m1",
    ("oscillators", "omega_m2"): "omega_m2",
    ("oscillators", "gamma_m1"): "gamma_m1",
    ("oscillators", "gamma_m2"): "gamma_m2",
    ("drive", "amplitude"): "drive",
    ("drive", "modulation_amplitude"): "eta_d",
    ("drive", "modulation_frequency"): "omega_d",
    ("drive", "detuning"): "detuning",
    ("drive", "kappa"): "kappa",
    ("bath", "n_thermal"): "n_thermal",
}


@dataclass
class LoadedConfig:
    params: SystemParams
    run: RunSettings
    sweep: SweepSpec | None = None


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: not a number: {raw!r}") from exc


def _build_couplings(cfg) -> CouplingCoefficients | None:
    has_couplings = cfg.has_section("couplings")
    has_geometry = cfg.has_section("geometry")
    if has_couplings and has_geometry:
        raise ConfigError("use either [couplings] or [geometry], not both")
    if has_geometry:
        sec = dict(cfg.items("geometry"))
        missing = {"length", "reflectivity", "wavelength",
                   "membrane_equilibrium", "normalization"} - sec.keys()
        if missing:
            raise ConfigError(f"[geometry] missing keys: {sorted(missing)}")
        kwargs = {k: _parse_float("geometry", k, v) for k, v in sec.items()}
        normalization = kwargs.pop("normalization")
        geometry = CavityGeometry(**kwargs)
        return SystemParams.from_geometry(geometry, normalization).couplings
    if has_couplings:
        sec = dict(cfg.items("couplings"))
        values = {k: _parse_float("couplings", k, v) for k, v in sec.items()}
        symmetric = {"g1", "g2"} & values.keys()
        per_osc = {"g1_1", "g1_2", "g2_1", "g2_2"} & values.keys()
        if symmetric and per_osc:
            raise ConfigError(
                "[couplings] mix of symmetric (g1, g2) and per-oscillator keys")
        g3 = values.get("g3", 0.0)
        if symmetric:
            return CouplingCoefficients.symmetric(
                g1=values.get("g1", 0.0), g2=values.get("g2", 0.0), g3=g3)
        return CouplingCoefficients(
            g1_1=values.get("g1_1", 0.0), g1_2=values.get("g1_2", 0.0),
            g2_1=values.get("g2_1", 0.0), g2_2=values.get("g2_2", 0.0), g3=g3)
    return None


def _parse_axis(raw: str, which: str) -> Axis:
    parts = raw.split()
    if len(parts) != 4:
        raise ConfigError(
            f"[sweep] {which}: expected 'name min max count', got {raw!r}")
    name, lo, hi, count = parts
    try:
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise ConfigError(f"[sweep] {which}: bad numbers in {raw!r}") from exc
    try:
        return Axis(name=name, start=lo, stop=hi, count=count)
    except ValueError as exc:
        raise ConfigError(f"[sweep] {which}: {exc}") from exc


def _validate_sections(cfg):
    for section in cfg.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        allowed = _SCHEMA[section]
        for key in cfg.options(section):
            if key not in allowed:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")


def _build(cfg: configparser.ConfigParser) -> LoadedConfig:
    _validate_sections(cfg)

    kwargs = {}
    for (section, key), attr in _PARAM_KEYS.items():
        if cfg.has_option(section, key):
            kwargs[attr] = _parse_float(section, key, cfg.get(section, key))
    couplings = _build_couplings(cfg)
    if couplings is not None:
        kwargs["couplings"] = couplings
    try:
        params = SystemParams(**kwargs)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc

    run_kwargs = {}
    if cfg.has_section("run"):
        for key in cfg.options("run"):
            run_kwargs[key] = _parse_float("run", key, cfg.get("run", key))
    if "window_periods" in run_kwargs:
        run_kwargs["window_periods"] = float(run_kwargs["window_periods"])
    try:
        run = RunSettings(**run_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    sweep = None
    if cfg.has_section("sweep"):
        if not cfg.has_option("sweep", "axis1"):
            raise ConfigError("[sweep] requires axis1")
        axis1 = _parse_axis(cfg.get("sweep", "axis1"), "axis1")
        axis2 = None
        if cfg.has_option("sweep", "axis2"):
            axis2 = _parse_axis(cfg.get("sweep", "axis2"), "axis2")
        engine = cfg.get("sweep", "engine", fallback="time").strip()
        metrics_raw = cfg.get("sweep", "metrics", fallback="")
        metrics = tuple(metrics_raw.split()) if metrics_raw.strip() else None
        spec_kwargs = {"axis1": axis1, "axis2": axis2, "engine": engine}
        if metrics:
            spec_kwargs["metrics"] = metrics
        try:
            sweep = SweepSpec(**spec_kwargs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    return LoadedConfig(params=params, run=run, sweep=sweep)


def load_config(path: str, overrides: list[str] | None = None) -> LoadedConfig:
    """Read a config file, apply `section.key=value` overrides, and build the
    parameter, run, and sweep objects."""
    cfg = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            cfg.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    apply_overrides(cfg, overrides or [])
    return _build(cfg)


def default_config() -> configparser.ConfigParser:
    return configparser.ConfigParser()


def apply_overrides(cfg: configparser.ConfigParser, overrides: list[str]):
    """Apply `section.key=value` (or bare `key=value` when unambiguous)."""
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must be key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        if "." in key:
            section, option = key.split(".", 1)
            if section not in _SCHEMA:
                raise ConfigError(f"override names unknown section [{section}]")
            if option not in _SCHEMA[section]:
                raise ConfigError(
                    f"override names unknown key {option!r} in [{section}]")
        else:
            matches = [s for s, keys in _SCHEMA.items() if key in keys]
            if not matches:
                raise ConfigError(f"override names unknown key {key!r}")
            if len(matches) > 1:
                raise ConfigError(
                    f"override key {key!r} is ambiguous across sections "
                    f"{matches}; qualify as section.key")
            section, option = matches[0], key
        if not cfg.has_section(section):
            cfg.add_section(section)
        cfg.set(section, option, value.strip())


def load_overrides_only(overrides: list[str]) -> LoadedConfig:
    """Build a config purely from overrides (defaults elsewhere)."""
    cfg = configparser.ConfigParser()
    apply_overrides(cfg, overrides)
    return _build(cfg)
