"""Flat JSON configuration: defaults, validation, and object builders.

Every knob of the model lives in one flat dictionary so that a config
file round-trips losslessly and a sweep can override any single key.
Defaults follow the reference scenario: a 300 m link, 10 relay
positions, p_move 0.98, BPSK fit constants, L = 1080 symbols, and the
energy range 1e-7..2e-4 J.  The path-loss exponent (3.5) and noise
density (4.5e-12 J) are documented package defaults, not reference
values; they are chosen so that the qualitative curve shapes (the
energy/throughput trade-off and the time-sharing advantage) appear
inside the default energy range.
"""

import copy
import json

from . import mobility, phy
from .chain import LinkConfig
from .protocols import SleepConfig, TimeShareConfig

import numpy as np


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


DEFAULTS = {
    # geometry / mobility
    "geometry": "1d",            # "1d" or "2d"
    "d": 300.0,                  # source-destination distance, meters (1d)
    "n_positions": 10,           # relay positions (1d)
    "nx": 10,                    # grid columns (2d)
    "ny": 1,                     # grid rows (2d)
    "delta": 30.0,               # grid scale, meters (2d)
    "source_cell": [1, 1],       # source grid cell (2d)
    "dest_cell": [10, 1],        # destination grid cell (2d)
    "p_move": 0.98,              # per-step move probability
    "steps_per_slot": 1,         # walk steps per slot (speed)
    # PHY
    "per_model": "rayleigh-uncoded",
    "a_n": 67.7328,
    "g_n": 0.9819,
    "gamma_pn_db": 6.3281,       # SNR threshold, dB (stored linear internally)
    "bits_per_symbol": 1,        # BPSK
    "packet_length": 1080,       # channel symbols per packet
    "n0": 4.5e-12,               # noise spectral density, J (package default)
    "alpha": 3.5,                # path-loss exponent (package default)
    "antenna_gain": 1.0,
    "e_max": 2e-4,               # peak symbol energy, J
    # operating point
    "e_t": 1.8e-5,               # symbol energy, J (e_s = e_r = e_t)
    "relay_position": 5,         # frozen-relay scenarios
    # time sharing
    "e_low": 1.0e-7,
    "e_high": 1.8e-5,
    "q": 0.5,
    "q_points": 21,
    # sleep mode
    "p_sleep": 0.5,
    "p_sleep_grid": [0.0, 0.3, 0.6, 0.9],
    # multi-relay
    "t_max": 400,
    "m_relays": 3,
    "lambda": 5.0,
    # energy sweep
    "sweep_scale": "log",        # "log" or "linear"
    "sweep_start": 1e-7,
    "sweep_stop": 2e-4,
    "sweep_points": 40,
    "s_list": [1, 2, 3, 4],      # speeds for trade-off curves
    # simulation
    "scenario": "single-level",  # single-level | time-share | sleep
    "slots": 1_000_000,
    "warmup": 10_000,
    "seed": 12345,
    "n_batches": 40,
}


def default_config():
    return copy.deepcopy(DEFAULTS)


def load_config(path=None, overrides=None):
    """Merge defaults, an optional JSON file, and override pairs."""
    cfg = default_config()
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a JSON object")
        _merge(cfg, data, source=path)
    if overrides:
        _merge(cfg, overrides, source="--set")
    return cfg


def _merge(cfg, data, source):
    for key, value in data.items():
        if key not in cfg:
            raise ConfigError(f"{source}: unknown config key {key!r}")
        if isinstance(cfg[key], (int, float)) and not isinstance(cfg[key], bool) \
                and isinstance(value, str):
            try:
                value = type(cfg[key])(float(value)) if isinstance(cfg[key], int) \
                    else float(value)
            except ValueError:
                raise ConfigError(f"{source}: {key}={value!r} is not numeric") \
                    from None
        cfg[key] = value


def parse_override(pair):
    """Parse a KEY=VALUE command-line override (JSON value if it parses)."""
    if "=" not in pair:
        raise ConfigError(f"override {pair!r} must have the form KEY=VALUE")
    key, raw = pair.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def dump_config(cfg):
    return json.dumps(cfg, indent=2, sort_keys=True) + "\n"


def validate(cfg):
    """All invariant violations, each as 'key: message'.  Empty when clean."""
    out = []

    def bad(key, msg):
        out.append(f"{key}: {msg}")

    if cfg["geometry"] not in ("1d", "2d"):
        bad("geometry", f"must be '1d' or '2d', got {cfg['geometry']!r}")
    if cfg["d"] <= 0:
        bad("d", "distance must be positive")
    if cfg["n_positions"] < 1:
        bad("n_positions", "need at least one relay position")
    if cfg["geometry"] == "2d":
        if cfg["nx"] < 1 or cfg["ny"] < 1:
            bad("nx", "grid must be non-empty")
        if cfg["delta"] <= 0:
            bad("delta", "grid scale must be positive")
        for key in ("source_cell", "dest_cell"):
            x, y = cfg[key]
            if not (1 <= x <= cfg["nx"] and 1 <= y <= cfg["ny"]):
                bad(key, f"cell {(x, y)} outside {cfg['nx']}x{cfg['ny']} grid")
    if not (0.0 <= cfg["p_move"] <= 1.0):
        bad("p_move", "must lie in [0,1]")
    if cfg["steps_per_slot"] < 0:
        bad("steps_per_slot", "must be non-negative")
    if cfg["per_model"] not in phy.PER_MODELS:
        bad("per_model", f"unknown model {cfg['per_model']!r}")
    for key in ("a_n", "g_n", "n0", "alpha", "antenna_gain", "e_max"):
        if cfg[key] <= 0:
            bad(key, "must be positive")
    if cfg["bits_per_symbol"] < 1:
        bad("bits_per_symbol", "must be >= 1")
    if cfg["packet_length"] < 1:
        bad("packet_length", "must be >= 1")
    for key in ("e_t", "e_low", "e_high"):
        if not (0 < cfg[key] <= cfg["e_max"]):
            bad(key, f"must lie in (0, e_max={cfg['e_max']}]")
    if cfg["e_low"] > cfg["e_high"]:
        bad("e_low", "must not exceed e_high")
    if not (0.0 <= cfg["q"] <= 1.0):
        bad("q", "out of [0,1]")
    if cfg["q_points"] < 1:
        bad("q_points", "need at least one grid point")
    if not (0.0 <= cfg["p_sleep"] < 1.0):
        bad("p_sleep", "must lie in [0,1)")
    for p in cfg["p_sleep_grid"]:
        if not (0.0 <= p < 1.0):
            bad("p_sleep_grid", f"entry {p} outside [0,1)")
    n = n_positions(cfg)
    if not (1 <= cfg["relay_position"] <= n):
        bad("relay_position", f"out of range 1..{n}")
    if cfg["t_max"] < 2:
        bad("t_max", "horizon must be >= 2 slots")
    if cfg["m_relays"] < 1:
        bad("m_relays", "need at least one relay")
    if cfg["lambda"] <= 0:
        bad("lambda", "mean relay count must be positive")
    if cfg["sweep_scale"] not in ("log", "linear"):
        bad("sweep_scale", "must be 'log' or 'linear'")
    if cfg["sweep_points"] < 1:
        bad("sweep_points", "sweep grid must be non-empty")
    if not (0 < cfg["sweep_start"] <= cfg["sweep_stop"]):
        bad("sweep_start", "need 0 < sweep_start <= sweep_stop")
    if cfg["sweep_stop"] > cfg["e_max"]:
        bad("sweep_stop", f"exceeds e_max={cfg['e_max']}")
    if not cfg["s_list"] or any(s < 0 for s in cfg["s_list"]):
        bad("s_list", "must be a non-empty list of non-negative speeds")
    if cfg["scenario"] not in ("single-level", "time-share", "sleep"):
        bad("scenario", f"unknown scenario {cfg['scenario']!r}")
    if not (0 <= cfg["warmup"] < cfg["slots"]):
        bad("slots", "need slots > warmup >= 0")
    if cfg["n_batches"] < 1:
        bad("n_batches", "need at least one batch")
    return out


def n_positions(cfg):
    if cfg["geometry"] == "2d":
        return cfg["nx"] * cfg["ny"]
    return cfg["n_positions"]


def build_geometry(cfg):
    if cfg["geometry"] == "2d":
        return mobility.Geometry2D(
            nx=cfg["nx"], ny=cfg["ny"], delta=cfg["delta"],
            source=tuple(cfg["source_cell"]), dest=tuple(cfg["dest_cell"]))
    return mobility.Geometry1D(d=cfg["d"], n=cfg["n_positions"])


def build_walk(cfg, geom=None, steps_per_slot=None):
    geom = geom or build_geometry(cfg)
    s = cfg["steps_per_slot"] if steps_per_slot is None else steps_per_slot
    if cfg["geometry"] == "2d":
        return mobility.build_walk_2d(geom, cfg["p_move"], steps_per_slot=s)
    return mobility.build_walk_1d(geom, cfg["p_move"], steps_per_slot=s)


def build_mcs(cfg):
    return phy.McsParams.from_db(
        a_n=cfg["a_n"], g_n=cfg["g_n"], gamma_pn_db=cfg["gamma_pn_db"],
        b=cfg["bits_per_symbol"], length=cfg["packet_length"])


def build_channel(cfg):
    return phy.ChannelParams(n0=cfg["n0"], alpha=cfg["alpha"],
                             gain=cfg["antenna_gain"], e_max=cfg["e_max"])


def link_config(cfg, e_t=None, steps_per_slot=None):
    geom = build_geometry(cfg)
    mcs = build_mcs(cfg)
    e = cfg["e_t"] if e_t is None else e_t
    return LinkConfig(
        geom=geom, walk=build_walk(cfg, geom, steps_per_slot), mcs_s=mcs,
        mcs_r=mcs, chan=build_channel(cfg), e_s=e, e_r=e,
        per_model=cfg["per_model"])


def timeshare_config(cfg, q=None):
    geom = build_geometry(cfg)
    mcs = build_mcs(cfg)
    return TimeShareConfig(
        geom=geom, walk=build_walk(cfg, geom), mcs_s=mcs, mcs_r=mcs,
        chan=build_channel(cfg), e_low=cfg["e_low"], e_high=cfg["e_high"],
        q=cfg["q"] if q is None else float(q), per_model=cfg["per_model"])


def sleep_config(cfg, p_sleep=None):
    p = cfg["p_sleep"] if p_sleep is None else float(p_sleep)
    return SleepConfig(link=link_config(cfg), p_sleep=p)


def sweep_grid(cfg):
    start, stop, points = cfg["sweep_start"], cfg["sweep_stop"], cfg["sweep_points"]
    if points == 1:
        return np.array([start])
    if cfg["sweep_scale"] == "log":
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)
