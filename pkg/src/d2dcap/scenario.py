"""Experiment configuration: YAML ingestion, validation, defaulting.

A scenario bundles the radio and cell parameters with the sweep axes,
trial counts and output destination for one CLI run.  Config files are
YAML with nested sections (see `DEFAULT_YAML` for the full schema); CLI
flags override file values.  Unknown keys and out-of-range values raise
ScenarioError naming the offending field.

The preset used when no file is given is the urban single-cell parameter
set in interference-limited form (noise_mode "zero"), which is what the
standard sweeps assume; the resolved choice is always embedded in emitted
artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from .propagation import CellConfig, PathLossModel, RadioConfig

__all__ = ["ScenarioError", "SweepAxis", "Scenario", "load_scenario", "DEFAULT_YAML"]

DEFAULT_YAML = """\
radio:
  bandwidth_hz: 5.0e+6
  noise_density_dbm_hz: -174.0
  bitrate_bps: 2.0e+6
  p_cue_max_mw: 200.0
  p_due_mw: 0.7
  noise_mode: zero          # per-hz | total | zero
  sir_due: null             # null: Shannon threshold for bitrate in bandwidth
  sir_bs: null
  pl_bs:  {exponent: 3.76, intercept_db: -15.3}
  pl_due: {exponent: 3.76, intercept_db: -38.0}
cell:
  r_cell_m: 500.0
  d_min_m: 2.0
  d_max_m: 150.0
sweep: []                   # e.g. [{name: d_cb, start: 0.0, stop: 500.0, steps: 101}]
versus:                     # second axis of the `sweep` command
  name: p_cue_max           # p_cue_max | bitrate
  values: [140.0, 200.0]
sim:
  mode: saturation          # saturation | ppp
  d2d_dist: uniform         # uniform | fixed
  d_fixed: null
  densities: [4.0e-5, 6.0e-5, 8.0e-5, 1.0e-4, 1.2e-4]
  stop_after_failures: 20000
trials: 200
seed: 1
threads: 1
output:
  path: null                # null: stdout
  format: csv               # csv | json
"""


class ScenarioError(ValueError):
    """Configuration rejected; the message names the offending field."""


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


_AXIS_NAMES = ("d_cb", "p_due")
_VERSUS_NAMES = ("p_cue_max", "bitrate")


@dataclass
class Scenario:
    """Fully resolved experiment description."""

    radio: RadioConfig
    cell: CellConfig
    sweep: list[SweepAxis]
    versus_name: str
    versus_values: list[float]
    sim_mode: str
    d2d_dist: str
    d_fixed: float | None
    densities: list[float]
    stop_after_failures: int
    trials: int
    seed: int
    threads: int
    out: str | None
    fmt: str
    # raw keyword dicts kept so sweeps can rebuild configs with re-derived
    # defaults (e.g. Shannon SIR thresholds tracking a swept bitrate)
    radio_kwargs: dict = field(default_factory=dict, repr=False)

    def axis(self, name: str, default: SweepAxis) -> SweepAxis:
        for ax in self.sweep:
            if ax.name == name:
                return ax
        return default

    def radio_with(self, **overrides) -> RadioConfig:
        kwargs = dict(self.radio_kwargs)
        kwargs.update(overrides)
        return _build_radio(kwargs)

    def resolved_config(self) -> dict:
        """Flat, ordered view of everything that determines the results.

        Output path, format and thread count are excluded on purpose: the
        emitted bytes must not depend on them.
        """
        r, c = self.radio, self.cell
        cfg = {
            "radio.bandwidth_hz": r.bandwidth_hz,
            "radio.noise_density_dbm_hz": r.noise_density_dbm_hz,
            "radio.bitrate_bps": r.bitrate_bps,
            "radio.p_cue_max_mw": r.p_cue_max_mw,
            "radio.p_due_mw": r.p_due_mw,
            "radio.sir_due": r.sir_due,
            "radio.sir_bs": r.sir_bs,
            "radio.noise_mode": r.noise_mode,
            "radio.pl_bs.exponent": r.pl_bs.exponent,
            "radio.pl_bs.intercept_db": r.pl_bs.intercept_db,
            "radio.pl_due.exponent": r.pl_due.exponent,
            "radio.pl_due.intercept_db": r.pl_due.intercept_db,
            "cell.r_cell_m": c.r_cell_m,
            "cell.d_min_m": c.d_min_m,
            "cell.d_max_m": c.d_max_m,
            "sweep": ";".join(
                f"{a.name}:{a.start:g}:{a.stop:g}:{a.steps}" for a in self.sweep
            ),
            "versus.name": self.versus_name,
            "versus.values": ",".join(f"{v:g}" for v in self.versus_values),
            "sim.mode": self.sim_mode,
            "sim.d2d_dist": self.d2d_dist,
            "sim.d_fixed": self.d_fixed,
            "sim.densities": ",".join(f"{v:g}" for v in self.densities),
            "sim.stop_after_failures": self.stop_after_failures,
            "trials": self.trials,
            "seed": self.seed,
        }
        return cfg


def _require(mapping: dict, allowed: tuple[str, ...], where: str):
    for key in mapping:
        if key not in allowed:
            raise ScenarioError(f"unknown config key {where}.{key}")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where} must be a number, got {value!r}")
    return float(value)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{where} must be an integer, got {value!r}")
    return value


def _build_pl(data: dict, where: str) -> PathLossModel:
    _require(data, ("exponent", "intercept_db"), where)
    try:
        return PathLossModel(
            exponent=_number(data.get("exponent", 3.76), f"{where}.exponent"),
            intercept_db=_number(data.get("intercept_db", -38.0), f"{where}.intercept_db"),
        )
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


def _build_radio(kwargs: dict) -> RadioConfig:
    try:
        return RadioConfig(**kwargs)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _radio_kwargs(data: dict) -> dict:
    _require(
        data,
        (
            "bandwidth_hz",
            "noise_density_dbm_hz",
            "bitrate_bps",
            "p_cue_max_mw",
            "p_due_mw",
            "noise_mode",
            "sir_due",
            "sir_bs",
            "pl_bs",
            "pl_due",
        ),
        "radio",
    )
    kwargs: dict = {}
    for name in (
        "bandwidth_hz",
        "noise_density_dbm_hz",
        "bitrate_bps",
        "p_cue_max_mw",
        "p_due_mw",
    ):
        if name in data:
            kwargs[name] = _number(data[name], f"radio.{name}")
    for name in ("sir_due", "sir_bs"):
        if name in data and data[name] is not None:
            kwargs[name] = _number(data[name], f"radio.{name}")
    if "noise_mode" in data:
        kwargs["noise_mode"] = data["noise_mode"]
    if "pl_bs" in data:
        kwargs["pl_bs"] = _build_pl(data["pl_bs"] or {}, "radio.pl_bs")
    if "pl_due" in data:
        kwargs["pl_due"] = _build_pl(data["pl_due"] or {}, "radio.pl_due")
    return kwargs


def _build_cell(data: dict) -> CellConfig:
    _require(data, ("r_cell_m", "d_min_m", "d_max_m"), "cell")
    kwargs = {k: _number(v, f"cell.{k}") for k, v in data.items()}
    try:
        return CellConfig(**kwargs)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _build_axes(entries, cell: CellConfig) -> list[SweepAxis]:
    axes = []
    for n, entry in enumerate(entries or []):
        where = f"sweep[{n}]"
        if not isinstance(entry, dict):
            raise ScenarioError(f"{where} must be a mapping")
        _require(entry, ("name", "start", "stop", "steps"), where)
        name = entry.get("name")
        if name not in _AXIS_NAMES:
            raise ScenarioError(f"{where}.name must be one of {_AXIS_NAMES}, got {name!r}")
        steps = _integer(entry.get("steps", 1), f"{where}.steps")
        if steps < 1:
            raise ScenarioError(f"{where}.steps must be >= 1, got {steps}")
        start = _number(entry.get("start", 0.0), f"{where}.start")
        stop = _number(entry.get("stop", start), f"{where}.stop")
        if name == "d_cb" and not (0.0 <= start <= stop <= cell.r_cell_m):
            raise ScenarioError(
                f"{where}: d_cb range [{start}, {stop}] outside [0, {cell.r_cell_m}]"
            )
        axes.append(SweepAxis(name=name, start=start, stop=stop, steps=steps))
    return axes


def load_scenario(
    path: str | None = None,
    *,
    seed: int | None = None,
    trials: int | None = None,
    threads: int | None = None,
    out: str | None = None,
    fmt: str | None = None,
) -> Scenario:
    """Build a Scenario from a YAML file (or the built-in preset) plus overrides."""
    data = yaml.safe_load(DEFAULT_YAML)
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                user = yaml.safe_load(fh)
        except OSError as exc:
            raise ScenarioError(f"cannot read config file {path}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ScenarioError(f"config file {path} is not valid YAML: {exc}") from exc
        if user is None:
            user = {}
        if not isinstance(user, dict):
            raise ScenarioError("config root must be a mapping")
        _require(
            user,
            ("radio", "cell", "sweep", "versus", "sim", "trials", "seed", "threads", "output"),
            "config",
        )
        for section in ("radio", "cell", "versus", "sim", "output"):
            if section in user:
                if not isinstance(user[section], dict):
                    raise ScenarioError(f"config.{section} must be a mapping")
                data[section].update(user[section])
        for scalar in ("trials", "seed", "threads"):
            if scalar in user:
                data[scalar] = user[scalar]
        if "sweep" in user:
            data["sweep"] = user["sweep"]

    radio_kwargs = _radio_kwargs(data["radio"])
    radio = _build_radio(radio_kwargs)
    cell = _build_cell(data["cell"])
    axes = _build_axes(data["sweep"], cell)

    versus = data["versus"]
    _require(versus, ("name", "values"), "versus")
    versus_name = versus.get("name", "p_cue_max")
    if versus_name not in _VERSUS_NAMES:
        raise ScenarioError(
            f"versus.name must be one of {_VERSUS_NAMES}, got {versus_name!r}"
        )
    versus_values = [
        _number(v, "versus.values") for v in (versus.get("values") or [])
    ]
    if not versus_values:
        raise ScenarioError("versus.values must not be empty")

    sim = data["sim"]
    _require(sim, ("mode", "d2d_dist", "d_fixed", "densities", "stop_after_failures"), "sim")
    sim_mode = sim.get("mode", "saturation")
    if sim_mode not in ("saturation", "ppp"):
        raise ScenarioError(f"sim.mode must be saturation or ppp, got {sim_mode!r}")
    d2d_dist = sim.get("d2d_dist", "uniform")
    if d2d_dist not in ("uniform", "fixed"):
        raise ScenarioError(f"sim.d2d_dist must be uniform or fixed, got {d2d_dist!r}")
    d_fixed = sim.get("d_fixed")
    if d_fixed is not None:
        d_fixed = _number(d_fixed, "sim.d_fixed")
        if not cell.d_min_m <= d_fixed <= cell.d_max_m:
            raise ScenarioError(
                f"sim.d_fixed must lie in [{cell.d_min_m}, {cell.d_max_m}], got {d_fixed}"
            )
    elif d2d_dist == "fixed":
        raise ScenarioError("sim.d_fixed is required when sim.d2d_dist is fixed")
    densities = [_number(v, "sim.densities") for v in (sim.get("densities") or [])]
    if sim_mode == "ppp" and not densities:
        raise ScenarioError("sim.densities must not be empty in ppp mode")
    if any(v <= 0 for v in densities):
        raise ScenarioError("sim.densities must all be > 0")
    stop_after = _integer(sim.get("stop_after_failures", 20000), "sim.stop_after_failures")
    if stop_after < 1:
        raise ScenarioError("sim.stop_after_failures must be >= 1")

    output = data["output"]
    _require(output, ("path", "format"), "output")

    scenario = Scenario(
        radio=radio,
        cell=cell,
        sweep=axes,
        versus_name=versus_name,
        versus_values=versus_values,
        sim_mode=sim_mode,
        d2d_dist=d2d_dist,
        d_fixed=d_fixed,
        densities=densities,
        stop_after_failures=stop_after,
        trials=trials if trials is not None else _integer(data["trials"], "trials"),
        seed=seed if seed is not None else _integer(data["seed"], "seed"),
        threads=threads if threads is not None else _integer(data["threads"], "threads"),
        out=out if out is not None else output.get("path"),
        fmt=fmt if fmt is not None else output.get("format", "csv"),
        radio_kwargs=radio_kwargs,
    )
    if scenario.trials < 1:
        raise ScenarioError(f"trials must be >= 1, got {scenario.trials}")
    if scenario.threads < 1:
        raise ScenarioError(f"threads must be >= 1, got {scenario.threads}")
    if scenario.fmt not in ("csv", "json"):
        raise ScenarioError(f"output.format must be csv or json, got {scenario.fmt!r}")
    return scenario
