"""Scenario definition and loading.

A scenario file is a YAML document mirroring the Scenario type: controller
choice, timing, speed reference, load profile, metrics window, and
optional override blocks for the machine, controller, fuzzy optimizer and
estimator.  Runs are fully deterministic (no seeds anywhere).
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from .dtc import HysteresisState, SpeedPi
from .fuzzy import FuzzyConfig
from .machine import MachineParams


class ScenarioError(ValueError):
    """Invalid or inconsistent scenario configuration."""


@dataclass(frozen=True)
class ControlConfig:
    flux_band: float = 0.012       # [Wb], 2% of the flux reference
    torque_band: float = 0.5       # [N m]
    # Flux reference sized for the 400 V bus: above ~0.7 Wb the inverter
    # runs out of voltage before 1500 rpm (max average |v| ~= vdc/sqrt(3)).
    flux_ref: float = 0.6          # conventional-DTC flux reference [Wb]
    kp: float = 2.0
    ki: float = 20.0
    torque_limit: float = 50.0     # [N m]
    mode: str = "speed"            # "speed" (PI loop) or "torque" (direct ref)
    torque_ref: float = 0.0        # used in "torque" mode [N m]

    def __post_init__(self):
        if self.mode not in ("speed", "torque"):
            raise ScenarioError(f"unknown control mode {self.mode!r}")

    def hysteresis(self) -> HysteresisState:
        return HysteresisState(flux_band=self.flux_band,
                               torque_band=self.torque_band)

    def speed_pi(self) -> SpeedPi:
        return SpeedPi(kp=self.kp, ki=self.ki, torque_limit=self.torque_limit)


@dataclass(frozen=True)
class Scenario:
    name: str = "scenario"
    controller: str = "conventional"   # "conventional" or "fuzzy"
    duration: float = 2.0              # [s]
    dt: float = 50e-6                  # control cycle [s]
    vdc: float = 400.0                 # DC bus [V]
    speed_ref_rpm: float = 1500.0
    load_torque: tuple[tuple[float, float], ...] = ((0.0, 0.0),)
    metrics_window: tuple[float, float] = (1.0, 2.0)
    machine: MachineParams = field(default_factory=MachineParams)
    control: ControlConfig = field(default_factory=ControlConfig)
    fuzzy: FuzzyConfig = field(default_factory=FuzzyConfig)
    estimator_rs: float | None = None  # None -> matched to machine.rs
    fuzzy_update_divisor: int = 1      # optimizer cadence in control cycles
    blowup_bound: float = 1e6

    def __post_init__(self):
        if self.controller not in ("conventional", "fuzzy"):
            raise ScenarioError(f"unknown controller {self.controller!r}")
        if self.duration <= 0 or self.dt <= 0:
            raise ScenarioError("duration and dt must be positive")
        start, end = self.metrics_window
        if not (0.0 <= start < end <= self.duration + 1e-12):
            raise ScenarioError("metrics window must lie within the duration")
        times = [t for t, _ in self.load_torque]
        if times != sorted(times):
            raise ScenarioError("load profile times must be non-decreasing")
        if self.fuzzy_update_divisor < 1:
            raise ScenarioError("fuzzy_update_divisor must be >= 1")

    @property
    def n_cycles(self) -> int:
        return math.ceil(self.duration / self.dt)

    def load_torque_at(self, t: float) -> float:
        torque = 0.0
        for start, value in self.load_torque:
            if t >= start:
                torque = value
            else:
                break
        return torque

    def with_controller(self, controller: str) -> "Scenario":
        d = scenario_to_dict(self)
        d["controller"] = controller
        return scenario_from_dict(d)


def _apply_overrides(defaults: Any, overrides: dict, label: str) -> Any:
    valid = {f.name for f in fields(defaults)}
    unknown = set(overrides) - valid
    if unknown:
        raise ScenarioError(f"unknown {label} keys: {sorted(unknown)}")
    kwargs = {f.name: getattr(defaults, f.name) for f in fields(defaults)}
    kwargs.update(overrides)
    return type(defaults)(**kwargs)


def _normalize_fuzzy(overrides: dict) -> dict:
    out = dict(overrides)
    for key in ("torque_breakpoints", "flux_breakpoints", "output_breakpoints"):
        if key in out:
            out[key] = {lab: tuple(float(v) for v in verts)
                        for lab, verts in out[key].items()}
    if "rule_table" in out:
        out["rule_table"] = {row: tuple(entries)
                             for row, entries in out["rule_table"].items()}
    return out


def scenario_from_dict(doc: dict) -> Scenario:
    doc = copy.deepcopy(doc)
    kwargs: dict[str, Any] = {}
    simple = ("name", "controller", "duration", "dt", "vdc", "speed_ref_rpm",
              "estimator_rs", "fuzzy_update_divisor", "blowup_bound")
    for key in simple:
        if key in doc:
            kwargs[key] = doc.pop(key)
    if "load_torque" in doc:
        kwargs["load_torque"] = tuple(
            (float(t), float(tq)) for t, tq in doc.pop("load_torque"))
    if "metrics_window" in doc:
        start, end = doc.pop("metrics_window")
        kwargs["metrics_window"] = (float(start), float(end))
    try:
        kwargs["machine"] = _apply_overrides(
            MachineParams(), doc.pop("machine", {}), "machine")
        kwargs["control"] = _apply_overrides(
            ControlConfig(), doc.pop("control", {}), "control")
        kwargs["fuzzy"] = _apply_overrides(
            FuzzyConfig(), _normalize_fuzzy(doc.pop("fuzzy", {})), "fuzzy")
    except (TypeError, ValueError) as exc:
        raise ScenarioError(str(exc)) from exc
    if doc:
        raise ScenarioError(f"unknown scenario keys: {sorted(doc)}")
    return Scenario(**kwargs)


def scenario_to_dict(sc: Scenario) -> dict:
    """Inverse of scenario_from_dict (used by sweeps to patch parameters)."""
    return {
        "name": sc.name,
        "controller": sc.controller,
        "duration": sc.duration,
        "dt": sc.dt,
        "vdc": sc.vdc,
        "speed_ref_rpm": sc.speed_ref_rpm,
        "load_torque": [list(step) for step in sc.load_torque],
        "metrics_window": list(sc.metrics_window),
        "estimator_rs": sc.estimator_rs,
        "fuzzy_update_divisor": sc.fuzzy_update_divisor,
        "blowup_bound": sc.blowup_bound,
        "machine": {f.name: getattr(sc.machine, f.name)
                    for f in fields(sc.machine)},
        "control": {f.name: getattr(sc.control, f.name)
                    for f in fields(sc.control)},
        "fuzzy": {
            "torque_error_scale": sc.fuzzy.torque_error_scale,
            "flux_min": sc.fuzzy.flux_min,
            "flux_rated": sc.fuzzy.flux_rated,
            "delta_max": sc.fuzzy.delta_max,
            "torque_breakpoints": {k: list(v) for k, v
                                   in sc.fuzzy.torque_breakpoints.items()},
            "flux_breakpoints": {k: list(v) for k, v
                                 in sc.fuzzy.flux_breakpoints.items()},
            "output_breakpoints": {k: list(v) for k, v
                                   in sc.fuzzy.output_breakpoints.items()},
            "rule_table": {k: list(v) for k, v in sc.fuzzy.rule_table.items()},
        },
    }


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ScenarioError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: scenario file must be a mapping")
    doc.setdefault("name", path.stem)
    return scenario_from_dict(doc)


def set_by_path(doc: dict, dotted: str, value: Any) -> None:
    """Set a nested scenario-dict entry via a dotted path, e.g. control.kp."""
    keys = dotted.split(".")
    node = doc
    for key in keys[:-1]:
        if key not in node or not isinstance(node[key], dict):
            raise ScenarioError(f"unknown parameter path {dotted!r}")
        node = node[key]
    if keys[-1] not in node:
        raise ScenarioError(f"unknown parameter path {dotted!r}")
    node[keys[-1]] = value
