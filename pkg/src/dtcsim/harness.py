"""Closed-loop scenario runner.

Each control cycle: sample plant currents -> transform -> flux/torque
estimate -> outer speed PI -> (fuzzy flux-reference update when enabled)
-> hysteresis comparators -> switching table -> inverter voltage -> one
RK4 plant step.  The voltage applied during cycle k depends only on
measurements taken at the start of cycle k (one-cycle zero-order hold).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import machine
from .dtc import select_vector
from .estimator import sector as flux_sector
from .frames import inverse_clarke
from .fuzzy import FuzzyEngine
from .inverter import SwitchingState, stator_voltage
from .metrics import RippleReport, ripple, settling_time, switch_count
from .scenario import Scenario

RPM_PER_RADS = 60.0 / (2.0 * math.pi)

TELEMETRY_COLUMNS = (
    "t", "ia", "ib", "ic", "i_alpha", "i_beta",
    "flux_alpha", "flux_beta", "flux_mag", "flux_ref", "sector",
    "torque_est", "torque_ref", "torque_true",
    "speed_rpm", "speed_ref_rpm", "flux_flag", "torque_flag",
    "sa", "sb", "sc",
)
_INT_COLUMNS = frozenset({"sector", "flux_flag", "torque_flag", "sa", "sb", "sc"})


class SimulationDiverged(RuntimeError):
    def __init__(self, cycle: int, cause: Exception):
        super().__init__(f"plant diverged at cycle {cycle}: {cause}")
        self.cycle = cycle


@dataclass
class Telemetry:
    """Per-cycle telemetry, one row per control cycle."""

    columns: tuple[str, ...]
    rows: list[tuple]

    def column(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows])

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        int_idx = {i for i, c in enumerate(self.columns) if c in _INT_COLUMNS}
        for row in self.rows:
            lines.append(",".join(
                str(v) if i in int_idx else format(v, ".9g")
                for i, v in enumerate(row)))
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv())
        return path


def run(sc: Scenario) -> tuple[Telemetry, RippleReport]:
    """Run one scenario; returns the telemetry and its ripple report."""
    p = sc.machine
    dt = sc.dt
    n = sc.n_cycles
    rs_est = p.rs if sc.estimator_rs is None else sc.estimator_rs
    pole_pairs = p.pole_pairs
    speed_ref = sc.speed_ref_rpm / RPM_PER_RADS
    vdc = sc.vdc
    ctl = sc.control

    # Inverter voltages are one of 8 constants; precompute the lookup.
    v_table = {s: stator_voltage(s, vdc)
               for s in (SwitchingState(a, b, c)
                         for a in (0, 1) for b in (0, 1) for c in (0, 1))}

    state = machine.MachineState()
    la = lb = 0.0                       # estimator flux
    flux_flag = 1
    pi_integral = 0.0
    prev_sw = SwitchingState(0, 0, 0)
    flux_ref = ctl.flux_ref
    engine = None
    if sc.controller == "fuzzy":
        engine = FuzzyEngine(sc.fuzzy)
        flux_ref = sc.fuzzy.flux_rated

    kp, ki, torque_limit = ctl.kp, ctl.ki, ctl.torque_limit
    flux_band, torque_band = ctl.flux_band, ctl.torque_band
    speed_mode = ctl.mode == "speed"
    fixed_torque_ref = ctl.torque_ref
    divisor = sc.fuzzy_update_divisor

    rows = []
    append = rows.append
    for k in range(n):
        t = k * dt
        isa, isb = state.is_alpha, state.is_beta
        flux_mag = math.hypot(la, lb)
        sec = 1 if flux_mag == 0.0 else flux_sector(la, lb)
        torque_est = 1.5 * pole_pairs * (la * isb - lb * isa)
        omega = state.omega_m

        if speed_mode:
            err = speed_ref - omega
            candidate = pi_integral + err * dt
            torque_ref = kp * err + ki * candidate
            if torque_ref > torque_limit:
                torque_ref = torque_limit
                if err > 0:
                    candidate = pi_integral
            elif torque_ref < -torque_limit:
                torque_ref = -torque_limit
                if err < 0:
                    candidate = pi_integral
            pi_integral = candidate
        else:
            torque_ref = fixed_torque_ref

        torque_error = torque_ref - torque_est
        if engine is not None and k % divisor == 0:
            flux_ref = engine.step(flux_ref, torque_error)

        flux_error = flux_ref - flux_mag
        if flux_error > flux_band:
            flux_flag = 1
        elif flux_error < -flux_band:
            flux_flag = 0
        if torque_error > torque_band:
            torque_flag = 1
        elif torque_error < -torque_band:
            torque_flag = -1
        else:
            torque_flag = 0

        sw = select_vector(flux_flag, torque_flag, sec, prev_sw)
        v = v_table[sw]

        ia, ib, ic = inverse_clarke((isa, isb, 0.0))
        append((t, ia, ib, ic, isa, isb,
                la, lb, flux_mag, flux_ref, sec,
                torque_est, torque_ref, machine.true_torque(p, state),
                omega * RPM_PER_RADS, sc.speed_ref_rpm,
                flux_flag, torque_flag, sw.sa, sw.sb, sw.sc))

        la += (v.alpha - rs_est * isa) * dt
        lb += (v.beta - rs_est * isb) * dt
        try:
            state = machine.step(p, state, v, sc.load_torque_at(t), dt,
                                 sc.blowup_bound)
        except machine.DivergenceError as exc:
            raise SimulationDiverged(k, exc) from exc
        prev_sw = sw

    telemetry = Telemetry(TELEMETRY_COLUMNS, rows)
    return telemetry, report(sc, telemetry)


def report(sc: Scenario, telemetry: Telemetry) -> RippleReport:
    """Compute the steady-state ripple report over the metrics window."""
    t = telemetry.column("t")
    start, end = sc.metrics_window
    mask = (t >= start) & (t < end)
    if not mask.any():
        raise ValueError("metrics window contains no samples")
    torque = telemetry.column("torque_true")
    speed = telemetry.column("speed_rpm")
    flux = telemetry.column("flux_mag")
    win = mask
    return RippleReport(
        scenario=sc.name,
        controller=sc.controller,
        torque_mean=float(torque[win].mean()),
        torque_ripple_rms=ripple(torque, win),
        speed_mean=float(speed[win].mean()),
        speed_ripple_rms=ripple(speed, win),
        flux_mean=float(flux[win].mean()),
        flux_ripple_rms=ripple(flux, win),
        settling_time=settling_time(t, speed, sc.speed_ref_rpm),
        switch_count=switch_count(telemetry.column("sa")[win],
                                  telemetry.column("sb")[win],
                                  telemetry.column("sc")[win]),
        window=(start, end),
    )


def report_text(r: RippleReport) -> str:
    lines = [f"scenario: {r.scenario}   controller: {r.controller}",
             f"metrics window: {r.window[0]:g}-{r.window[1]:g} s"]
    for name in ("torque_mean", "torque_ripple_rms", "speed_mean",
                 "speed_ripple_rms", "flux_mean", "flux_ripple_rms",
                 "settling_time", "switch_count"):
        lines.append(f"{name:<18} {getattr(r, name):.6g}")
    return "\n".join(lines)
