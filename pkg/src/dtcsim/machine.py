"""Induction motor plant: fifth-order stationary-frame model.

States: stator currents (is_alpha, is_beta), rotor fluxes (lr_alpha,
lr_beta) and mechanical speed omega_m.  The inverter voltage is constant
over one control cycle, so a single classical RK4 step per cycle keeps the
plant and controller in lockstep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .frames import AlphaBeta


class DivergenceError(RuntimeError):
    """State magnitude exceeded the blow-up bound (unstable configuration)."""


@dataclass(frozen=True)
class MachineParams:
    """Electrical and mechanical motor parameters.

    rs and pole_pairs come from the reference 7.5 kW machine datasheet;
    the remaining electrical parameters are typical catalog values for a
    7.5 kW / 400 V / 50 Hz / 4-pole machine and can be overridden from the
    scenario file.
    """

    rs: float = 0.7334        # stator resistance [ohm]
    rr: float = 0.7402        # rotor resistance [ohm]
    ls: float = 0.1271        # stator self-inductance [H]
    lr: float = 0.1271        # rotor self-inductance [H]
    lm: float = 0.1241        # magnetizing inductance [H]
    pole_pairs: int = 2
    inertia: float = 0.0343   # [kg m^2]
    friction: float = 0.000503  # viscous friction [N m s/rad]
    rated_power: float = 7500.0   # [W]
    rated_voltage: float = 400.0  # [V]
    rated_frequency: float = 50.0  # [Hz]
    rated_speed: float = 1440.0   # [rpm]

    def __post_init__(self):
        if self.rs < 0 or self.rr < 0:
            raise ValueError("resistances must be non-negative")
        if min(self.ls, self.lr, self.lm) <= 0:
            raise ValueError("inductances must be positive")
        if self.lm * self.lm >= self.ls * self.lr:
            raise ValueError("lm^2 must be < ls*lr (leakage coefficient in (0,1))")
        if self.pole_pairs < 1:
            raise ValueError("pole_pairs must be >= 1")
        if self.inertia <= 0:
            raise ValueError("inertia must be positive")

    @property
    def sigma(self) -> float:
        """Total leakage coefficient, in (0, 1)."""
        return 1.0 - self.lm * self.lm / (self.ls * self.lr)

    @property
    def rated_torque(self) -> float:
        return self.rated_power / (self.rated_speed * 2.0 * math.pi / 60.0)


class MachineState(NamedTuple):
    is_alpha: float = 0.0
    is_beta: float = 0.0
    lr_alpha: float = 0.0
    lr_beta: float = 0.0
    omega_m: float = 0.0


def derivatives(p: MachineParams, s: MachineState, v: AlphaBeta,
                load_torque: float) -> MachineState:
    """Right-hand side of the fifth-order model (returns d/dt of each state)."""
    tau_r = p.lr / p.rr
    k = p.lm / p.lr
    sigma_ls = p.sigma * p.ls
    omega_r = p.pole_pairs * s.omega_m

    dlr_a = (p.lm / tau_r) * s.is_alpha - s.lr_alpha / tau_r - omega_r * s.lr_beta
    dlr_b = (p.lm / tau_r) * s.is_beta - s.lr_beta / tau_r + omega_r * s.lr_alpha
    dis_a = (v[0] - p.rs * s.is_alpha - k * dlr_a) / sigma_ls
    dis_b = (v[1] - p.rs * s.is_beta - k * dlr_b) / sigma_ls

    te = true_torque(p, s)
    domega = (te - load_torque - p.friction * s.omega_m) / p.inertia
    return MachineState(dis_a, dis_b, dlr_a, dlr_b, domega)


def step(p: MachineParams, s: MachineState, v: AlphaBeta, load_torque: float,
         dt: float, blowup_bound: float = 1e6) -> MachineState:
    """Advance the plant one fixed RK4 step under constant applied voltage."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    k1 = derivatives(p, s, v, load_torque)
    s2 = MachineState(*(x + 0.5 * dt * d for x, d in zip(s, k1)))
    k2 = derivatives(p, s2, v, load_torque)
    s3 = MachineState(*(x + 0.5 * dt * d for x, d in zip(s, k2)))
    k3 = derivatives(p, s3, v, load_torque)
    s4 = MachineState(*(x + dt * d for x, d in zip(s, k3)))
    k4 = derivatives(p, s4, v, load_torque)
    out = MachineState(*(x + (dt / 6.0) * (a + 2.0 * b + 2.0 * c + d)
                         for x, a, b, c, d in zip(s, k1, k2, k3, k4)))
    for x in out:
        if not math.isfinite(x) or abs(x) > blowup_bound:
            raise DivergenceError(
                f"plant state exceeded blow-up bound {blowup_bound:g}: {out}")
    return out


def true_torque(p: MachineParams, s: MachineState) -> float:
    """Plant-side electromagnetic torque (ground truth)."""
    return (1.5 * p.pole_pairs * (p.lm / p.lr)
            * (s.lr_alpha * s.is_beta - s.lr_beta * s.is_alpha))


def true_stator_flux(p: MachineParams, s: MachineState) -> AlphaBeta:
    """Plant-side stator flux: lambda_s = sigma*ls*is + (lm/lr)*lambda_r."""
    sigma_ls = p.sigma * p.ls
    k = p.lm / p.lr
    return AlphaBeta(sigma_ls * s.is_alpha + k * s.lr_alpha,
                     sigma_ls * s.is_beta + k * s.lr_beta, 0.0)


def energy(p: MachineParams, s: MachineState) -> float:
    """Kinetic plus magnetic field energy (passivity checks)."""
    i2 = s.is_alpha ** 2 + s.is_beta ** 2
    lr2 = s.lr_alpha ** 2 + s.lr_beta ** 2
    return (0.5 * p.inertia * s.omega_m ** 2
            + 0.5 * p.sigma * p.ls * i2 + 0.5 * lr2 / p.lr)


__all__ = [
    "MachineParams", "MachineState", "DivergenceError",
    "derivatives", "step", "true_torque", "true_stator_flux", "energy",
    "replace",
]
