"""Conventional DTC control law.

Two-level flux hysteresis, three-level torque hysteresis, the classical
six-sector switching table, and the outer speed PI that produces the
torque reference.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .inverter import SwitchingState, active_vector, zero_vector


@dataclass(frozen=True)
class HysteresisState:
    flux_flag: int = 1         # {0, 1}; starts at 1 so flux builds from zero
    torque_flag: int = 0       # {-1, 0, +1}
    flux_band: float = 0.012   # [Wb], 2% of the 0.6 Wb flux reference
    torque_band: float = 0.5   # [N m], ~1% of rated torque

    def __post_init__(self):
        if self.flux_band <= 0 or self.torque_band <= 0:
            raise ValueError("hysteresis bands must be positive")


def flux_comparator(h: HysteresisState, flux_ref: float,
                    flux_est: float) -> HysteresisState:
    """Two-level comparator with memory: flag holds inside the band."""
    error = flux_ref - flux_est
    if error > h.flux_band:
        flag = 1
    elif error < -h.flux_band:
        flag = 0
    else:
        flag = h.flux_flag
    return replace(h, flux_flag=flag)


def torque_comparator(h: HysteresisState, torque_ref: float,
                      torque_est: float) -> HysteresisState:
    """Three-level comparator: returns to 0 inside the band."""
    error = torque_ref - torque_est
    if error > h.torque_band:
        flag = 1
    elif error < -h.torque_band:
        flag = -1
    else:
        flag = 0
    return replace(h, torque_flag=flag)


def select_vector(flux_flag: int, torque_flag: int, sector: int,
                  previous: SwitchingState = SwitchingState(0, 0, 0)) -> SwitchingState:
    """Six-sector switching table lookup.

    For flux sector N: (flux=1, torque=+1) -> V_{N+1}, (1, -1) -> V_{N-1},
    (0, +1) -> V_{N+2}, (0, -1) -> V_{N-2}; torque flag 0 selects the zero
    vector (V0/V7) closest in switch count to `previous`.
    """
    if not 1 <= sector <= 6:
        raise ValueError("sector must be in 1..6")
    if torque_flag == 0:
        return zero_vector(previous)
    if flux_flag == 1:
        offset = 1 if torque_flag > 0 else -1
    else:
        offset = 2 if torque_flag > 0 else -2
    return active_vector((sector - 1 + offset) % 6 + 1)


@dataclass(frozen=True)
class SpeedPi:
    """Speed PI producing the torque reference, with conditional-integration
    anti-windup at the output clamp."""

    kp: float = 2.0            # [N m / (rad/s)]
    ki: float = 20.0           # [N m / rad]
    integral: float = 0.0      # accumulated speed error [rad]
    torque_limit: float = 50.0  # [N m]


def speed_pi_step(pi: SpeedPi, speed_ref: float, speed: float,
                  dt: float) -> tuple[SpeedPi, float]:
    """One PI update; returns (new state, torque reference)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    error = speed_ref - speed
    candidate = pi.integral + error * dt
    out = pi.kp * error + pi.ki * candidate
    if out > pi.torque_limit:
        out = pi.torque_limit
        if error > 0:  # would wind further into saturation
            candidate = pi.integral
    elif out < -pi.torque_limit:
        out = -pi.torque_limit
        if error < 0:
            candidate = pi.integral
    return replace(pi, integral=candidate), out
