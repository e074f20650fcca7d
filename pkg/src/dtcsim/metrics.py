"""Steady-state ripple metrics and controller comparison reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RippleReport:
    scenario: str
    controller: str
    torque_mean: float        # [N m]
    torque_ripple_rms: float  # [N m]
    speed_mean: float         # [rpm]
    speed_ripple_rms: float   # [rpm]
    flux_mean: float          # [Wb]
    flux_ripple_rms: float    # [Wb]
    settling_time: float      # [s]; inf if never settled
    switch_count: int
    window: tuple[float, float]


def ripple(series, window_mask=None) -> float:
    """RMS deviation from the mean over the (optionally masked) window."""
    x = np.asarray(series, dtype=float)
    if window_mask is not None:
        x = x[np.asarray(window_mask)]
    if x.size == 0:
        raise ValueError("metrics window is empty")
    return float(np.sqrt(np.mean((x - x.mean()) ** 2)))


def settling_time(t, speed_rpm, speed_ref_rpm: float, tol_frac: float = 0.01) -> float:
    """Earliest time after which speed stays within tol_frac of the reference."""
    t = np.asarray(t, dtype=float)
    speed = np.asarray(speed_rpm, dtype=float)
    inside = np.abs(speed - speed_ref_rpm) <= tol_frac * abs(speed_ref_rpm)
    if not inside[-1]:
        return float("inf")
    outside = np.nonzero(~inside)[0]
    if outside.size == 0:
        return float(t[0])
    return float(t[outside[-1] + 1])


def switch_count(sa, sb, sc) -> int:
    """Total number of individual switch transitions across the run."""
    total = 0
    for s in (sa, sb, sc):
        arr = np.asarray(s, dtype=int)
        total += int(np.abs(np.diff(arr)).sum())
    return total


_METRIC_FIELDS = (
    ("torque_mean", "N m", False),
    ("torque_ripple_rms", "N m", True),
    ("speed_mean", "rpm", False),
    ("speed_ripple_rms", "rpm", True),
    ("flux_mean", "Wb", False),
    ("flux_ripple_rms", "Wb", True),
    ("settling_time", "s", True),
    ("switch_count", "", True),
)


def compare(a: RippleReport, b: RippleReport) -> str:
    """Side-by-side comparison of two runs of the same scenario.

    Reports percentage deltas of `b` relative to `a` and flags which
    controller wins each lower-is-better metric.
    """
    if a.scenario != b.scenario:
        raise ValueError(f"scenario mismatch: {a.scenario!r} vs {b.scenario!r}")
    if a.window != b.window:
        raise ValueError(f"metrics window mismatch: {a.window} vs {b.window}")
    lines = [
        f"scenario: {a.scenario}   metrics window: {a.window[0]:g}-{a.window[1]:g} s",
        f"{'metric':<22}{a.controller:>16}{b.controller:>16}{'delta %':>12}  winner",
    ]
    for name, unit, lower_better in _METRIC_FIELDS:
        va = getattr(a, name)
        vb = getattr(b, name)
        if va != 0:
            delta = 100.0 * (vb - va) / abs(va)
            delta_s = f"{delta:+.1f}"
        else:
            delta_s = "n/a" if vb != va else "+0.0"
        if lower_better and va != vb:
            winner = b.controller if vb < va else a.controller
        else:
            winner = "-"
        label = f"{name} [{unit}]" if unit else name
        lines.append(f"{label:<22}{va:>16.6g}{vb:>16.6g}{delta_s:>12}  {winner}")
    return "\n".join(lines)
