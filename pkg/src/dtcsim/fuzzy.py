"""Fuzzy stator-flux-reference optimizer.

A Mamdani controller (min implication, max aggregation, centroid
defuzzification) that reads the instantaneous torque error and the current
flux reference, and emits a bounded increment of the flux reference each
control cycle.  It deliberately uses no motor parameters: load adaptation
comes purely from the torque-error distribution.

Universes are normalized: torque error to [-1, 1] by `torque_error_scale`,
the flux level to [0, 1] between `flux_min` and `flux_rated`, and the
output increment to [-1, 1] scaled by `delta_max`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

TORQUE_LABELS = ("NB", "NM", "NS", "PS", "PM", "PB")
FLUX_LABELS = ("S", "M", "B")
OUTPUT_LABELS = ("NB", "NM", "NS", "0", "PS", "PM", "PB")

# Triangle vertices (left, center, right) on the normalized universes.
# Each triangle reaches zero at its neighbours' centers, so memberships sum
# to one everywhere (complete partition).
DEFAULT_TORQUE_BREAKPOINTS: dict[str, tuple[float, float, float]] = {
    "NB": (-1.0, -1.0, -0.6),
    "NM": (-1.0, -0.6, -0.2),
    "NS": (-0.6, -0.2, 0.2),
    "PS": (-0.2, 0.2, 0.6),
    "PM": (0.2, 0.6, 1.0),
    "PB": (0.6, 1.0, 1.0),
}
DEFAULT_FLUX_BREAKPOINTS: dict[str, tuple[float, float, float]] = {
    "S": (0.0, 0.0, 0.5),
    "M": (0.0, 0.5, 1.0),
    "B": (0.5, 1.0, 1.0),
}
DEFAULT_OUTPUT_BREAKPOINTS: dict[str, tuple[float, float, float]] = {
    "NB": (-1.0, -1.0, -2.0 / 3.0),
    "NM": (-1.0, -2.0 / 3.0, -1.0 / 3.0),
    "NS": (-2.0 / 3.0, -1.0 / 3.0, 0.0),
    "0": (-1.0 / 3.0, 0.0, 1.0 / 3.0),
    "PS": (0.0, 1.0 / 3.0, 2.0 / 3.0),
    "PM": (1.0 / 3.0, 2.0 / 3.0, 1.0),
    "PB": (2.0 / 3.0, 1.0, 1.0),
}

# Rows: flux level S/M/B.  Columns: torque error NB, NM, NS, PS, PM, PB.
DEFAULT_RULE_TABLE: dict[str, tuple[str, ...]] = {
    "S": ("0", "PS", "PB", "0", "PS", "PB"),
    "M": ("NS", "0", "PM", "NS", "0", "PM"),
    "B": ("NB", "NM", "0", "NB", "NM", "0"),
}

#: Fixed defuzzification grid resolution (determinism contract).
CENTROID_SAMPLES = 1001


def _triangle(x: float, left: float, center: float, right: float) -> float:
    if x < left or x > right:
        return 0.0
    if x <= center:
        return 1.0 if center == left else (x - left) / (center - left)
    return 1.0 if right == center else (right - x) / (right - center)


@dataclass(frozen=True)
class FuzzyConfig:
    torque_error_scale: float = 49.7   # rated torque [N m]
    flux_min: float = 0.2              # [Wb]
    flux_rated: float = 0.6            # [Wb]; matches the conventional reference
    delta_max: float = 0.0005          # [Wb] per control cycle
    torque_breakpoints: Mapping[str, tuple[float, float, float]] = field(
        default_factory=lambda: dict(DEFAULT_TORQUE_BREAKPOINTS))
    flux_breakpoints: Mapping[str, tuple[float, float, float]] = field(
        default_factory=lambda: dict(DEFAULT_FLUX_BREAKPOINTS))
    output_breakpoints: Mapping[str, tuple[float, float, float]] = field(
        default_factory=lambda: dict(DEFAULT_OUTPUT_BREAKPOINTS))
    rule_table: Mapping[str, Sequence[str]] = field(
        default_factory=lambda: dict(DEFAULT_RULE_TABLE))

    def __post_init__(self):
        if not 0 < self.flux_min < self.flux_rated:
            raise ValueError("need 0 < flux_min < flux_rated")
        if self.delta_max <= 0:
            raise ValueError("delta_max must be positive")
        if self.torque_error_scale <= 0:
            raise ValueError("torque_error_scale must be positive")
        for row in FLUX_LABELS:
            entries = self.rule_table[row]
            if len(entries) != len(TORQUE_LABELS):
                raise ValueError(f"rule table row {row} must have "
                                 f"{len(TORQUE_LABELS)} entries")
            for out in entries:
                if out not in OUTPUT_LABELS:
                    raise ValueError(f"unknown output label {out!r}")
        for labels, bps, lo, hi in (
                (TORQUE_LABELS, self.torque_breakpoints, -1.0, 1.0),
                (FLUX_LABELS, self.flux_breakpoints, 0.0, 1.0)):
            for x in np.linspace(lo, hi, 201):
                total = sum(_triangle(float(x), *bps[lab]) for lab in labels)
                if total < 1.0 - 1e-9:
                    raise ValueError(
                        "membership functions must form a complete partition")


@dataclass(frozen=True)
class FuzzyState:
    flux_ref: float

    @classmethod
    def initial(cls, cfg: FuzzyConfig) -> "FuzzyState":
        # Start at rated so startup transients match conventional DTC.
        return cls(cfg.flux_rated)


def fuzzify_torque_error(cfg: FuzzyConfig, e: float) -> dict[str, float]:
    """Membership degrees of the (normalized, clamped) torque error."""
    x = min(max(e / cfg.torque_error_scale, -1.0), 1.0)
    return {lab: _triangle(x, *cfg.torque_breakpoints[lab])
            for lab in TORQUE_LABELS}


def fuzzify_flux_level(cfg: FuzzyConfig, flux_ref: float) -> dict[str, float]:
    """Membership degrees of the flux reference over {S, M, B}."""
    span = cfg.flux_rated - cfg.flux_min
    x = min(max((flux_ref - cfg.flux_min) / span, 0.0), 1.0)
    return {lab: _triangle(x, *cfg.flux_breakpoints[lab])
            for lab in FLUX_LABELS}


def infer(cfg: FuzzyConfig, torque_memberships: Mapping[str, float],
          flux_memberships: Mapping[str, float]) -> dict[str, float]:
    """Fire all 18 rules; returns clip level per output set (max aggregation)."""
    clips = {lab: 0.0 for lab in OUTPUT_LABELS}
    for row in FLUX_LABELS:
        fm = flux_memberships[row]
        if fm == 0.0:
            continue
        outputs = cfg.rule_table[row]
        for col, out in zip(TORQUE_LABELS, outputs):
            strength = min(fm, torque_memberships[col])
            if strength > clips[out]:
                clips[out] = strength
    return clips


def defuzzify(cfg: FuzzyConfig, clips: Mapping[str, float]) -> float:
    """Centroid of the aggregated clipped output sets, in webers.

    Sampled on a fixed 1001-point uniform grid over [-delta_max, delta_max]
    for determinism.  Returns 0 when no rule fired.
    """
    grid = np.linspace(-1.0, 1.0, CENTROID_SAMPLES)
    agg = np.zeros_like(grid)
    for lab in OUTPUT_LABELS:
        h = clips[lab]
        if h == 0.0:
            continue
        left, center, right = cfg.output_breakpoints[lab]
        mu = np.zeros_like(grid)
        if center > left:
            rising = (grid >= left) & (grid <= center)
            mu[rising] = (grid[rising] - left) / (center - left)
        else:
            mu[grid <= center] = 1.0
        if right > center:
            falling = grid > center
            mu[falling] = np.maximum(
                0.0, (right - grid[falling]) / (right - center))
        else:
            mu[grid >= center] = np.maximum(mu[grid >= center], 1.0)
        np.minimum(mu, h, out=mu)
        np.maximum(agg, mu, out=agg)
    total = float(agg.sum())
    if total == 0.0:
        return 0.0
    return float((grid * agg).sum() / total) * cfg.delta_max


def update_flux_ref(state: FuzzyState, cfg: FuzzyConfig, torque_error: float,
                    dt: float) -> FuzzyState:
    """One optimizer cycle: adjust and clamp the flux reference.

    Reads only the torque error and its own state/config; no motor
    parameters are involved.  `dt` is accepted for cadence bookkeeping but
    the increment bound is per call.
    """
    tm = fuzzify_torque_error(cfg, torque_error)
    fm = fuzzify_flux_level(cfg, state.flux_ref)
    delta = defuzzify(cfg, infer(cfg, tm, fm))
    new_ref = min(max(state.flux_ref + delta, cfg.flux_min), cfg.flux_rated)
    return replace(state, flux_ref=new_ref)


class FuzzyEngine:
    """Precomputed-array version of the optimizer for the simulation loop.

    Numerically identical to `update_flux_ref` (same grid, same min/max
    inference), just with the output membership matrix built once.
    """

    def __init__(self, cfg: FuzzyConfig):
        self.cfg = cfg
        grid = np.linspace(-1.0, 1.0, CENTROID_SAMPLES)
        mats = []
        for lab in OUTPUT_LABELS:
            left, center, right = cfg.output_breakpoints[lab]
            mu = np.array([_triangle(float(x), left, center, right)
                           for x in grid])
            mats.append(mu)
        self._grid = grid
        self._mu = np.array(mats)          # (n_labels, n_samples)
        self._rules = [(row, col, out)
                       for row in FLUX_LABELS
                       for col, out in zip(TORQUE_LABELS, cfg.rule_table[row])]
        self._out_index = {lab: k for k, lab in enumerate(OUTPUT_LABELS)}

    def delta(self, torque_error: float, flux_ref: float) -> float:
        cfg = self.cfg
        tm = fuzzify_torque_error(cfg, torque_error)
        fm = fuzzify_flux_level(cfg, flux_ref)
        clips = np.zeros(len(OUTPUT_LABELS))
        for row, col, out in self._rules:
            s = min(fm[row], tm[col])
            k = self._out_index[out]
            if s > clips[k]:
                clips[k] = s
        if not clips.any():
            return 0.0
        agg = np.max(np.minimum(clips[:, None], self._mu), axis=0)
        total = agg.sum()
        if total == 0.0:
            return 0.0
        return float((self._grid * agg).sum() / total) * cfg.delta_max

    def step(self, flux_ref: float, torque_error: float) -> float:
        new_ref = flux_ref + self.delta(torque_error, flux_ref)
        return min(max(new_ref, self.cfg.flux_min), self.cfg.flux_rated)
