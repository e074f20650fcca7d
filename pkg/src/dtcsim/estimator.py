"""Controller-side stator flux and torque observer.

The flux is an open-loop forward-Euler integral of (v - rs*i) with no
drift compensation; drift is acceptable at desk-scale run lengths when the
estimator resistance matches the plant.  Resistance mismatch is exposed as
a scenario knob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .frames import AlphaBeta

_SECTOR_WIDTH = math.pi / 3.0


class DegenerateFluxError(ValueError):
    """Flux vector is zero: angle and sector are undefined (not yet magnetized)."""


@dataclass(frozen=True)
class FluxEstimate:
    lambda_alpha: float
    lambda_beta: float
    magnitude: float
    angle: float      # rad, in (-pi, pi]
    sector: int       # 1..6


@dataclass(frozen=True)
class EstimatorState:
    flux: FluxEstimate
    torque_estimate: float
    rs: float

    @classmethod
    def initial(cls, rs: float) -> "EstimatorState":
        # Zero flux: sector defaults to 1 until the first integration step.
        return cls(FluxEstimate(0.0, 0.0, 0.0, 0.0, 1), 0.0, rs)


def magnitude(lambda_alpha: float, lambda_beta: float) -> float:
    """Flux magnitude (Euclidean norm)."""
    return math.hypot(lambda_alpha, lambda_beta)


def torque(lam: AlphaBeta | tuple, i: AlphaBeta | tuple, pole_pairs: int) -> float:
    """Electromagnetic torque estimate from stator flux and currents."""
    return 1.5 * pole_pairs * (lam[0] * i[1] - lam[1] * i[0])


def sector(lambda_alpha: float, lambda_beta: float) -> int:
    """Six-sector index of the flux angle.

    Sector k covers [-30 + 60*(k-1), +30 + 60*(k-1)) degrees modulo 360,
    lower edge inclusive; sector 1 is centered on 0 degrees.
    """
    if lambda_alpha == 0.0 and lambda_beta == 0.0:
        raise DegenerateFluxError("sector undefined for zero flux vector")
    theta = math.atan2(lambda_beta, lambda_alpha)
    k = math.floor((theta + _SECTOR_WIDTH / 2.0) / _SECTOR_WIDTH) % 6
    return k + 1


def _estimate(lambda_alpha: float, lambda_beta: float) -> FluxEstimate:
    mag = magnitude(lambda_alpha, lambda_beta)
    if mag == 0.0:
        return FluxEstimate(lambda_alpha, lambda_beta, 0.0, 0.0, 1)
    angle = math.atan2(lambda_beta, lambda_alpha)
    return FluxEstimate(lambda_alpha, lambda_beta, mag, angle,
                        sector(lambda_alpha, lambda_beta))


def update_flux(e: EstimatorState, v: AlphaBeta | tuple, i: AlphaBeta | tuple,
                dt: float, pole_pairs: int = 2) -> EstimatorState:
    """One forward-Euler integration step of the flux, plus torque estimate."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    la = e.flux.lambda_alpha + (v[0] - e.rs * i[0]) * dt
    lb = e.flux.lambda_beta + (v[1] - e.rs * i[1]) * dt
    flux = _estimate(la, lb)
    te = torque((la, lb), i, pole_pairs)
    return EstimatorState(flux, te, e.rs)
