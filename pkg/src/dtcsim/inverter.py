"""Two-level voltage-source inverter model (ideal switches).

Active vectors V1..V6 are numbered by angle in the alpha-beta plane under
this package's transform convention, so that V_k sits at 60*(k-1) degrees.
Because the beta-row sign of the transform is flipped relative to the
textbook-common one, the switching-state order around the hexagon is:

    V1=(1,0,0)  0 deg      V4=(0,1,1)  180 deg
    V2=(1,0,1)  60 deg     V5=(0,1,0)  240 deg
    V3=(0,0,1)  120 deg    V6=(1,1,0)  300 deg

V0=(0,0,0) and V7=(1,1,1) are the zero vectors.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .frames import AlphaBeta, ThreePhase, clarke


class SwitchingState(NamedTuple):
    sa: int
    sb: int
    sc: int


V0 = SwitchingState(0, 0, 0)
V7 = SwitchingState(1, 1, 1)


def phase_voltages(s: SwitchingState, vdc: float) -> ThreePhase:
    """Phase-to-neutral voltages for an isolated-neutral machine."""
    if vdc <= 0:
        raise ValueError("vdc must be positive")
    sa, sb, sc = s
    third = vdc / 3.0
    return ThreePhase(third * (2 * sa - sb - sc),
                      third * (2 * sb - sa - sc),
                      third * (2 * sc - sa - sb))


def stator_voltage(s: SwitchingState, vdc: float) -> AlphaBeta:
    """Stationary-frame stator voltage of a switching state."""
    return clarke(phase_voltages(s, vdc))


def _ordered_active_vectors() -> tuple[SwitchingState, ...]:
    # Enumerate the six active states and sort by alpha-beta angle so that
    # ACTIVE_VECTORS[k-1] lies at 60*(k-1) degrees.
    states = [SwitchingState(a, b, c)
              for a in (0, 1) for b in (0, 1) for c in (0, 1)
              if (a, b, c) not in ((0, 0, 0), (1, 1, 1))]

    def angle(st: SwitchingState) -> float:
        v = stator_voltage(st, 1.0)
        return math.atan2(v.beta, v.alpha) % (2.0 * math.pi)

    return tuple(sorted(states, key=angle))


#: Active vectors indexed V1..V6 -> ACTIVE_VECTORS[0..5].
ACTIVE_VECTORS: tuple[SwitchingState, ...] = _ordered_active_vectors()


def active_vector(k: int) -> SwitchingState:
    """Switching state of active vector V_k, k in 1..6."""
    if not 1 <= k <= 6:
        raise ValueError("active vector index must be in 1..6")
    return ACTIVE_VECTORS[k - 1]


def zero_vector(previous: SwitchingState) -> SwitchingState:
    """Zero vector (V0 or V7) minimizing switch transitions from `previous`."""
    ones = previous.sa + previous.sb + previous.sc
    return V7 if ones >= 2 else V0
