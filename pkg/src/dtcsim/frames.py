"""Three-phase <-> stationary two-axis (alpha-beta-0) transformations.

The forward transform uses the power-variant matrix

    T = 2/3 * [[1, -1/2, -1/2],
               [0, -sqrt(3)/2, +sqrt(3)/2],
               [1/2, 1/2, 1/2]]

Note the beta-row sign convention [0, -sqrt(3)/2, +sqrt(3)/2]; many texts
use the opposite sign.  Everything downstream (sector partition, voltage
vector numbering, switching table) is defined consistently against this
matrix, so only self-consistency matters.
"""

from __future__ import annotations

import math
from typing import NamedTuple

_SQRT3_2 = math.sqrt(3.0) / 2.0


class ThreePhase(NamedTuple):
    a: float
    b: float
    c: float


class AlphaBeta(NamedTuple):
    alpha: float
    beta: float
    zero: float = 0.0


def clarke(x: ThreePhase | tuple) -> AlphaBeta:
    """Transform phase quantities (a, b, c) to the stationary frame."""
    a, b, c = x
    alpha = (2.0 / 3.0) * (a - 0.5 * b - 0.5 * c)
    beta = (2.0 / 3.0) * (-_SQRT3_2 * b + _SQRT3_2 * c)
    zero = (a + b + c) / 3.0
    return AlphaBeta(alpha, beta, zero)


def inverse_clarke(x: AlphaBeta | tuple) -> ThreePhase:
    """Map an alpha-beta vector back to phase quantities.

    Closed-form pseudo-inverse of the forward matrix (with the zero
    component added back as common mode):

        a = alpha + zero
        b = -alpha/2 - beta*sqrt(3)/2 + zero
        c = -alpha/2 + beta*sqrt(3)/2 + zero
    """
    alpha, beta, zero = x
    a = alpha + zero
    b = -0.5 * alpha - _SQRT3_2 * beta + zero
    c = -0.5 * alpha + _SQRT3_2 * beta + zero
    return ThreePhase(a, b, c)
