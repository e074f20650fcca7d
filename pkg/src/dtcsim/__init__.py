"""Direct torque control simulator for induction motors.

Fixed-step closed-loop simulation of a two-level-inverter-fed induction
machine under conventional DTC and under DTC with a fuzzy stator-flux
reference optimizer, with ripple metrics for comparing the two.
"""

from .frames import AlphaBeta, ThreePhase, clarke, inverse_clarke
from .machine import (DivergenceError, MachineParams, MachineState,
                      derivatives, step, true_stator_flux, true_torque)
from .inverter import SwitchingState, active_vector, phase_voltages, stator_voltage
from .estimator import (DegenerateFluxError, EstimatorState, FluxEstimate,
                        magnitude, sector, torque, update_flux)
from .dtc import (HysteresisState, SpeedPi, flux_comparator, select_vector,
                  speed_pi_step, torque_comparator)
from .fuzzy import (FuzzyConfig, FuzzyState, defuzzify, fuzzify_flux_level,
                    fuzzify_torque_error, infer, update_flux_ref)
from .metrics import RippleReport, compare, ripple
from .scenario import Scenario, ScenarioError, load_scenario
from .harness import SimulationDiverged, Telemetry, run

__version__ = "0.1.0"
