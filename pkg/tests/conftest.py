from pathlib import Path

import pytest

from dtcsim import harness
from dtcsim.scenario import load_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture(scope="session")
def scenarios_dir() -> Path:
    return SCENARIOS


@pytest.fixture(scope="session")
def long_runs():
    """Full 2 s runs of both controllers on both checked-in scenarios.

    Expensive (4 x 40,000 cycles), so computed once per session and shared
    by the closed-loop and acceptance tests.  Keyed by (scenario name,
    controller): (scenario, telemetry, report).
    """
    out = {}
    for name in ("noload", "loaded"):
        base = load_scenario(SCENARIOS / f"{name}.scn")
        for controller in ("conventional", "fuzzy"):
            sc = base.with_controller(controller)
            telemetry, rep = harness.run(sc)
            out[(name, controller)] = (sc, telemetry, rep)
    return out
