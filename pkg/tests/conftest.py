"""Shared fixtures.

Randomized checks draw from a numpy Generator seeded by PHASECYCLE_SEED
(fixed default), so runs are reproducible; export the variable to exercise
a different draw.
"""

import math
import os

import numpy as np
import pytest

from phasecycle import pump

SEED = int(os.environ.get("PHASECYCLE_SEED", "20260809"))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def build_quadrature_loop(drive_frequency: float) -> pump.RateProtocol:
    """The reference two-parameter loop: on-rate (left) and off-rate
    (right) modulated in quadrature around offset 1 with amplitude 0.5,
    the other two rates constant at 0.5."""
    return pump.RateProtocol(
        gamma_l_plus=pump.SinusoidalRate(1.0, 0.5, 0.0),
        gamma_r_plus=pump.SinusoidalRate(0.5),
        gamma_l_minus=pump.SinusoidalRate(0.5),
        gamma_r_minus=pump.SinusoidalRate(1.0, 0.5, math.pi / 2),
        drive_frequency=drive_frequency,
    )


@pytest.fixture(scope="session")
def quadrature_loop_slow_drive():
    """Exact/dynamic/geometric charges of the reference loop at drive
    frequencies {1e-2, 5e-3, 2.5e-3} x mean rate (shared across tests:
    the exact integrations dominate the suite runtime)."""
    mean = build_quadrature_loop(1.0).mean_rate
    omegas = [f * mean for f in (1e-2, 5e-3, 2.5e-3)]
    geom = pump.geometric_charge(build_quadrature_loop(omegas[0]))
    rows = []
    for om in omegas:
        proto = build_quadrature_loop(om)
        rows.append({
            "omega": om,
            "exact": pump.integrate_exact(proto).pumped,
            "dynamic": pump.dynamic_charge(proto),
        })
    return {"mean_rate": mean, "geom": geom, "rows": rows}
