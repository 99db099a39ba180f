"""phasecycle: quantum thermal-engine cycles, driven two-state charge
pumping, and non-cyclic geometric phases.

The submodules are the public surface:

* :mod:`phasecycle.numerics` - tolerances, ODE integration, 2-D
  maximization, 2x2 generator null spaces;
* :mod:`phasecycle.otto` - the harmonic-oscillator Otto cycle;
* :mod:`phasecycle.carnot` - the spin-1/2 Carnot cycle and the
  low-dissipation power optimum;
* :mod:`phasecycle.pump` - the periodically driven two-state dot and the
  dynamic/geometric pumped-charge decomposition;
* :mod:`phasecycle.phase` - Bloch-sphere paths, Pancharatnam and
  connection terms, gauge-invariant open-path geometric phases;
* :mod:`phasecycle.cli` - the ``phasecycle`` batch command.
"""

from . import carnot, errors, numerics, otto, phase, pump
from .errors import PhasecycleError
from .numerics import Tolerance

__all__ = [
    "carnot",
    "errors",
    "numerics",
    "otto",
    "phase",
    "pump",
    "PhasecycleError",
    "Tolerance",
]

__version__ = "0.1.0"

CONVENTIONS_VERSION = "phasecycle-conventions-1"
