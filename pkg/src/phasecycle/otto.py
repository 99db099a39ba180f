"""Four-stroke harmonic-oscillator Otto cycle.

The working medium is a single oscillator whose frequency alternates
between ``omega1`` and ``omega2`` (isentropes) while bath contacts at fixed
frequency exchange heat (isochores).  All energies use hbar = k_B = 1
unless an explicit ``hbar`` is supplied.

Sign conventions (version 1, see README):

* ``w1``/``w3`` are works done ON the oscillator during the isentropes,
  ``q2``/``q4`` are heats absorbed BY the oscillator on the isochores.
* The compression stroke starts from equilibrium with the COLD bath
  (inverse temperature ``beta_cold``); the subsequent isochore couples to
  the HOT bath.  With this assignment the engine window is
  ``1 < omega2/omega1 < beta_cold/beta_hot`` and the efficiency at maximum
  high-temperature work is the Curzon-Ahlborn value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotAnEngineError
from .numerics import coth

__all__ = [
    "OttoSpec",
    "OttoCycleResult",
    "thermal_energy",
    "cycle",
    "max_power_frequency_ratio",
    "efficiency_at_max_power",
]


def _require_positive(**values):
    for name, v in values.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a positive finite number, got {v!r}")


@dataclass(frozen=True)
class OttoSpec:
    """Frequencies, bath inverse temperatures and the action unit of one
    oscillator Otto cycle.  Requires ``beta_cold > beta_hot`` (the cold
    bath is colder)."""

    omega1: float
    omega2: float
    beta_cold: float
    beta_hot: float
    hbar: float = 1.0

    def __post_init__(self):
        _require_positive(omega1=self.omega1, omega2=self.omega2,
                          beta_cold=self.beta_cold, beta_hot=self.beta_hot,
                          hbar=self.hbar)
        if not self.beta_cold > self.beta_hot:
            raise DomainError(
                f"beta_cold={self.beta_cold!r} must exceed beta_hot={self.beta_hot!r}")


@dataclass(frozen=True)
class OttoCycleResult:
    """Per-step energy book of one cycle.

    ``w1 + q2 + w3 + q4`` vanishes (first law); ``efficiency`` equals
    ``w_net_extracted / q2`` and reduces to ``1 - omega1/omega2``.
    """

    w1: float
    q2: float
    w3: float
    q4: float
    w_net_extracted: float
    efficiency: float


def thermal_energy(omega: float, beta: float, hbar: float = 1.0) -> float:
    """Mean oscillator energy (hbar*omega/2) * coth(beta*hbar*omega/2).

    Decreasing in ``beta``; approaches the ground-state energy
    hbar*omega/2 as beta -> inf and equipartition 1/beta as beta -> 0.
    """
    _require_positive(omega=omega, beta=beta, hbar=hbar)
    x = 0.5 * beta * hbar * omega
    return 0.5 * hbar * omega * coth(x)


def cycle(spec: OttoSpec) -> OttoCycleResult:
    """Evaluate the four strokes of the cycle for an engine-window spec.

    The cold-equilibrium occupation factor enters ``w1`` and ``q4``; the
    hot one enters ``w3`` and ``q2``.  Outside the engine window
    ``1 < omega2/omega1 < beta_cold/beta_hot`` the cycle absorbs rather
    than produces work and a NotAnEngineError is raised carrying the sign
    of the net extracted work.
    """
    w1_, w2_ = spec.omega1, spec.omega2
    c_cold = coth(0.5 * spec.beta_cold * spec.hbar * w1_)
    c_hot = coth(0.5 * spec.beta_hot * spec.hbar * w2_)
    dc = c_hot - c_cold
    half = 0.5 * spec.hbar
    w_net = half * (w2_ - w1_) * dc

    ratio = w2_ / w1_
    window = spec.beta_cold / spec.beta_hot
    if not (1.0 < ratio < window):
        sign = 0 if w_net == 0.0 else (1 if w_net > 0.0 else -1)
        raise NotAnEngineError(
            f"omega2/omega1={ratio!r} outside the engine window (1, {window!r}); "
            f"net extracted work has sign {sign}", net_work_sign=sign)

    return OttoCycleResult(
        w1=half * (w2_ - w1_) * c_cold,
        q2=half * w2_ * dc,
        w3=-half * (w2_ - w1_) * c_hot,
        q4=-half * w1_ * dc,
        w_net_extracted=w_net,
        efficiency=1.0 - w1_ / w2_,
    )


def max_power_frequency_ratio(beta_cold: float, beta_hot: float) -> float:
    """Frequency ratio omega2/omega1 maximizing the high-temperature net
    extracted work at fixed baths: sqrt(beta_cold/beta_hot)."""
    _require_positive(beta_cold=beta_cold, beta_hot=beta_hot)
    if not beta_cold > beta_hot:
        raise DomainError("beta_cold must exceed beta_hot")
    return math.sqrt(beta_cold / beta_hot)


def efficiency_at_max_power(beta_cold: float, beta_hot: float) -> float:
    """Efficiency at the max-power ratio: 1 - sqrt(T_C/T_H)."""
    _require_positive(beta_cold=beta_cold, beta_hot=beta_hot)
    if not beta_cold > beta_hot:
        raise DomainError("beta_cold must exceed beta_hot")
    return 1.0 - math.sqrt(beta_hot / beta_cold)
