"""Four-stroke spin-1/2 Carnot cycle and its finite-time power optimum.

The working medium is a spin-1/2 in a field along +z.  Throughout, the
field variable ``omega_t`` is the level splitting (Bohr magneton and field
magnitude folded in), so the spin energy is ``omega_t * <s_z>`` with
``<s_z> = -tanh(beta*omega_t/2)/2``.  Units hbar = k_B = 1 by default.

Two isotherms (bath contact at fixed temperature) alternate with two
adiabats (isolated field sweep at fixed polarization).  Adiabats force
``beta_hot * omega_1 = beta_cold * omega_4`` and
``beta_hot * omega_2 = beta_cold * omega_3``, from which the reversible
efficiency ``1 - T_C/T_H`` follows identically.

The finite-time treatment is the low-dissipation model: irreversible heat
corrections proportional to 1/tau with contact duration tau, and cycle
power maximized over the two contact durations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoInteriorMaximumError, NotAnEngineError
from .numerics import Tolerance, maximize_2d

__all__ = [
    "SpinCycleSpec",
    "ReversibleCycleResult",
    "LowDissipationParams",
    "PowerOptimum",
    "spin_polarization",
    "spin_energy",
    "solve_adiabats",
    "reversible_cycle",
    "irreversible_heats",
    "power",
    "maximize_power",
]

_ADIABAT_RTOL = 1e-12


def _require_positive(**values):
    for name, v in values.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a positive finite number, got {v!r}")


def spin_polarization(omega_t: float, beta: float, hbar: float = 1.0) -> float:
    """Thermal expectation of s_z: -tanh(beta*hbar*omega_t/2)/2.

    Lies in (-1/2, 0); -> 0 at infinite temperature, -> -1/2 at zero.
    """
    _require_positive(omega_t=omega_t, beta=beta, hbar=hbar)
    return -0.5 * math.tanh(0.5 * beta * hbar * omega_t)


def spin_energy(omega_t: float, beta: float, hbar: float = 1.0) -> float:
    """Thermal spin energy hbar * omega_t * <s_z>; always negative."""
    return hbar * omega_t * spin_polarization(omega_t, beta, hbar)


@dataclass(frozen=True)
class SpinCycleSpec:
    """The four field values and two bath temperatures of one spin cycle.

    ``omega_t1``/``omega_t2`` bound the hot isotherm, ``omega_t3``/
    ``omega_t4`` the cold one.  Adiabat consistency
    (``beta_hot*omega_t1 == beta_cold*omega_t4`` etc.) is guaranteed when
    built via :func:`solve_adiabats` and is rechecked by
    :func:`reversible_cycle`.
    """

    omega_t1: float
    omega_t2: float
    omega_t3: float
    omega_t4: float
    beta_hot: float
    beta_cold: float
    hbar: float = 1.0

    def __post_init__(self):
        _require_positive(omega_t1=self.omega_t1, omega_t2=self.omega_t2,
                          omega_t3=self.omega_t3, omega_t4=self.omega_t4,
                          beta_hot=self.beta_hot, beta_cold=self.beta_cold,
                          hbar=self.hbar)
        # equal temperatures are admitted (zero-gap cycle, efficiency 0)
        if self.beta_cold < self.beta_hot:
            raise DomainError("beta_cold must be >= beta_hot")

    def adiabat_residuals(self) -> tuple[float, float]:
        """Relative mismatch of the two adiabat constraints."""
        r1 = (self.beta_hot * self.omega_t1 - self.beta_cold * self.omega_t4)
        r2 = (self.beta_hot * self.omega_t2 - self.beta_cold * self.omega_t3)
        return (abs(r1) / (self.beta_hot * self.omega_t1),
                abs(r2) / (self.beta_hot * self.omega_t2))


def solve_adiabats(omega_t1: float, omega_t2: float,
                   beta_hot: float, beta_cold: float,
                   hbar: float = 1.0) -> SpinCycleSpec:
    """Complete a cycle spec from the hot-isotherm endpoints.

    The adiabats preserve the polarization, which pins the cold-side
    fields to ``omega_t3 = omega_t2 * beta_hot/beta_cold`` and
    ``omega_t4 = omega_t1 * beta_hot/beta_cold``.
    """
    _require_positive(omega_t1=omega_t1, omega_t2=omega_t2,
                      beta_hot=beta_hot, beta_cold=beta_cold, hbar=hbar)
    if beta_cold < beta_hot:
        raise DomainError("beta_cold must be >= beta_hot")
    k = beta_hot / beta_cold
    return SpinCycleSpec(
        omega_t1=omega_t1, omega_t2=omega_t2,
        omega_t3=omega_t2 * k, omega_t4=omega_t1 * k,
        beta_hot=beta_hot, beta_cold=beta_cold, hbar=hbar,
    )


@dataclass(frozen=True)
class ReversibleCycleResult:
    """Heats and works of the four strokes (all are energy changes of the
    spin; heats on the isotherms, works on the adiabats)."""

    q_hot: float
    w_adiabat_1: float
    q_cold: float
    w_adiabat_2: float
    w_net_extracted: float
    efficiency: float


def reversible_cycle(spec: SpinCycleSpec) -> ReversibleCycleResult:
    """Energy book of the reversible cycle.

    Requires ``omega_t1 > omega_t2`` so the hot isotherm absorbs heat.
    The four energy changes telescope to zero; ``q_cold/q_hot`` equals
    ``-T_C/T_H`` and the efficiency is ``(q_hot + q_cold)/q_hot``.
    """
    r1, r2 = spec.adiabat_residuals()
    if max(r1, r2) > _ADIABAT_RTOL:
        raise DomainError(
            f"spec violates adiabat consistency (residuals {r1:.2e}, {r2:.2e}); "
            "build it with solve_adiabats")
    e1 = spin_energy(spec.omega_t1, spec.beta_hot, spec.hbar)
    e2 = spin_energy(spec.omega_t2, spec.beta_hot, spec.hbar)
    e3 = spin_energy(spec.omega_t3, spec.beta_cold, spec.hbar)
    e4 = spin_energy(spec.omega_t4, spec.beta_cold, spec.hbar)
    q_hot = e2 - e1
    if q_hot <= 0.0:
        raise NotAnEngineError(
            f"omega_t1={spec.omega_t1!r} must exceed omega_t2={spec.omega_t2!r} "
            "for the hot isotherm to absorb heat",
            net_work_sign=0 if q_hot == 0.0 else -1)
    q_cold = e4 - e3
    return ReversibleCycleResult(
        q_hot=q_hot,
        w_adiabat_1=e3 - e2,
        q_cold=q_cold,
        w_adiabat_2=e1 - e4,
        w_net_extracted=q_hot + q_cold,
        efficiency=(q_hot + q_cold) / q_hot,
    )


@dataclass(frozen=True)
class LowDissipationParams:
    """Finite-time cycle parameters: bath temperatures, per-cycle entropy
    change and the two 1/tau dissipation coefficients."""

    t_hot: float
    t_cold: float
    delta_s: float
    c1: float
    c2: float

    def __post_init__(self):
        _require_positive(t_hot=self.t_hot, t_cold=self.t_cold, delta_s=self.delta_s)
        if not self.t_hot > self.t_cold:
            raise DomainError("t_hot must exceed t_cold")
        if self.c1 < 0 or self.c2 < 0:
            raise DomainError("dissipation coefficients must be non-negative")


def irreversible_heats(p: LowDissipationParams, tau_cold: float,
                       tau_hot: float) -> tuple[float, float]:
    """Per-cycle heats (cold, hot) including the 1/tau dissipation.

    ``q_ir_cold = T_C*(-dS - C1/tau_cold)``,
    ``q_ir_hot  = T_H*( dS - C2/tau_hot)``; both approach the reversible
    values -T_C*dS and T_H*dS as the durations grow.
    """
    _require_positive(tau_cold=tau_cold, tau_hot=tau_hot)
    q_ir_cold = p.t_cold * (-p.delta_s - p.c1 / tau_cold)
    q_ir_hot = p.t_hot * (p.delta_s - p.c2 / tau_hot)
    return q_ir_cold, q_ir_hot


def power(p: LowDissipationParams, tau_cold: float, tau_hot: float) -> float:
    """Cycle-averaged extracted power
    ``[(T_H - T_C)dS - T_C*C1/tau_C - T_H*C2/tau_H] / (tau_H + tau_C)``."""
    _require_positive(tau_cold=tau_cold, tau_hot=tau_hot)
    num = ((p.t_hot - p.t_cold) * p.delta_s
           - p.t_cold * p.c1 / tau_cold
           - p.t_hot * p.c2 / tau_hot)
    return num / (tau_hot + tau_cold)


@dataclass(frozen=True)
class PowerOptimum:
    tau_cold_star: float
    tau_hot_star: float
    p_star: float
    efficiency_star: float


def maximize_power(p: LowDissipationParams,
                   tol: Tolerance = Tolerance(abs_tol=1e-12, rel_tol=1e-12),
                   ) -> PowerOptimum:
    """Maximize the cycle power over the two contact durations.

    The interior optimum satisfies ``T_C*C1/tau_C**2 = T_H*C2/tau_H**2``;
    for ``c1 == c2`` the efficiency at the optimum is the Curzon-Ahlborn
    value ``1 - sqrt(T_C/T_H)``.  Both dissipation coefficients must be
    positive: with either one zero the power supremum sits on the
    zero-duration boundary and no interior maximum exists.
    """
    if p.c1 <= 0.0 or p.c2 <= 0.0:
        raise NoInteriorMaximumError(
            "a dissipation-free contact (c1 or c2 zero) pushes the optimum "
            "to zero duration; no interior maximum")
    guess = 10.0 * max(p.c1, p.c2) / p.delta_s
    (tau_c, tau_h), p_star = maximize_2d(
        lambda tc, th: power(p, tc, th), (guess, guess), tol)
    _, q_hot = irreversible_heats(p, tau_c, tau_h)
    return PowerOptimum(
        tau_cold_star=tau_c,
        tau_hot_star=tau_h,
        p_star=p_star,
        efficiency_star=p_star * (tau_c + tau_h) / q_hot,
    )
