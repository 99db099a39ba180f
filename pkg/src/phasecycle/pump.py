"""Periodically driven two-state quantum dot coupled to two reservoirs.

The dot holds 0 or 1 electron; electrons tunnel on (+) or off (-) through
the left (L) or right (R) reservoir with periodically modulated rates.
The occupation probabilities obey ``dP/dt = L(t) P`` with the 2x2
generator built from the four rates.

Charge bookkeeping: the per-period charge pumped into reservoir ``a`` is
the time integral of ``G_a_minus * P1 - G_a_plus * P0``.  For slow driving
it splits into

* a dynamic part - the same integrand evaluated on the instantaneous
  stationary state ``pi(t)``, and
* a geometric part - the first-order correction ``R(t) dpi/dt`` pushed
  through the current matrices, which depends only on the closed contour
  traced in rate space (not on how fast it is traversed).

``R`` is the inverse of the generator restricted to the zero-sum subspace
(the generator itself is singular); for two states this is multiplication
by ``-1/(G_plus_total + G_minus_total)``.

Rate-space vectors are ordered ``(l_plus, r_plus, l_minus, r_minus)``
throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import (
    ConvergenceError,
    DegenerateGeneratorError,
    DomainError,
)
from .numerics import Tolerance, Trajectory, integrate_ode, null_vector_2

__all__ = [
    "Rates",
    "SinusoidalRate",
    "RateProtocol",
    "TwoStateDistribution",
    "PumpedCharge",
    "CurrentMatrices",
    "ExactResult",
    "ReservoirValues",
    "rate_matrix",
    "current_matrices",
    "stationary_state",
    "group_inverse_apply",
    "integrate_exact",
    "dynamic_charge",
    "geometric_charge",
    "vector_potential",
]

_TWO_PI = 2.0 * math.pi
_QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-13, limit=400)
PERIOD_MAP_TOL = 1e-10
PERIOD_MAP_CAP = 1000


class Rates(NamedTuple):
    """Instantaneous tunneling rates, canonical order (L+, R+, L-, R-)."""

    l_plus: float
    r_plus: float
    l_minus: float
    r_minus: float

    @property
    def total_plus(self) -> float:
        return self.l_plus + self.r_plus

    @property
    def total_minus(self) -> float:
        return self.l_minus + self.r_minus

    @property
    def total(self) -> float:
        return self.total_plus + self.total_minus


def _check_rates(rates) -> Rates:
    g = Rates(*map(float, rates))
    for name, v in zip(g._fields, g):
        if not (math.isfinite(v) and v >= 0.0):
            raise DomainError(f"rate {name} must be finite and >= 0, got {v!r}")
    return g


@dataclass(frozen=True)
class SinusoidalRate:
    """One periodically modulated rate: offset + amplitude*cos(angle + phase),
    with angle = drive_frequency * t."""

    offset: float
    amplitude: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        for name in ("offset", "amplitude", "phase"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    @property
    def minimum(self) -> float:
        return self.offset - abs(self.amplitude)

    def value(self, angle: float) -> float:
        return self.offset + self.amplitude * math.cos(angle + self.phase)

    def slope(self, angle: float) -> float:
        """d(rate)/d(angle)."""
        return -self.amplitude * math.sin(angle + self.phase)


@dataclass(frozen=True)
class RateProtocol:
    """Four common-period sinusoidal rates plus the drive frequency.

    Every rate must stay >= ``rate_floor`` (>= 0) over the period and the
    total escape rate must stay strictly positive, otherwise the
    stationary state degenerates somewhere along the drive.
    """

    gamma_l_plus: SinusoidalRate
    gamma_r_plus: SinusoidalRate
    gamma_l_minus: SinusoidalRate
    gamma_r_minus: SinusoidalRate
    drive_frequency: float
    rate_floor: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.drive_frequency) and self.drive_frequency > 0):
            raise DomainError("drive_frequency must be positive")
        if not (math.isfinite(self.rate_floor) and self.rate_floor >= 0):
            raise DomainError("rate_floor must be >= 0")
        for name, r in zip(("gamma_l_plus", "gamma_r_plus",
                            "gamma_l_minus", "gamma_r_minus"), self._rates()):
            if r.minimum < self.rate_floor:
                raise DomainError(
                    f"{name} dips to {r.minimum!r}, below the floor {self.rate_floor!r}")
        # min over t of the total escape rate: the four cosines share the
        # frequency, so they combine into a single sinusoid.
        combined = sum(r.amplitude * complex(math.cos(r.phase), math.sin(r.phase))
                       for r in self._rates())
        total_min = sum(r.offset for r in self._rates()) - abs(combined)
        if total_min <= 0.0:
            raise DomainError(
                f"total escape rate dips to {total_min!r}; must stay positive")

    def _rates(self) -> tuple[SinusoidalRate, ...]:
        return (self.gamma_l_plus, self.gamma_r_plus,
                self.gamma_l_minus, self.gamma_r_minus)

    @property
    def period(self) -> float:
        return _TWO_PI / self.drive_frequency

    @property
    def mean_rate(self) -> float:
        """Average over the four rates of their time averages."""
        return sum(r.offset for r in self._rates()) / 4.0

    def rates_at_angle(self, angle: float) -> Rates:
        return Rates(*(r.value(angle) for r in self._rates()))

    def rates_at(self, t: float) -> Rates:
        return self.rates_at_angle(self.drive_frequency * t)

    def slopes_at_angle(self, angle: float) -> np.ndarray:
        """d(rates)/d(angle), canonical order."""
        return np.array([r.slope(angle) for r in self._rates()])

    def time_reversed(self) -> "RateProtocol":
        """Protocol traversed backwards (t -> -t): phases negated."""
        def rev(r: SinusoidalRate) -> SinusoidalRate:
            return SinusoidalRate(r.offset, r.amplitude, -r.phase)
        return replace(self,
                       gamma_l_plus=rev(self.gamma_l_plus),
                       gamma_r_plus=rev(self.gamma_r_plus),
                       gamma_l_minus=rev(self.gamma_l_minus),
                       gamma_r_minus=rev(self.gamma_r_minus))

    def with_drive_frequency(self, drive_frequency: float) -> "RateProtocol":
        return replace(self, drive_frequency=drive_frequency)


@dataclass(frozen=True)
class TwoStateDistribution:
    """Probabilities of holding 0 or 1 electron; sums to one.  Negative
    round-off down to -1e-12 is clamped to zero."""

    p0: float
    p1: float

    def __post_init__(self):
        if abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise DomainError(f"probabilities must sum to 1, got {self.p0 + self.p1!r}")
        for name in ("p0", "p1"):
            v = getattr(self, name)
            if v < -1e-12 or not math.isfinite(v):
                raise DomainError(f"{name} must be a probability, got {v!r}")
            if v < 0.0:
                object.__setattr__(self, name, 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1])


@dataclass(frozen=True)
class PumpedCharge:
    """Per-period charge into each reservoir (electrons), tagged with how
    it was obtained: 'exact', 'dynamic' or 'geometric'."""

    n_right: float
    n_left: float
    kind: str

    def __post_init__(self):
        if self.kind not in ("exact", "dynamic", "geometric"):
            raise DomainError(f"unknown provenance {self.kind!r}")

    @property
    def n_total(self) -> float:
        return self.n_right + self.n_left


@dataclass(frozen=True)
class CurrentMatrices:
    """Current operators: on/off parts, their difference, and the same
    difference restricted to each reservoir's rates."""

    j_plus: np.ndarray
    j_minus: np.ndarray
    j_net: np.ndarray
    j_right: np.ndarray
    j_left: np.ndarray


class ReservoirValues(NamedTuple):
    right: float
    left: float


def rate_matrix(rates) -> np.ndarray:
    """2x2 generator: column sums vanish, off-diagonals are the total
    on/off rates."""
    g = _check_rates(rates)
    plus, minus = g.total_plus, g.total_minus
    if plus + minus <= 0.0:
        raise DegenerateGeneratorError("all rates vanish")
    return np.array([[-plus, minus], [plus, -minus]])


def current_matrices(rates) -> CurrentMatrices:
    """Current operators whose contraction with (1,1) and a distribution
    gives the instantaneous particle currents."""
    g = _check_rates(rates)
    j_plus = np.array([[0.0, g.total_minus], [0.0, 0.0]])
    j_minus = np.array([[0.0, 0.0], [g.total_plus, 0.0]])
    j_right = np.array([[0.0, g.r_minus], [-g.r_plus, 0.0]])
    j_left = np.array([[0.0, g.l_minus], [-g.l_plus, 0.0]])
    return CurrentMatrices(j_plus=j_plus, j_minus=j_minus,
                           j_net=j_plus - j_minus,
                           j_right=j_right, j_left=j_left)


def stationary_state(rates) -> TwoStateDistribution:
    """Normalized null vector of the generator:
    (G_minus, G_plus) / (G_plus + G_minus)."""
    v = null_vector_2(rate_matrix(rates))
    return TwoStateDistribution(p0=float(v[0]), p1=float(v[1]))


def group_inverse_apply(rates, v) -> np.ndarray:
    """Apply the generator's group inverse to a zero-sum vector.

    On the zero-sum subspace the generator acts as multiplication by
    ``-(G_plus + G_minus)``, so its inverse there is ``v -> -v/total``.
    Off that subspace the inverse is undefined and a DomainError is
    raised.
    """
    g = _check_rates(rates)
    v = np.asarray(v, dtype=float)
    if v.shape != (2,) or not np.all(np.isfinite(v)):
        raise DomainError("expected a finite 2-vector")
    scale = max(1.0, float(np.max(np.abs(v))))
    if abs(v[0] + v[1]) > 1e-12 * scale:
        raise DomainError(f"input must be zero-sum, got sum {v[0] + v[1]!r}")
    total = g.total
    if total <= 0.0:
        raise DegenerateGeneratorError("zero total rate: no spectral gap")
    return -v / total


def _stationary_vector(rates: Rates) -> np.ndarray:
    # closed form of null_vector_2(rate_matrix(.)) for hot loops
    s = rates.total
    if s <= 0.0:
        raise DegenerateGeneratorError("zero total rate")
    return np.array([rates.total_minus / s, rates.total_plus / s])


def _dpi0_dgamma(rates: Rates) -> np.ndarray:
    """Gradient of the empty-state stationary probability with respect to
    the four rates (canonical order)."""
    s = rates.total
    minus, plus = rates.total_minus, rates.total_plus
    return np.array([-minus, -minus, plus, plus]) / s**2


def _quad(f, lo, hi):
    res = quad(f, lo, hi, full_output=1, **_QUAD_OPTS)
    if len(res) == 4:
        raise ConvergenceError(f"quadrature failed: {res[3]}")
    return res[0], res[1]


@dataclass(frozen=True)
class ExactResult:
    """Master-equation solution in the periodic steady state."""

    trajectory: Trajectory
    pumped: PumpedCharge
    final_state: TwoStateDistribution
    periods_to_converge: int


def _augmented_rhs(protocol: RateProtocol):
    # state = (P0, P1, charge into R, charge into L)
    def rhs(t, y):
        g = protocol.rates_at(t)
        p0, p1 = y[0], y[1]
        dp0 = g.total_minus * p1 - g.total_plus * p0
        return np.array([dp0, -dp0,
                         g.r_minus * p1 - g.r_plus * p0,
                         g.l_minus * p1 - g.l_plus * p0])
    return rhs


def integrate_exact(protocol: RateProtocol, periods: int = 1,
                    tol: Tolerance = Tolerance(abs_tol=1e-12, rel_tol=1e-12),
                    ) -> ExactResult:
    """Integrate the driven master equation in the periodic steady state.

    The steady state is found by iterating the one-period map from the
    t=0 stationary distribution until ``|P(T) - P(0)| <= 1e-10`` (capped
    at 1000 iterations), then ``periods`` further periods are integrated;
    the reported charge is accumulated over the final one.  In the
    periodic steady state the total charge per period vanishes.
    """
    if not (isinstance(periods, int) and periods >= 1):
        raise DomainError("periods must be a positive integer")
    t_period = protocol.period
    rhs = _augmented_rhs(protocol)
    p = _stationary_vector(protocol.rates_at(0.0))

    converged = 0
    for it in range(1, PERIOD_MAP_CAP + 1):
        traj = integrate_ode(rhs, np.concatenate([p, [0.0, 0.0]]),
                             (0.0, t_period), tol)
        p_new = traj.final_state[:2]
        if float(np.linalg.norm(p_new - p)) <= PERIOD_MAP_TOL:
            converged = it
            p = p_new
            break
        p = p_new
    else:
        raise ConvergenceError(
            f"period map did not converge within {PERIOD_MAP_CAP} iterations")

    all_times: list[np.ndarray] = []
    all_states: list[np.ndarray] = []
    pumped = (0.0, 0.0)
    for k in range(periods):
        traj = integrate_ode(rhs, np.concatenate([p, [0.0, 0.0]]),
                             (0.0, t_period), tol)
        start = 1 if k > 0 else 0  # drop duplicated period boundary
        all_times.append(traj.times[start:] + k * t_period)
        all_states.append(traj.states[start:, :2])
        p = traj.final_state[:2]
        pumped = (float(traj.final_state[2]), float(traj.final_state[3]))

    psum = p[0] + p[1]
    final = TwoStateDistribution(p0=float(p[0] / psum), p1=float(p[1] / psum))
    return ExactResult(
        trajectory=Trajectory(times=np.concatenate(all_times),
                              states=np.vstack(all_states)),
        pumped=PumpedCharge(n_right=pumped[0], n_left=pumped[1], kind="exact"),
        final_state=final,
        periods_to_converge=converged,
    )


def dynamic_charge(protocol: RateProtocol) -> PumpedCharge:
    """Per-period charge carried by the instantaneous stationary state.

    Adaptive quadrature of the stationary-current integrands over one
    period (integrated in the drive angle; the 1/frequency factor restores
    the time measure).
    """
    ones = np.ones(2)

    def integrand(angle, which):
        g = protocol.rates_at_angle(angle)
        pi = null_vector_2(rate_matrix(g))
        jm = current_matrices(g)
        j = jm.j_right if which == "right" else jm.j_left
        return float(ones @ (j @ pi))

    scale = 1.0 / protocol.drive_frequency
    n_r, _ = _quad(lambda u: integrand(u, "right"), 0.0, _TWO_PI)
    n_l, _ = _quad(lambda u: integrand(u, "left"), 0.0, _TWO_PI)
    return PumpedCharge(n_right=n_r * scale, n_left=n_l * scale, kind="dynamic")


def geometric_charge(protocol: RateProtocol) -> PumpedCharge:
    """Geometric per-period charge: the stationary-state correction
    ``R dpi/dt`` pushed through the current matrices.

    The time derivative of the stationary state is evaluated in closed
    form from the rate-space gradient and the protocol slopes, so the
    integral is a pure contour integral in rate space: the result does not
    depend on the drive frequency.
    """
    ones = np.ones(2)

    def correction(angle):
        g = protocol.rates_at_angle(angle)
        d0 = float(_dpi0_dgamma(g) @ protocol.slopes_at_angle(angle))
        dpi = np.array([d0, -d0])  # dpi/d(angle), zero-sum by construction
        return g, group_inverse_apply(g, dpi)

    def integrand(angle, which):
        g, w = correction(angle)
        jm = current_matrices(g)
        j = jm.j_right if which == "right" else jm.j_left
        return float(ones @ (j @ w))

    n_r, _ = _quad(lambda u: integrand(u, "right"), 0.0, _TWO_PI)
    n_l, _ = _quad(lambda u: integrand(u, "left"), 0.0, _TWO_PI)
    return PumpedCharge(n_right=n_r, n_left=n_l, kind="geometric")


def vector_potential(rates, direction) -> ReservoirValues:
    """Rate-space vector potential contracted with a tangent vector.

    Linear in ``direction`` (canonical order); line-integrating it along
    a protocol's closed contour reproduces the geometric charge.
    """
    g = _check_rates(rates)
    d = np.asarray(direction, dtype=float)
    if d.shape != (4,) or not np.all(np.isfinite(d)):
        raise DomainError("direction must be a finite 4-vector")
    s = g.total
    if s <= 0.0:
        raise DomainError("vector potential undefined at zero total rate")
    u0 = float(_dpi0_dgamma(g) @ d)
    # <1| J_a R (dpi) > collapses to (G_a_plus + G_a_minus) * u0 / total
    return ReservoirValues(
        right=(g.r_plus + g.r_minus) * u0 / s,
        left=(g.l_plus + g.l_minus) * u0 / s,
    )
