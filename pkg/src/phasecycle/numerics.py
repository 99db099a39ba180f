"""Shared numerical plumbing.

Provides the pieces the physics modules lean on:

* ``coth`` with a small-argument series (the high-temperature regime probes
  arguments down to 1e-6 where ``1/tanh`` alone would be fine but the series
  keeps ``coth(x) - 1/x`` free of cancellation),
* an embedded Dormand-Prince 4(5) integrator with step rejection and a hard
  step budget,
* a derivative-free 2-D maximizer (Nelder-Mead in log coordinates) with a
  post-hoc central-difference stationarity check,
* the null-space solve for 2x2 generators with zero column sums.

All operations are pure; nothing here consumes entropy or shares state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .errors import (
    ConvergenceError,
    DegenerateGeneratorError,
    DomainError,
    IntegrationError,
    NoInteriorMaximumError,
)

__all__ = [
    "Tolerance",
    "Trajectory",
    "coth",
    "integrate_ode",
    "maximize_2d",
    "null_vector_2",
]

@dataclass(frozen=True)
class Tolerance:
    """Error-control knobs for the iterative routines.

    ``abs_tol`` and ``rel_tol`` are both applied (scaled mixed criterion);
    at least one must be positive.  ``max_steps`` caps the number of
    accepted-or-rejected integrator steps / optimizer iterations.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_steps: int = 1_000_000

    def __post_init__(self):
        if not (self.abs_tol >= 0.0 and self.rel_tol >= 0.0):
            raise DomainError("tolerances must be non-negative")
        if self.abs_tol + self.rel_tol <= 0.0:
            raise DomainError("abs_tol + rel_tol must be positive")
        if not (isinstance(self.max_steps, int) and self.max_steps > 0):
            raise DomainError("max_steps must be a positive integer")


def coth(x: float) -> float:
    """Hyperbolic cotangent.

    Uses ``1/tanh`` away from zero and the Laurent series
    ``1/x + x/3 - x^3/45`` for |x| < 1e-4, which keeps the equipartition
    regime (x -> 0) accurate without cancellation.
    """
    if x == 0.0 or not math.isfinite(x):
        raise DomainError(f"coth undefined at x={x!r}")
    ax = abs(x)
    if ax < 1e-4:
        return 1.0 / x + x / 3.0 - x**3 / 45.0
    return 1.0 / math.tanh(x)


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution of an initial-value problem (accepted steps)."""

    times: np.ndarray
    states: np.ndarray

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


# Dormand-Prince 5(4) tableau.  The fifth-order solution is propagated
# (local extrapolation); the embedded fourth-order difference drives the
# step controller.  Stage 7 equals the next step's stage 1 (FSAL).
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)
_DP_ERR = tuple(b5 - b4 for b5, b4 in zip(_DP_B5, _DP_B4))


def _error_norm(err: np.ndarray, scale: np.ndarray) -> float:
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_step(rhs, t0, y0, f0, t_end, atol, rtol):
    # Hairer-style cheap estimate: one Euler probe.
    scale = atol + rtol * np.abs(y0)
    d0 = _error_norm(y0, scale)
    d1 = _error_norm(f0, scale)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, t_end - t0)
    y1 = y0 + h0 * f0
    f1 = np.asarray(rhs(t0 + h0, y1), dtype=float)
    d2 = _error_norm(f1 - f0, scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, t_end - t0)


def integrate_ode(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: Sequence[float],
    t_span: tuple[float, float],
    tol: Tolerance = Tolerance(),
) -> Trajectory:
    """Integrate ``dy/dt = rhs(t, y)`` over ``t_span`` adaptively.

    Embedded Dormand-Prince 4(5) pair with step rejection.  The local error
    of every accepted step satisfies the mixed criterion
    ``|err_i| <= abs_tol + rel_tol * |y_i|`` (RMS over components).  The
    run is fully deterministic: identical inputs reproduce the trajectory
    bit for bit.

    Raises
    ------
    IntegrationError
        If more than ``tol.max_steps`` step attempts are needed; the error
        carries the last accepted ``(t, y)``.
    DomainError
        For a degenerate or reversed time span, or a non-finite state.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (math.isfinite(t0) and math.isfinite(t1)) or t1 <= t0:
        raise DomainError(f"t_span must be a non-degenerate forward interval, got {t_span!r}")
    y = np.array(y0, dtype=float)
    if y.ndim != 1 or not np.all(np.isfinite(y)):
        raise DomainError("y0 must be a finite 1-D vector")

    atol, rtol = tol.abs_tol, tol.rel_tol
    f = np.asarray(rhs(t0, y), dtype=float)
    if f.shape != y.shape:
        raise DomainError("rhs output shape does not match the state")
    h = _initial_step(rhs, t0, y, f, t1, atol, rtol)

    t = t0
    times = [t0]
    states = [y.copy()]
    k = [np.empty_like(y) for _ in range(7)]
    k[0] = f
    n_attempts = 0
    while t < t1:
        n_attempts += 1
        if n_attempts > tol.max_steps:
            raise IntegrationError(
                f"step budget of {tol.max_steps} exhausted at t={t!r}",
                t_last=t, y_last=y.copy(),
            )
        h = min(h, t1 - t)
        for i in range(1, 7):
            yi = y + h * sum(a * k[j] for j, a in enumerate(_DP_A[i]))
            k[i] = np.asarray(rhs(t + _DP_C[i] * h, yi), dtype=float)
        y5 = y + h * sum(b * k[j] for j, b in enumerate(_DP_B5) if b != 0.0)
        err = h * sum(e * k[j] for j, e in enumerate(_DP_ERR) if e != 0.0)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        enorm = _error_norm(err, scale)
        if enorm <= 1.0:
            t = t1 if (t1 - t) == h else t + h
            y = y5
            if not np.all(np.isfinite(y)):
                raise IntegrationError("state became non-finite", t_last=times[-1],
                                       y_last=states[-1])
            times.append(t)
            states.append(y.copy())
            k[0] = k[6]  # FSAL
            factor = 5.0 if enorm == 0.0 else min(5.0, max(0.2, 0.9 * enorm ** -0.2))
        else:
            # rejection leaves (t, y) and hence k[0] = rhs(t, y) unchanged
            factor = max(0.2, 0.9 * enorm ** -0.2)
        h *= factor
        if h <= 0.0 or not math.isfinite(h):
            raise IntegrationError("step size collapsed", t_last=t, y_last=y.copy())
    return Trajectory(times=np.array(times), states=np.array(states))


def _central_gradient(f, x, y, hx, hy):
    gx = (f(x + hx, y) - f(x - hx, y)) / (2.0 * hx)
    gy = (f(x, y + hy) - f(x, y - hy)) / (2.0 * hy)
    return gx, gy


def _central_curvature(f, x, y, hx, hy, f0):
    cx = (f(x + hx, y) - 2.0 * f0 + f(x - hx, y)) / hx**2
    cy = (f(x, y + hy) - 2.0 * f0 + f(x, y - hy)) / hy**2
    return cx, cy


_LOG_ESCAPE = 60.0  # |log tau| beyond this counts as escape to the boundary


def maximize_2d(
    f: Callable[[float, float], float],
    guess: tuple[float, float],
    tol: Tolerance = Tolerance(),
) -> tuple[tuple[float, float], float]:
    """Maximize a smooth function of two positive reals.

    Nelder-Mead on the log-transformed coordinates (so the positive
    quadrant is the whole plane), restarted once, then validated by a
    central-finite-difference stationarity check with step
    ``1e-5 x coordinate``.

    Returns ``((x*, y*), f(x*, y*))``.

    Raises
    ------
    NoInteriorMaximumError
        If the iterates escape toward the quadrant boundary (no interior
        maximum).
    ConvergenceError
        If the returned point fails the stationarity check.
    """
    x0, y0 = float(guess[0]), float(guess[1])
    if not (x0 > 0.0 and y0 > 0.0 and math.isfinite(x0) and math.isfinite(y0)):
        raise DomainError(f"guess must be a finite positive pair, got {guess!r}")

    def neg_log(u):
        try:
            val = f(math.exp(u[0]), math.exp(u[1]))
        except (OverflowError, ValueError):
            return 1e300
        if not math.isfinite(val):
            return 1e300
        return -val

    u = np.array([math.log(x0), math.log(y0)])
    for _ in range(2):
        res = optimize.minimize(
            neg_log, u, method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-15,
                     "maxiter": min(tol.max_steps, 20000), "maxfev": 40000},
        )
        u = res.x
        if np.max(np.abs(u)) > _LOG_ESCAPE:
            raise NoInteriorMaximumError(
                "iterates escaped the positive quadrant; the objective has "
                "no interior maximum")

    xs, ys = math.exp(u[0]), math.exp(u[1])
    fmax = f(xs, ys)
    hx, hy = 1e-5 * xs, 1e-5 * ys
    gx, gy = _central_gradient(f, xs, ys, hx, hy)
    cx, cy = _central_curvature(f, xs, ys, hx, hy, fmax)
    # A point whose value is within ftol of the true maximum of a locally
    # quadratic function has gradient component at most 2*sqrt(curv*ftol).
    ftol = tol.abs_tol + tol.rel_tol * abs(fmax) + 8.0 * np.finfo(float).eps * abs(fmax)
    for g, c, h in ((gx, cx, hx), (gy, cy, hy)):
        floor = 64.0 * np.finfo(float).eps * (abs(fmax) + tol.abs_tol) / h
        bound = max(floor, 2.0 * math.sqrt(max(c, -c, 1e-300) * ftol))
        if abs(g) > bound:
            raise ConvergenceError(
                f"stationarity check failed: |df|={abs(g):.3e} > {bound:.3e}")
    return (xs, ys), fmax


def null_vector_2(m) -> np.ndarray:
    """Probability-normalized null vector of a 2x2 generator.

    ``m`` must have zero column sums and non-negative off-diagonal
    entries.  Returns ``v`` with ``m @ v = 0``, ``v >= 0`` and
    ``v[0] + v[1] = 1``.

    Raises
    ------
    DomainError
        If the matrix is not a generator (bad shape, column sums, signs).
    DegenerateGeneratorError
        If ``m`` is the zero matrix (every distribution is stationary).
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        raise DomainError("expected a finite 2x2 matrix")
    scale = np.max(np.abs(m))
    col_sums = m.sum(axis=0)
    if np.any(np.abs(col_sums) > 1e-12 * max(scale, 1.0)):
        raise DomainError(f"column sums must vanish, got {col_sums!r}")
    b, a = m[0, 1], m[1, 0]
    if min(a, b) < -1e-12 * max(scale, 1.0):
        raise DomainError("off-diagonal entries must be non-negative")
    a, b = max(a, 0.0), max(b, 0.0)
    s = a + b
    if s <= 0.0:
        raise DegenerateGeneratorError(
            "zero generator: stationary state is not unique")
    return np.array([b / s, a / s])
