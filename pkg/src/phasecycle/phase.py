"""Geometric and dynamical phases of two-level pure states.

A path of states on the Bloch sphere accumulates

* a connection term: minus the summed args of consecutive overlaps
  (Bargmann form; converges to the line integral of the connection as the
  discretization refines and is insensitive to per-sample gauge noise),
* a Pancharatnam endpoint term: the arg of the overlap between the first
  and last sample.

Their sum is gauge invariant - redressing every sample with an arbitrary
phase moves the two terms by opposite amounts - and reduces to the usual
closed-loop geometric phase (minus half the enclosed solid angle for
spin-1/2) when the path closes.  For open paths the endpoint term is what
makes the total well defined.

All reported phases are principal values in (-pi, pi]; the two constituent
terms are kept so a caller can recover the unwrapped sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, PathRefinementError, UndefinedPhaseError

__all__ = [
    "BlochPath",
    "EngineCoordinatePath",
    "PhaseResult",
    "principal_value",
    "spin_eigenstate",
    "pancharatnam_arg",
    "connection_integral",
    "geometric_phase",
    "dynamical_phase",
    "polarization_beta",
    "engine_path_phase",
]

_OVERLAP_FLOOR = 1e-12
_TWO_PI = 2.0 * math.pi


def principal_value(angle: float) -> float:
    """Wrap an angle to the principal branch (-pi, pi]."""
    a = math.remainder(angle, _TWO_PI)  # lands in [-pi, pi]
    return math.pi if a == -math.pi else a


def spin_eigenstate(theta: float, phi: float) -> np.ndarray:
    """Spin-up eigenstate along the (colatitude, azimuth) direction:
    (cos(theta/2), e^{i phi} sin(theta/2)).

    This gauge section is smooth everywhere except the south pole;
    paths through theta = pi are rejected at path construction.
    """
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"colatitude must lie in [0, pi], got {theta!r}")
    if not math.isfinite(phi):
        raise DomainError("azimuth must be finite")
    return np.array([math.cos(0.5 * theta),
                     complex(math.cos(phi), math.sin(phi)) * math.sin(0.5 * theta)])


@dataclass(frozen=True)
class BlochPath:
    """Discretized curve of normalized two-component states.

    ``samples`` is (N, 2) complex with unit-norm rows; ``times`` strictly
    increases; ``energies`` (optional) carries the instantaneous level
    energy for the dynamical phase.  Consecutive samples must overlap
    (no antipodal jumps): refine the discretization until they do.
    """

    samples: np.ndarray
    times: np.ndarray
    energies: Optional[np.ndarray] = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        times = np.asarray(self.times, dtype=float)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "times", times)
        if samples.ndim != 2 or samples.shape[1] != 2 or samples.shape[0] < 2:
            raise DomainError("samples must be an (N >= 2, 2) complex array")
        if times.shape != (samples.shape[0],):
            raise DomainError("times must match the number of samples")
        if not np.all(np.isfinite(times)) or np.any(np.diff(times) <= 0.0):
            raise DomainError("times must be finite and strictly increasing")
        norms = np.linalg.norm(samples, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise DomainError("every sample must have unit norm (within 1e-12)")
        if np.min(np.abs(self.overlaps())) <= _OVERLAP_FLOOR:
            raise PathRefinementError(
                "consecutive samples are orthogonal; refine the path")
        if self.energies is not None:
            energies = np.asarray(self.energies, dtype=float)
            object.__setattr__(self, "energies", energies)
            if energies.shape != times.shape or not np.all(np.isfinite(energies)):
                raise DomainError("energies must be finite and match times")

    def __len__(self) -> int:
        return self.samples.shape[0]

    def overlaps(self) -> np.ndarray:
        """Consecutive overlaps <psi_k|psi_{k+1}>."""
        return np.einsum("ij,ij->i", self.samples[:-1].conj(), self.samples[1:])

    def reversed(self) -> "BlochPath":
        """Same curve traversed backwards (times relabelled to keep them
        increasing)."""
        e = None if self.energies is None else self.energies[::-1].copy()
        return BlochPath(samples=self.samples[::-1].copy(),
                         times=(-self.times[::-1]).copy(), energies=e)

    def segment(self, start: int, stop: int) -> "BlochPath":
        """Sub-path over sample indices [start, stop] inclusive."""
        e = None if self.energies is None else self.energies[start:stop + 1]
        return BlochPath(samples=self.samples[start:stop + 1],
                         times=self.times[start:stop + 1], energies=e)

    @classmethod
    def from_angles(cls, theta, phi, times=None, energies=None) -> "BlochPath":
        """Build the path of spin-up eigenstates along (theta(t), phi(t))."""
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        if theta.shape != phi.shape or theta.ndim != 1:
            raise DomainError("theta and phi must be 1-D arrays of equal length")
        if np.any(theta < 0.0) or np.any(theta >= math.pi):
            raise DomainError(
                "colatitudes must lie in [0, pi); the gauge section is "
                "singular at the south pole")
        if times is None:
            times = np.linspace(0.0, 1.0, theta.size)
        samples = np.empty((theta.size, 2), dtype=complex)
        samples[:, 0] = np.cos(0.5 * theta)
        samples[:, 1] = np.exp(1j * phi) * np.sin(0.5 * theta)
        return cls(samples=samples, times=np.asarray(times, dtype=float),
                   energies=energies)


def pancharatnam_arg(psi_start, psi_end) -> float:
    """Arg of the overlap <psi_start|psi_end>, principal value.

    Undefined (raises) for orthogonal states.
    """
    a = np.asarray(psi_start, dtype=complex).ravel()
    b = np.asarray(psi_end, dtype=complex).ravel()
    if a.shape != b.shape:
        raise DomainError("states must have equal dimension")
    z = complex(np.vdot(a, b))
    if abs(z) <= _OVERLAP_FLOOR:
        raise UndefinedPhaseError(
            f"states are orthogonal (|overlap| = {abs(z):.2e}); the "
            "Pancharatnam phase is undefined")
    return principal_value(math.atan2(z.imag, z.real))


def _half_resolution_indices(n: int) -> np.ndarray:
    idx = np.arange(0, n, 2)
    if idx[-1] != n - 1:
        idx = np.append(idx, n - 1)
    return idx


def _bargmann_sum(samples: np.ndarray) -> float:
    o = np.einsum("ij,ij->i", samples[:-1].conj(), samples[1:])
    if np.min(np.abs(o)) <= _OVERLAP_FLOOR:
        raise PathRefinementError(
            "consecutive samples are orthogonal; refine the path")
    return -math.fsum(np.angle(o))


def connection_integral(path: BlochPath) -> tuple[float, float]:
    """Discretized connection line integral along the path.

    Returns ``(value, error_estimate)``: minus the summed args of the
    consecutive overlaps, plus a Richardson error estimate obtained by
    comparing against the half-resolution sum (second-order convergence).
    """
    value = _bargmann_sum(path.samples)
    half = _bargmann_sum(path.samples[_half_resolution_indices(len(path))])
    estimate = abs(value - half) / 3.0 + 1e-14
    return value, estimate


@dataclass(frozen=True)
class PhaseResult:
    """Phases accumulated along a path (radians).

    ``total_geometric`` is the principal value of
    ``pancharatnam_term + connection_term`` (the unwrapped sum is
    available from the two terms); ``connection_error`` is the Richardson
    estimate of the discretization error.  ``dynamical`` is present when
    the path carries energies.
    """

    total_geometric: float
    pancharatnam_term: float
    connection_term: float
    connection_error: float
    dynamical: Optional[float] = None
    dynamical_error: Optional[float] = None


def geometric_phase(path: BlochPath) -> PhaseResult:
    """Gauge-invariant geometric phase of an (open or closed) path.

    Pancharatnam endpoint term plus the discretized connection integral;
    redressing any sample with an arbitrary phase shifts the two terms by
    opposite amounts and leaves the principal-value total unchanged.  For
    a closed path this is the ordinary closed-loop geometric phase.
    """
    panch = pancharatnam_arg(path.samples[0], path.samples[-1])
    conn, err = connection_integral(path)
    dyn = dyn_err = None
    if path.energies is not None:
        dyn, dyn_err = dynamical_phase(path)
    return PhaseResult(
        total_geometric=principal_value(panch + conn),
        pancharatnam_term=panch,
        connection_term=conn,
        connection_error=err,
        dynamical=dyn,
        dynamical_error=dyn_err,
    )


def dynamical_phase(path: BlochPath) -> tuple[float, float]:
    """Dynamical phase -integral(E dt) by trapezoidal quadrature.

    Returns ``(value, error_estimate)`` with a half-resolution Richardson
    estimate.  Requires the path to carry an energy track.
    """
    if path.energies is None:
        raise DomainError("path carries no energy track")
    value = -float(np.trapezoid(path.energies, path.times))
    idx = _half_resolution_indices(len(path))
    half = -float(np.trapezoid(path.energies[idx], path.times[idx]))
    return value, abs(value - half) / 3.0 + 1e-14


def polarization_beta(omega_t: float, s_z: float) -> float:
    """Inverse temperature at which a field ``omega_t`` produces the
    polarization ``s_z``: inverts s_z = -tanh(beta*omega_t/2)/2.

    ``s_z = 0`` maps to ``beta = 0`` (infinite temperature).
    """
    if not (math.isfinite(omega_t) and omega_t > 0.0):
        raise DomainError("omega_t must be positive")
    if not (-0.5 < s_z <= 0.0):
        raise DomainError(f"s_z must lie in (-1/2, 0], got {s_z!r}")
    return 2.0 * math.atanh(-2.0 * s_z) / omega_t


@dataclass(frozen=True)
class EngineCoordinatePath:
    """Path of spin thermal states in (field, polarization) coordinates.

    Each point is ``(omega_t, s_z)``; the inverse temperature is recovered
    per point.  ``directions`` optionally gives the field direction as
    (colatitude, azimuth) rows - when absent the field stays along +z and
    the induced eigenstate path is constant (zero geometric phase).
    ``times`` defaults to a uniform grid on [0, 1].
    """

    points: np.ndarray
    directions: Optional[np.ndarray] = None
    times: Optional[np.ndarray] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise DomainError("points must be an (N >= 2, 2) array")
        if np.any(pts[:, 0] <= 0.0) or not np.all(np.isfinite(pts)):
            raise DomainError("fields must be positive and finite")
        if np.any(pts[:, 1] <= -0.5) or np.any(pts[:, 1] > 0.0):
            raise DomainError("polarizations must lie in (-1/2, 0]")
        if self.directions is not None:
            d = np.asarray(self.directions, dtype=float)
            object.__setattr__(self, "directions", d)
            if d.shape != pts.shape:
                raise DomainError("directions must be (N, 2) (theta, phi) rows")
        t = (np.linspace(0.0, 1.0, pts.shape[0]) if self.times is None
             else np.asarray(self.times, dtype=float))
        object.__setattr__(self, "times", t)
        if t.shape != (pts.shape[0],) or np.any(np.diff(t) <= 0.0):
            raise DomainError("times must be strictly increasing, one per point")
        betas = np.array([polarization_beta(w, s) for w, s in pts])
        object.__setattr__(self, "betas", betas)
        residual = np.abs(pts[:, 1] + 0.5 * np.tanh(0.5 * betas * pts[:, 0]))
        if np.max(residual) > 1e-12:
            raise DomainError("inverse-temperature recovery failed")

    @classmethod
    def from_isotherm(cls, omega_start: float, omega_stop: float, beta: float,
                      n: int, times=None) -> "EngineCoordinatePath":
        """Discretized isotherm: field swept at fixed inverse temperature."""
        if n < 2:
            raise DomainError("need at least two points")
        omegas = np.linspace(omega_start, omega_stop, n)
        s_z = -0.5 * np.tanh(0.5 * beta * omegas)
        return cls(points=np.column_stack([omegas, s_z]), times=times)

    def energies(self) -> np.ndarray:
        """Instantaneous spin energies omega_t * s_z (hbar = 1)."""
        return self.points[:, 0] * self.points[:, 1]


def engine_path_phase(path: EngineCoordinatePath) -> PhaseResult:
    """Phases along an engine-coordinate path.

    The induced Bloch path follows the instantaneous spin-up eigenstate of
    the field direction (constant +z when no directions are given, in
    which case the geometric phase vanishes identically and only the
    dynamical phase survives).
    """
    n = path.points.shape[0]
    if path.directions is None:
        theta = np.zeros(n)
        phi = np.zeros(n)
    else:
        theta, phi = path.directions[:, 0], path.directions[:, 1]
    bloch = BlochPath.from_angles(theta, phi, times=path.times,
                                  energies=path.energies())
    return geometric_phase(bloch)
