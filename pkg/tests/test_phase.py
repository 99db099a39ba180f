import math

import numpy as np
import pytest
from scipy.integrate import fixed_quad

from phasecycle.errors import (
    DomainError,
    PathRefinementError,
    UndefinedPhaseError,
)
from phasecycle.phase import (
    BlochPath,
    EngineCoordinatePath,
    connection_integral,
    dynamical_phase,
    engine_path_phase,
    geometric_phase,
    pancharatnam_arg,
    polarization_beta,
    principal_value,
    spin_eigenstate,
)

SQRT_HALF = math.sqrt(0.5)

PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]]),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def circular_distance(a, b):
    return abs(principal_value(a - b))


def colatitude_loop(theta0, n):
    phi = np.linspace(0.0, 2.0 * math.pi, n)
    return BlochPath.from_angles(np.full(n, theta0), phi)


def random_smooth_path(rng, n=301):
    t = np.linspace(0.0, 1.0, n)
    theta = (1.2 + 0.6 * rng.uniform(-1, 1) * np.cos(2 * np.pi * t + rng.uniform(0, 6))
             + 0.3 * rng.uniform(-1, 1) * np.cos(4 * np.pi * t))
    theta = np.clip(theta, 0.15, math.pi - 0.15)
    phi = (rng.uniform(-2, 2) * np.sin(2 * np.pi * t)
           + rng.uniform(-1, 1) * np.cos(6 * np.pi * t))
    return BlochPath.from_angles(theta, phi, times=t)


class TestSpinEigenstate:
    def test_north_pole(self):
        for phi in (0.0, 1.3, 5.0):
            psi = spin_eigenstate(0.0, phi)
            assert psi[0] == 1.0 and psi[1] == 0.0

    def test_equator_x_axis(self):
        psi = spin_eigenstate(math.pi / 2, 0.0)
        assert psi[0] == pytest.approx(SQRT_HALF, rel=1e-15)
        assert psi[1] == pytest.approx(SQRT_HALF, rel=1e-15)

    def test_is_up_eigenstate_of_field_direction(self, rng):
        for _ in range(50):
            theta = rng.uniform(0.0, math.pi)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            n_dot_sigma = (math.sin(theta) * math.cos(phi) * PAULI["x"]
                           + math.sin(theta) * math.sin(phi) * PAULI["y"]
                           + math.cos(theta) * PAULI["z"])
            psi = spin_eigenstate(theta, phi)
            expectation = np.vdot(psi, n_dot_sigma @ psi).real
            assert abs(expectation - 1.0) <= 1e-12

    def test_rejects_bad_colatitude(self):
        with pytest.raises(DomainError):
            spin_eigenstate(-0.1, 0.0)


class TestPancharatnam:
    def test_identical_states(self):
        psi = spin_eigenstate(1.0, 0.5)
        assert pancharatnam_arg(psi, psi) == 0.0

    def test_pure_phase(self):
        psi = spin_eigenstate(1.0, 0.5)
        assert pancharatnam_arg(psi, np.exp(2.0j) * psi) == pytest.approx(
            2.0, rel=1e-12)
        # wraps to the principal branch
        assert pancharatnam_arg(psi, np.exp(4.0j) * psi) == pytest.approx(
            4.0 - 2.0 * math.pi, rel=1e-12)

    def test_north_pole_vs_equator(self):
        assert pancharatnam_arg(spin_eigenstate(0.0, 0.0),
                                spin_eigenstate(math.pi / 2, 0.0)) == 0.0

    def test_orthogonal_states_undefined(self):
        with pytest.raises(UndefinedPhaseError):
            pancharatnam_arg(np.array([1.0, 0.0]), np.array([0.0, 1.0]))


class TestConnectionIntegral:
    def test_constant_path(self):
        samples = np.tile(spin_eigenstate(1.0, 0.7), (5, 1))
        path = BlochPath(samples=samples, times=np.arange(5.0))
        value, err = connection_integral(path)
        assert value == 0.0 and err <= 1e-12

    def test_real_meridian_has_zero_connection(self):
        theta = np.linspace(0.0, math.pi / 2, 101)
        path = BlochPath.from_angles(theta, np.zeros_like(theta))
        value, _ = connection_integral(path)
        assert value == 0.0

    def test_splitting_is_exact(self, rng):
        path = random_smooth_path(rng)
        k = 130
        whole, _ = connection_integral(path)
        part1, _ = connection_integral(path.segment(0, k))
        part2, _ = connection_integral(path.segment(k, len(path) - 1))
        assert abs(whole - (part1 + part2)) <= 2e-13


class TestGeometricPhase:
    def test_equator_loop_minus_pi(self):
        res = geometric_phase(colatitude_loop(math.pi / 2, 10_001))
        unwrapped = res.pancharatnam_term + res.connection_term
        assert abs(unwrapped + math.pi) <= 1e-4
        # fine-discretization oracle
        oracle = geometric_phase(colatitude_loop(math.pi / 2, 100_001))
        assert circular_distance(res.total_geometric, oracle.total_geometric) <= 1e-6

    def test_third_colatitude_loop(self):
        res = geometric_phase(colatitude_loop(math.pi / 3, 10_001))
        unwrapped = res.pancharatnam_term + res.connection_term
        assert abs(unwrapped + math.pi / 2) <= 1e-4

    def test_solid_angle_law(self):
        for theta0 in (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3):
            res = geometric_phase(colatitude_loop(theta0, 10_001))
            unwrapped = res.pancharatnam_term + res.connection_term
            assert abs(unwrapped + math.pi * (1.0 - math.cos(theta0))) <= 1e-4

    def test_geodesic_arc_zero_phase_two_resolutions(self):
        for n in (1_001, 10_001):
            theta = np.linspace(0.0, math.pi / 2, n)
            res = geometric_phase(BlochPath.from_angles(theta, np.zeros(n)))
            assert abs(res.total_geometric) <= 1e-6

    def test_gauge_invariance_with_moving_terms(self, rng):
        path = random_smooth_path(rng)
        base = geometric_phase(path)
        chi = rng.uniform(0.0, 2.0 * math.pi, size=len(path))
        redressed = BlochPath(samples=path.samples * np.exp(1j * chi)[:, None],
                              times=path.times)
        res = geometric_phase(redressed)
        assert circular_distance(res.total_geometric, base.total_geometric) <= 1e-9
        assert abs(res.pancharatnam_term - base.pancharatnam_term) > 1e-3
        assert abs(res.connection_term - base.connection_term) > 1e-3

    def test_path_reversal_antisymmetry(self, rng):
        path = random_smooth_path(rng)
        fwd = geometric_phase(path)
        bwd = geometric_phase(path.reversed())
        assert circular_distance(fwd.total_geometric, -bwd.total_geometric) <= 1e-9

    def test_doubling_bounded_by_richardson_estimate(self, rng):
        t_coarse = np.linspace(0.0, 1.0, 401)
        t_fine = np.linspace(0.0, 1.0, 801)

        def build(t):
            theta = 1.0 + 0.5 * np.cos(2 * np.pi * t)
            phi = 1.5 * np.sin(2 * np.pi * t) + 0.4 * np.cos(4 * np.pi * t)
            return BlochPath.from_angles(theta, phi, times=t)

        coarse = geometric_phase(build(t_coarse))
        fine = geometric_phase(build(t_fine))
        change = circular_distance(fine.total_geometric, coarse.total_geometric)
        assert change <= coarse.connection_error

    def test_closed_loop_total_is_principal_value(self):
        res = geometric_phase(colatitude_loop(2 * math.pi / 3, 10_001))
        unwrapped = res.pancharatnam_term + res.connection_term
        assert res.total_geometric == pytest.approx(
            principal_value(unwrapped), abs=1e-15)
        # -3pi/2 wraps to +pi/2
        assert res.total_geometric == pytest.approx(math.pi / 2, abs=1e-4)


class TestDynamicalPhase:
    def test_zero_energy(self):
        n = 11
        path = BlochPath.from_angles(np.full(n, 1.0), np.zeros(n),
                                     energies=np.zeros(n))
        value, _ = dynamical_phase(path)
        assert value == 0.0

    def test_constant_energy(self):
        n = 11
        t = np.linspace(0.0, 3.0, n)
        path = BlochPath.from_angles(np.full(n, 1.0), np.zeros(n), times=t,
                                     energies=np.full(n, 2.5))
        value, _ = dynamical_phase(path)
        assert value == pytest.approx(-7.5, rel=1e-14)

    def test_sine_energy_closed_form(self):
        n = 2_001
        t = np.linspace(0.0, math.pi, n)
        path = BlochPath.from_angles(np.full(n, 1.0), np.zeros(n), times=t,
                                     energies=np.sin(t))
        value, estimate = dynamical_phase(path)
        assert abs(value + 2.0) <= 1e-5
        assert abs(value + 2.0) <= 3.0 * estimate + 1e-12

    def test_requires_energy_track(self):
        path = colatitude_loop(1.0, 11)
        with pytest.raises(DomainError):
            dynamical_phase(path)


class TestBlochPathValidation:
    def test_rejects_non_unit_samples(self):
        with pytest.raises(DomainError):
            BlochPath(samples=np.array([[1.0, 1.0], [1.0, 0.0]], dtype=complex),
                      times=np.array([0.0, 1.0]))

    def test_rejects_antipodal_jump(self):
        with pytest.raises(PathRefinementError):
            BlochPath(samples=np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex),
                      times=np.array([0.0, 1.0]))

    def test_rejects_non_increasing_times(self):
        samples = np.tile(spin_eigenstate(1.0, 0.0), (3, 1))
        with pytest.raises(DomainError):
            BlochPath(samples=samples, times=np.array([0.0, 1.0, 1.0]))

    def test_rejects_south_pole_in_builder(self):
        with pytest.raises(DomainError):
            BlochPath.from_angles(np.array([0.0, math.pi]), np.zeros(2))


class TestEngineCoordinatePath:
    def test_beta_recovery(self, rng):
        for _ in range(100):
            omega = rng.uniform(0.1, 5.0)
            # below tanh saturation the round trip is exact; past it only
            # the defining residual is meaningful (checked next)
            beta = rng.uniform(0.01, 6.0) / omega
            s_z = -0.5 * math.tanh(0.5 * beta * omega)
            assert polarization_beta(omega, s_z) == pytest.approx(beta, rel=1e-12)

    def test_recovery_residual(self, rng):
        for _ in range(100):
            omega = rng.uniform(0.1, 5.0)
            s_z = rng.uniform(-0.5 + 1e-9, 0.0)
            beta = polarization_beta(omega, s_z)
            assert abs(s_z + 0.5 * math.tanh(0.5 * beta * omega)) <= 1e-12

    def test_zero_polarization_is_infinite_temperature(self):
        assert polarization_beta(2.0, 0.0) == 0.0

    def test_rejects_saturated_polarization(self):
        with pytest.raises(DomainError):
            polarization_beta(1.0, -0.5)

    def test_isotherm_betas_constant(self):
        path = EngineCoordinatePath.from_isotherm(2.0, 1.0, beta=0.5, n=64)
        assert np.allclose(path.betas, 0.5, atol=1e-12)

    def test_rejects_positive_polarization(self):
        with pytest.raises(DomainError):
            EngineCoordinatePath(points=np.array([[1.0, 0.1], [1.1, 0.1]]))


class TestEnginePathPhase:
    def test_fixed_axis_geometric_phase_vanishes(self):
        path = EngineCoordinatePath.from_isotherm(2.0, 1.0, beta=0.5, n=256)
        res = engine_path_phase(path)
        assert abs(res.total_geometric) <= 1e-10
        assert res.dynamical is not None

    def test_isotherm_dynamical_against_quadrature_oracle(self):
        n = 2_001
        beta = 0.5
        path = EngineCoordinatePath.from_isotherm(2.0, 1.0, beta=beta, n=n)
        res = engine_path_phase(path)

        def energy(t):  # field sweeps linearly over the unit interval
            omega = 2.0 - t
            return -(omega / 2.0) * np.tanh(0.5 * beta * omega)

        oracle, _ = fixed_quad(energy, 0.0, 1.0, n=64)
        assert abs(res.dynamical + oracle) <= 1e-7

    def test_equator_direction_loop_minus_pi_for_any_field_profile(self):
        n = 10_001
        t = np.linspace(0.0, 1.0, n)
        directions = np.column_stack([np.full(n, math.pi / 2),
                                      2.0 * math.pi * t])
        for omega in (np.full(n, 1.0), 1.0 + 0.5 * np.sin(2 * np.pi * t)):
            s_z = -0.5 * np.tanh(0.5 * omega)  # beta = 1
            path = EngineCoordinatePath(
                points=np.column_stack([omega, s_z]),
                directions=directions, times=t)
            res = engine_path_phase(path)
            unwrapped = res.pancharatnam_term + res.connection_term
            assert abs(unwrapped + math.pi) <= 1e-4
