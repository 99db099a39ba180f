"""Acceptance suite: one test per release criterion, each printed as a
pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).

Criteria cover the four computational families plus the CLI determinism
guarantee; tolerances are pinned here and must not be loosened.
"""

import json
import math
import subprocess
import sys
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import build_quadrature_loop
from test_carnot import random_cycle_spec, random_low_dissipation
from test_otto import golden_section_argmax, random_engine_spec
from test_phase import circular_distance, colatitude_loop, random_smooth_path
from test_pump import build_plus_loop, random_protocol

from phasecycle import carnot, otto, phase, pump


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"[criterion {number:2d}] FAIL - {description}")
        raise
    print(f"[criterion {number:2d}] PASS - {description}")


def test_criterion_1_otto_efficiency_identity(rng):
    with criterion(1, "Otto efficiency identity to 1e-12 relative over 1000 specs"):
        for _ in range(1000):
            res = otto.cycle(random_engine_spec(rng))
            eta = res.efficiency
            assert abs(-(res.w1 + res.w3) / res.q2 - eta) <= 1e-12 * eta


def test_criterion_2_otto_cycle_closure(rng):
    with criterion(2, "Otto cycle closure to 1e-12 relative over 1000 specs"):
        for _ in range(1000):
            res = otto.cycle(random_engine_spec(rng))
            total = res.w1 + res.q2 + res.w3 + res.q4
            scale = max(abs(res.w1), abs(res.q2), abs(res.w3), abs(res.q4))
            assert abs(total) <= 1e-12 * scale


def test_criterion_3_curzon_ahlborn_at_max_power():
    with criterion(3, "Curzon-Ahlborn efficiency from exact max-power search"):
        omega1 = 1.0
        for t_ratio in (2.0, 4.0, 9.0):
            beta_cold = 2e-3  # keeps every thermal argument below 0.01
            beta_hot = beta_cold / t_ratio

            def net_work(r):
                res = otto.cycle(otto.OttoSpec(
                    omega1=omega1, omega2=omega1 * r,
                    beta_cold=beta_cold, beta_hot=beta_hot))
                return res.w_net_extracted

            r_star = golden_section_argmax(net_work, 1.0 + 1e-9,
                                           t_ratio - 1e-9)
            eta = 1.0 - 1.0 / r_star
            assert abs(eta - (1.0 - math.sqrt(1.0 / t_ratio))) <= 1e-3


def test_criterion_4_reversible_carnot_identity(rng):
    with criterion(4, "Carnot identity Q_C/Q_H = -T_C/T_H and eta = 1 - T_C/T_H"):
        for _ in range(1000):
            spec, kappa = random_cycle_spec(rng)
            res = carnot.reversible_cycle(spec)
            assert abs(res.q_cold / res.q_hot + kappa) <= 1e-12 * kappa
            assert abs(res.efficiency - (1.0 - kappa)) <= 1e-12 * (1.0 - kappa)


def test_criterion_5_low_dissipation_optimum(rng):
    with criterion(5, "low-dissipation optimum (2, 4, 0.25, 0.5) and eta* bracket"):
        p = carnot.LowDissipationParams(t_hot=4.0, t_cold=1.0, delta_s=1.0,
                                        c1=1.0, c2=1.0)
        opt = carnot.maximize_power(p)
        assert abs(opt.tau_cold_star - 2.0) <= 1e-6
        assert abs(opt.tau_hot_star - 4.0) <= 1e-6
        assert abs(opt.p_star - 0.25) <= 1e-6
        assert abs(opt.efficiency_star - 0.5) <= 1e-6
        for _ in range(100):
            draw = random_low_dissipation(rng)
            eta_c = 1.0 - draw.t_cold / draw.t_hot
            eta = carnot.maximize_power(draw).efficiency_star
            assert eta_c / 2.0 < eta < eta_c / (2.0 - eta_c)


def test_criterion_6_pump_adiabatic_decomposition(quadrature_loop_slow_drive):
    with criterion(6, "pump residual halves with the drive frequency"):
        data = quadrature_loop_slow_drive
        geom = data["geom"].n_right
        r = [abs(row["exact"].n_right - row["dynamic"].n_right - geom)
             for row in data["rows"]]
        assert 1.7 <= r[0] / r[1] <= 2.3
        assert 1.7 <= r[1] / r[2] <= 2.3


def test_criterion_7_geometric_charge_invariances():
    with criterion(7, "geometric charge: frequency-free, retrace-null, odd"):
        for build in (build_quadrature_loop, build_plus_loop):
            a = pump.geometric_charge(build(1.0)).n_right
            b = pump.geometric_charge(build(0.5)).n_right
            assert abs(a - b) <= 1e-9
        single = pump.RateProtocol(
            gamma_l_plus=pump.SinusoidalRate(1.0, 0.5),
            gamma_r_plus=pump.SinusoidalRate(0.5),
            gamma_l_minus=pump.SinusoidalRate(0.5),
            gamma_r_minus=pump.SinusoidalRate(0.5),
            drive_frequency=1.0)
        assert abs(pump.geometric_charge(single).n_right) <= 1e-10
        loop = build_plus_loop(1.0)
        fwd = pump.geometric_charge(loop).n_right
        bwd = pump.geometric_charge(loop.time_reversed()).n_right
        assert abs(fwd + bwd) <= 1e-9
        assert abs(fwd) > 1e-3


def test_criterion_8_charge_conservation(rng):
    with criterion(8, "total pumped charge vanishes per period, 20 protocols"):
        for _ in range(20):
            res = pump.integrate_exact(random_protocol(rng))
            assert abs(res.pumped.n_total) <= 1e-8


def test_criterion_9_berry_phase_solid_angles():
    with criterion(9, "closed-loop phases equal minus half the solid angle"):
        for theta0 in (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3):
            res = phase.geometric_phase(colatitude_loop(theta0, 10_001))
            unwrapped = res.pancharatnam_term + res.connection_term
            assert abs(unwrapped + math.pi * (1.0 - math.cos(theta0))) <= 1e-4


def test_criterion_10_gauge_invariance(rng):
    with criterion(10, "gauge invariance with individually moving terms"):
        moved = 0
        for _ in range(100):
            path = random_smooth_path(rng)
            base = phase.geometric_phase(path)
            chi = rng.uniform(0.0, 2.0 * math.pi, size=len(path))
            redressed = phase.BlochPath(
                samples=path.samples * np.exp(1j * chi)[:, None],
                times=path.times)
            res = phase.geometric_phase(redressed)
            assert circular_distance(res.total_geometric,
                                     base.total_geometric) <= 1e-9
            if (abs(res.pancharatnam_term - base.pancharatnam_term) > 1e-3
                    and abs(res.connection_term - base.connection_term) > 1e-3):
                moved += 1
        assert moved >= 95


def test_criterion_11_noncyclic_geodesic():
    with criterion(11, "great-circle arc carries zero geometric phase"):
        for n in (1_001, 10_001):
            theta = np.linspace(0.0, math.pi / 2, n)
            res = phase.geometric_phase(phase.BlochPath.from_angles(
                theta, np.zeros(n)))
            assert abs(res.total_geometric) <= 1e-6


def _cli(args, cwd):
    proc = subprocess.run([sys.executable, "-m", "phasecycle", *args],
                          capture_output=True, cwd=cwd)
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


def test_criterion_12_cli_determinism(tmp_path):
    with criterion(12, "CLI reports are byte-identical across runs"):
        from test_cli import write_loop_config
        loop = tmp_path / "loop.toml"
        write_loop_config(loop, sweep=(0.075, 0.0375, 2))
        commands = [
            ["otto", "--omega1", "1", "--omega2", "2",
             "--t-cold", "1", "--t-hot", "4"],
            ["carnot", "maximize-power", "--t-hot", "4", "--t-cold", "1",
             "--ds", "1", "--c1", "1", "--c2", "1"],
            ["pump", "--config", str(loop), "--compare-exact"],
        ]
        outputs = []
        for args in commands:
            first = _cli(args, tmp_path)
            second = _cli(args, tmp_path)
            assert first == second
            outputs.append(first)
        assert json.loads(outputs[0])["results"]["efficiency"] == 0.5
        maxp = json.loads(outputs[1])["results"]
        assert maxp["tau_cold_star"] == pytest.approx(2.0, abs=1e-6)
        assert maxp["p_star"] == pytest.approx(0.25, abs=1e-6)
        header = outputs[2].decode().splitlines()[0]
        assert header == "omega,n_exact,n_dyn,n_geom,residual"
