import math

import numpy as np
import pytest

from ccfour import (
    CentralityViolationError,
    CloseEncounterError,
    DegenerateGeometryError,
    RadialPoint,
    SimulationState,
    angular_velocity,
    alignment_residual,
    integrate,
    mass_ratios,
    moment,
    mutual_distances,
    positions,
    potential,
    relative_equilibrium_ic,
    signed_areas,
    solve_theta,
)
from ccfour.masses import MassDistribution

PI = math.pi


def central_pair(p):
    theta = solve_theta(p).theta
    config = positions(p, theta)
    m = mass_ratios(mutual_distances(p, theta), signed_areas(config))
    return config, m


def square_state():
    config, m = central_pair(RadialPoint(1, 1, 1))
    return relative_equilibrium_ic(config, m)


class TestPotentialAndMoment:
    def test_square_values(self):
        state = square_state()
        # unit masses at unit radius: four sides sqrt(2), two diagonals 2
        expected_u = 4.0 / math.sqrt(2.0) + 2.0 / 2.0
        assert potential(state) == pytest.approx(expected_u, rel=1e-12)
        assert moment(state) == pytest.approx(4.0, rel=1e-12)

    def test_moment_identity(self, interior_points):
        # I computed about the center of mass equals the pairwise form
        # sum m_i m_j r_ij^2 / M
        for p in interior_points[:40]:
            config, m = central_pair(p)
            state = SimulationState(config.points(), np.zeros((4, 2)), np.array(m.as_tuple()))
            pts = state.positions
            masses = state.masses
            pairwise = 0.0
            for i in range(4):
                for j in range(i + 1, 4):
                    pairwise += masses[i] * masses[j] * ((pts[i] - pts[j]) ** 2).sum()
            pairwise /= masses.sum()
            assert moment(state) == pytest.approx(pairwise, rel=1e-12)

    def test_scaling_homogeneity(self):
        state = square_state()
        scaled = SimulationState(2.0 * state.positions, state.velocities, state.masses)
        assert potential(scaled) == pytest.approx(potential(state) / 2.0, rel=1e-12)
        assert moment(scaled) == pytest.approx(4.0 * moment(state), rel=1e-12)

    def test_coincident_bodies_raise(self):
        pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        state = SimulationState(pts, np.zeros((4, 2)), np.ones(4))
        with pytest.raises(DegenerateGeometryError):
            potential(state)


class TestAngularVelocity:
    def test_square_oracle(self):
        config, m = central_pair(RadialPoint(1, 1, 1))
        omega = angular_velocity(config, m)
        state = square_state()
        assert omega == pytest.approx(math.sqrt(potential(state) / moment(state)), rel=1e-14)
        assert alignment_residual(config.points(), np.array(m.as_tuple()), omega ** 2) < 1e-12

    def test_all_solved_points_pass_alignment(self, interior_points):
        for p in interior_points[:50]:
            config, m = central_pair(p)
            omega = angular_velocity(config, m)
            assert alignment_residual(config.points(), np.array(m.as_tuple()), omega ** 2) < 1e-8

    def test_perturbed_masses_rejected(self):
        config, m = central_pair(RadialPoint(1, 0.5, 0.75))
        wrong = MassDistribution(
            m.m1, m.m2 * 1.01, m.m3, m.m4, m.normalization, m.consistency, m.dziobek_lambda
        )
        with pytest.raises(CentralityViolationError):
            angular_velocity(config, wrong)


class TestRelativeEquilibriumIC:
    def test_speeds_momentum_angular_momentum(self):
        state = square_state()
        omega = angular_velocity(*central_pair(RadialPoint(1, 1, 1)))
        radii = np.sqrt((state.positions ** 2).sum(axis=1))
        speeds = np.sqrt((state.velocities ** 2).sum(axis=1))
        assert speeds == pytest.approx(omega * radii, rel=1e-14)
        momentum = (state.masses[:, None] * state.velocities).sum(axis=0)
        assert np.abs(momentum).max() < 1e-14
        ell = (
            state.masses
            * (state.positions[:, 0] * state.velocities[:, 1] - state.positions[:, 1] * state.velocities[:, 0])
        ).sum()
        assert ell == pytest.approx(omega * moment(state), rel=1e-13)


class TestIntegrate:
    def test_square_period(self):
        state = square_state()
        omega = math.hypot(*state.velocities[0]) / math.hypot(*state.positions[0])
        period = 2 * PI / omega
        traj = integrate(state, period / 4096, 4096)
        assert traj.distance_deviation().max() < 1e-6
        returned = np.abs(traj.positions[-1] - traj.positions[0]).max()
        assert returned / np.abs(traj.positions[0]).max() < 1e-5
        assert traj.energy_drift().max() < 1e-9
        assert traj.angular_momentum_drift().max() < 1e-9

    def test_generic_relative_equilibrium(self):
        config, m = central_pair(RadialPoint(1.1, 0.6, 0.7))
        state = relative_equilibrium_ic(config, m)
        omega = angular_velocity(config, m)
        period = 2 * PI / omega
        traj = integrate(state, period / 4096, 4096)
        assert traj.distance_deviation().max() < 1e-6
        assert traj.energy_drift().max() < 1e-9
        assert traj.angular_momentum_drift().max() < 1e-9

    def test_rest_start_homothetic(self):
        state = square_state()
        omega = math.hypot(*state.velocities[0])
        period = 2 * PI / omega
        rest = SimulationState(state.positions, np.zeros((4, 2)), state.masses)
        traj = integrate(rest, period / 4096, 655)
        assert traj.ratio_deviation().max() < 1e-5
        # the configuration has genuinely collapsed
        assert traj.distances()[-1].mean() < 0.6 * traj.distances()[0].mean()

    def test_negative_control_non_central(self):
        rng = np.random.default_rng(99)
        pts = rng.uniform(-1, 1, size=(4, 2))
        pts -= pts.mean(axis=0)
        masses = np.ones(4)
        state0 = SimulationState(pts, np.zeros((4, 2)), masses)
        omega = math.sqrt(potential(state0) / moment(state0))
        vel = omega * np.column_stack([-pts[:, 1], pts[:, 0]])
        state = SimulationState(pts, vel, masses)
        period = 2 * PI / omega
        traj = integrate(state, period / 4096, 4096)
        assert traj.distance_deviation().max() > 1e-3

    def test_close_encounter_raises_with_partial_trajectory(self):
        # near-massless bodies drift ballistically through the threshold
        pts = np.array([[1.0, 0.0], [0.0, 2e-6], [-1.0, 0.0], [0.0, -2e-6]])
        vel = np.array([[0.0, 0.0], [0.0, -1.0], [0.0, 0.0], [0.0, 1.0]])
        state = SimulationState(pts, vel, np.full(4, 1e-30))
        with pytest.raises(CloseEncounterError) as excinfo:
            integrate(state, 1e-6, 100)
        assert excinfo.value.trajectory is not None
        assert excinfo.value.step is not None
        assert 1 <= len(excinfo.value.trajectory) <= 4

    def test_close_encounter_on_initial_state(self):
        pts = np.array([[1.0, 0.0], [0.0, 4e-7], [-1.0, 0.0], [0.0, -4e-7]])
        state = SimulationState(pts, np.zeros((4, 2)), np.ones(4))
        with pytest.raises(CloseEncounterError):
            integrate(state, 1e-6, 10)

    def test_argument_validation(self):
        state = square_state()
        with pytest.raises(ValueError):
            integrate(state, -0.1, 10)
        with pytest.raises(ValueError):
            integrate(state, 0.1, 0)
