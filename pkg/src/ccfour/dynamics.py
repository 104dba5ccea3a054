"""Dynamical validation: relative equilibria and free-fall collapse.

A central configuration rotating rigidly at the matched angular velocity
is a periodic solution of the gravitational four-body problem; released
from rest it collapses self-similarly.  Both behaviors are checked here
with a fixed-step leapfrog integrator (drift-kick-drift splitting,
symplectic and time-reversible) using G = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CentralityViolationError, CloseEncounterError, DegenerateGeometryError
from .geometry import PlanarConfiguration
from .masses import MassDistribution, gravitational_accelerations

__all__ = [
    "SimulationState",
    "Trajectory",
    "potential",
    "moment",
    "angular_velocity",
    "alignment_residual",
    "relative_equilibrium_ic",
    "integrate",
    "MIN_SEPARATION",
]

MIN_SEPARATION = 1e-6

_PAIRS = [(i, j) for i in range(4) for j in range(i + 1, 4)]


@dataclass
class SimulationState:
    """Positions, velocities and masses of the four bodies at one instant."""

    positions: np.ndarray
    velocities: np.ndarray
    masses: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.positions = np.array(self.positions, dtype=float)
        self.velocities = np.array(self.velocities, dtype=float)
        self.masses = np.array(self.masses, dtype=float)
        if self.positions.shape != (4, 2) or self.velocities.shape != (4, 2):
            raise ValueError("positions and velocities must have shape (4, 2)")
        if self.masses.shape != (4,) or np.any(self.masses <= 0.0):
            raise ValueError("masses must be four positive numbers")


def _pairwise_distances(positions: np.ndarray) -> np.ndarray:
    return np.array(
        [math.hypot(*(positions[i] - positions[j])) for i, j in _PAIRS]
    )


def potential(state: SimulationState) -> float:
    """Gravitational potential sum m_i m_j / r_ij."""
    total = 0.0
    for k, (i, j) in enumerate(_PAIRS):
        r = math.hypot(*(state.positions[i] - state.positions[j]))
        if r < 1e-12:
            raise DegenerateGeometryError(f"bodies {i + 1} and {j + 1} coincide")
        total += state.masses[i] * state.masses[j] / r
    return total


def moment(state: SimulationState) -> float:
    """Moment of inertia about the center of mass."""
    masses = state.masses
    center = (masses[:, None] * state.positions).sum(axis=0) / masses.sum()
    rel = state.positions - center
    return float((masses * (rel ** 2).sum(axis=1)).sum())


def alignment_residual(positions: np.ndarray, masses: np.ndarray, omega_squared: float) -> float:
    """Max componentwise |g_i + omega^2 (q_i - cm)| relative to max |g_i|."""
    positions = np.asarray(positions, dtype=float)
    masses = np.asarray(masses, dtype=float)
    g = gravitational_accelerations(positions, masses)
    center = (masses[:, None] * positions).sum(axis=0) / masses.sum()
    mismatch = g + omega_squared * (positions - center)
    return float(np.abs(mismatch).max() / np.abs(g).max())


def angular_velocity(config: PlanarConfiguration, m: MassDistribution, check_tol: float = 1e-8) -> float:
    """Angular velocity of the rigid rotation generated by a central pair.

    Computed as sqrt(U / I) and then validated componentwise: every
    acceleration must cancel against omega^2 times the radius vector.
    The validation is the authoritative check; a failure above check_tol
    raises CentralityViolationError.
    """
    masses = np.asarray(m.as_tuple(), dtype=float)
    state = SimulationState(config.points(), np.zeros((4, 2)), masses)
    omega_squared = potential(state) / moment(state)
    residual = alignment_residual(state.positions, masses, omega_squared)
    if residual > check_tol:
        raise CentralityViolationError(
            f"alignment residual {residual:.3e} exceeds {check_tol:.1e}; pair is not central"
        )
    return math.sqrt(omega_squared)


def relative_equilibrium_ic(config: PlanarConfiguration, m: MassDistribution) -> SimulationState:
    """Initial conditions for rigid rotation about the center of mass.

    Positions are recentered so the center of mass sits at the origin and
    each body receives velocity omega times the perpendicular of its
    radius vector, which makes total linear momentum exactly zero.
    """
    omega = angular_velocity(config, m)
    masses = np.asarray(m.as_tuple(), dtype=float)
    points = config.points()
    center = (masses[:, None] * points).sum(axis=0) / masses.sum()
    rel = points - center
    velocities = omega * np.column_stack([-rel[:, 1], rel[:, 0]])
    return SimulationState(rel, velocities, masses)


@dataclass
class Trajectory:
    """Recorded states of one integration, with derived diagnostics."""

    times: np.ndarray
    positions: np.ndarray  # (n, 4, 2)
    velocities: np.ndarray  # (n, 4, 2)
    masses: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    def distances(self) -> np.ndarray:
        """Six mutual distances per recorded state, pair order 12,13,14,23,24,34."""
        diffs = self.positions[:, [i for i, _ in _PAIRS], :] - self.positions[:, [j for _, j in _PAIRS], :]
        return np.sqrt((diffs ** 2).sum(axis=2))

    def energy(self) -> np.ndarray:
        kinetic = 0.5 * (self.masses[None, :] * (self.velocities ** 2).sum(axis=2)).sum(axis=1)
        pair_mass = np.array([self.masses[i] * self.masses[j] for i, j in _PAIRS])
        return kinetic - (pair_mass[None, :] / self.distances()).sum(axis=1)

    def angular_momentum(self) -> np.ndarray:
        cross = (
            self.positions[:, :, 0] * self.velocities[:, :, 1]
            - self.positions[:, :, 1] * self.velocities[:, :, 0]
        )
        return (self.masses[None, :] * cross).sum(axis=1)

    def energy_drift(self) -> np.ndarray:
        e = self.energy()
        return np.abs(e - e[0]) / abs(e[0])

    def angular_momentum_drift(self) -> np.ndarray:
        ell = self.angular_momentum()
        scale = abs(ell[0]) if ell[0] != 0.0 else 1.0
        return np.abs(ell - ell[0]) / scale

    def distance_deviation(self) -> np.ndarray:
        """Max relative deviation of the six distances from their start values."""
        d = self.distances()
        return np.abs(d / d[0] - 1.0).max(axis=1)

    def ratio_deviation(self) -> np.ndarray:
        """Max relative deviation of the mean-normalized distance shape vector.

        Invariant under uniform rescaling, so it isolates shape change
        during a homothetic collapse.
        """
        d = self.distances()
        shape = d / d.mean(axis=1, keepdims=True)
        return np.abs(shape / shape[0] - 1.0).max(axis=1)


def _accelerations_fast(positions: np.ndarray, masses: np.ndarray):
    diff = positions[None, :, :] - positions[:, None, :]
    r2 = (diff ** 2).sum(axis=2)
    np.fill_diagonal(r2, np.inf)
    inv_r3 = r2 ** -1.5
    acc = (masses[None, :, None] * diff * inv_r3[:, :, None]).sum(axis=1)
    return acc, math.sqrt(r2.min())


def integrate(
    state: SimulationState,
    dt: float,
    steps: int,
    min_separation: float = MIN_SEPARATION,
) -> Trajectory:
    """Fixed-step leapfrog integration (drift-kick-drift).

    Parameters
    ----------
    state : SimulationState
        Initial conditions; not modified.
    dt, steps : float, int
        Step size (> 0) and number of steps.
    min_separation : float
        A CloseEncounterError is raised as soon as any recorded pairwise
        distance falls below this limit; the partial trajectory up to that
        state is attached to the error.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    q = state.positions.copy()
    v = state.velocities.copy()
    masses = state.masses.copy()

    times = np.empty(steps + 1)
    positions = np.empty((steps + 1, 4, 2))
    velocities = np.empty((steps + 1, 4, 2))
    times[0] = state.time
    positions[0] = q
    velocities[0] = v

    def partial(k: int) -> Trajectory:
        return Trajectory(times[: k + 1].copy(), positions[: k + 1].copy(),
                          velocities[: k + 1].copy(), masses)

    r_min = _pairwise_distances(q).min()
    if r_min < min_separation:
        raise CloseEncounterError(
            f"initial separation {r_min:.3e} below {min_separation:.1e}",
            trajectory=partial(0),
            step=0,
        )

    half = 0.5 * dt
    for k in range(1, steps + 1):
        q += half * v
        acc, r_min = _accelerations_fast(q, masses)
        v += dt * acc
        q += half * v
        times[k] = state.time + k * dt
        positions[k] = q
        velocities[k] = v
        r_min = _pairwise_distances(q).min()
        if r_min < min_separation or not np.isfinite(q).all():
            raise CloseEncounterError(
                f"separation {r_min:.3e} below {min_separation:.1e} at step {k}",
                trajectory=partial(k),
                step=k,
            )
    return Trajectory(times, positions, velocities, masses)
