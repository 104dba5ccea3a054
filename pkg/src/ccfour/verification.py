"""Self-check suites over seeded random points.

Each check re-derives one of the structural guarantees (bracket signs,
monotonicity, angle bounds, mass positivity and redundancy, derivative
correctness, kite faces, vertex incidences, class surfaces, dynamics)
and reports pass/fail with a short detail string.  The CLI ``verify``
command runs all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import geometric_witness, surface_mesh, surface_order
from .domain import (
    A_MAX,
    A_MIN,
    B_MAX,
    C_MAX,
    FACE_VERTICES,
    Face,
    constraint_residuals,
    cosine_bounds,
    sample,
    vertices,
)
from .dynamics import SimulationState, integrate, potential, moment, relative_equilibrium_ic
from .geometry import RadialPoint, mutual_distances, positions, signed_areas
from .masses import centrality_residual, mass_ratios
from .solver import (
    dziobek_residual,
    dziobek_residual_dc,
    dziobek_residual_dtheta,
    dtheta_dc,
    solve_theta,
)

__all__ = ["CheckResult", "run_suite", "face_kite_points"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def face_kite_points(face: Face, count: int, seed: int) -> list[RadialPoint]:
    """Seeded points on the interior of kite face I (c = a) or II (b = 1)."""
    rng = np.random.default_rng(seed)
    points: list[RadialPoint] = []
    while len(points) < count:
        a = rng.uniform(A_MIN + 1e-3, A_MAX - 1e-3)
        if face == Face.I:
            low = -1.0 + math.sqrt(1.0 + a * a)
            if low >= 1.0 - 1e-3:
                continue
            b = rng.uniform(low + 1e-3, 1.0 - 1e-3)
            candidate = RadialPoint(a, b, a)
        elif face == Face.II:
            low = -a + math.sqrt(a * a + 1.0)
            high = min(a, 3.0 / a) - 1e-3
            if low + 1e-3 >= high:
                continue
            c = rng.uniform(low + 1e-3, high)
            candidate = RadialPoint(a, 1.0, c)
        else:
            raise ValueError("only the kite faces I and II are sampled here")
        residuals = constraint_residuals(*candidate.as_tuple())
        if min(residuals) < -1e-12:
            continue
        points.append(candidate)
    return points


def _check_bracket_signs(points) -> CheckResult:
    bad = 0
    for p in points:
        k1, k2 = cosine_bounds(p)
        if not (dziobek_residual(p, math.acos(k2)) > 0.0 > dziobek_residual(p, math.acos(k1))):
            bad += 1
    return CheckResult(
        "bracket-signs",
        bad == 0,
        f"{len(points) - bad}/{len(points)} points with positive/negative endpoint residuals",
    )


def _check_monotonicity(points) -> CheckResult:
    bad = 0
    for p in points[: min(len(points), 200)]:
        k1, k2 = cosine_bounds(p)
        grid = np.linspace(math.acos(k2), math.acos(k1), 32)
        values = [dziobek_residual(p, t) for t in grid]
        if any(v2 >= v1 for v1, v2 in zip(values, values[1:])):
            bad += 1
    n = min(len(points), 200)
    return CheckResult("residual-monotone-decreasing", bad == 0, f"{n - bad}/{n} points strictly decreasing on a 32-grid")


def _check_angle_bounds(points, solutions) -> CheckResult:
    bad = 0
    for p, sol in zip(points, solutions):
        ok = math.pi / 3.0 < sol.theta <= math.pi / 2.0 and sol.scaled_residual < 1e-12
        if abs(sol.theta - math.pi / 2.0) < 1e-9:
            ok = ok and min(abs(p.c - p.a), abs(1.0 - p.b)) < 1e-7
        if not ok:
            bad += 1
    return CheckResult(
        "angle-bounds-and-residual",
        bad == 0,
        f"{len(points) - bad}/{len(points)} solutions in (pi/3, pi/2] with scaled residual < 1e-12",
    )


def _check_masses(points, solutions) -> CheckResult:
    bad = 0
    worst_consistency = 0.0
    worst_central = 0.0
    for p, sol in zip(points, solutions):
        d = mutual_distances(p, sol.theta)
        config = positions(p, sol.theta)
        try:
            m = mass_ratios(d, signed_areas(config))
        except Exception:
            bad += 1
            continue
        central = centrality_residual(config, m)
        worst_consistency = max(worst_consistency, m.consistency)
        worst_central = max(worst_central, central)
        if min(m.as_tuple()) <= 0.0 or m.consistency >= 1e-8 or central >= 1e-9:
            bad += 1
    return CheckResult(
        "mass-recovery",
        bad == 0,
        f"{len(points) - bad}/{len(points)} positive and consistent "
        f"(worst consistency {worst_consistency:.2e}, worst centrality {worst_central:.2e})",
    )


def _check_derivatives(points, seed) -> CheckResult:
    rng = np.random.default_rng(seed + 11)
    bad = 0
    h = 1e-6
    for p in points:
        k1, k2 = cosine_bounds(p)
        theta = rng.uniform(math.acos(k2), math.acos(k1))
        fd_theta = (dziobek_residual(p, theta + h) - dziobek_residual(p, theta - h)) / (2.0 * h)
        ana_theta = dziobek_residual_dtheta(p, theta)
        pc = p.as_tuple()
        fd_c = (
            dziobek_residual(RadialPoint(pc[0], pc[1], pc[2] + h), theta)
            - dziobek_residual(RadialPoint(pc[0], pc[1], pc[2] - h), theta)
        ) / (2.0 * h)
        ana_c = dziobek_residual_dc(p, theta)
        ok_theta = abs(ana_theta - fd_theta) <= 1e-6 * max(abs(ana_theta), abs(fd_theta))
        ok_c = abs(ana_c - fd_c) <= 1e-6 * max(abs(ana_c), abs(fd_c))
        if not (ok_theta and ok_c):
            bad += 1
    return CheckResult(
        "analytic-derivatives",
        bad == 0,
        f"{len(points) - bad}/{len(points)} match central differences to 1e-6",
    )


def _check_dtheta_dc(points, seed) -> CheckResult:
    subset = [
        p
        for p in points
        if min(constraint_residuals(*p.as_tuple())) > 1e-3
    ][:100]
    bad = 0
    h = 1e-5
    for p in subset:
        value = dtheta_dc(p)
        up = solve_theta(RadialPoint(p.a, p.b, p.c + h)).theta
        down = solve_theta(RadialPoint(p.a, p.b, p.c - h)).theta
        fd = (up - down) / (2.0 * h)
        if not (value > 0.0 and abs(value - fd) <= 1e-4 * max(abs(value), abs(fd))):
            bad += 1
    face2 = face_kite_points(Face.II, 20, seed + 23)
    bad_face = sum(1 for p in face2 if abs(dtheta_dc(p)) >= 1e-8)
    return CheckResult(
        "angle-increases-with-c",
        bad == 0 and bad_face == 0,
        f"{len(subset) - bad}/{len(subset)} interior positive and FD-matched; "
        f"{len(face2) - bad_face}/{len(face2)} face-II derivatives below 1e-8",
    )


def _check_kite_faces(seed) -> CheckResult:
    bad = 0
    for face, pair in ((Face.I, (1, 3)), (Face.II, (0, 2))):
        for p in face_kite_points(face, 50, seed + 31):
            sol = solve_theta(p)
            d = mutual_distances(p, sol.theta)
            m = mass_ratios(d, signed_areas(positions(p, sol.theta))).as_tuple()
            equal = abs(m[pair[0]] - m[pair[1]]) / m[pair[0]]
            if abs(sol.theta - math.pi / 2.0) > 1e-12 or equal >= 1e-8:
                bad += 1
    return CheckResult("kite-faces", bad == 0, f"{100 - bad}/100 face points at pi/2 with paired masses")


def _check_vertices_and_box(points) -> CheckResult:
    incidence_ok = True
    for vert in vertices():
        residuals = constraint_residuals(*vert.point.as_tuple())
        for face, residual in zip(Face, residuals):
            expected = vert.label in FACE_VERTICES[face]
            if expected != (abs(residual) <= 1e-14):
                incidence_ok = False
    box_ok = all(
        A_MIN <= p.a <= A_MAX and 0.0 <= p.b <= B_MAX and 0.0 <= p.c <= C_MAX for p in points
    )
    return CheckResult(
        "vertices-and-box",
        incidence_ok and box_ok,
        f"vertex/face incidence {'ok' if incidence_ok else 'BROKEN'}; samples in box: {box_ok}",
    )


def _check_class_surfaces() -> CheckResult:
    ok = True
    details = []
    for label in ("trapezoid", "cocircular", "equidiagonal"):
        mesh = surface_mesh(label, 16)
        worst = 0.0
        for node in mesh.nodes:
            witness = geometric_witness(
                positions(node.point, node.theta), label
            )
            worst = max(worst, witness)
        ok = ok and worst < 1e-8 and len(mesh.nodes) > 0
        details.append(f"{label}:{worst:.1e}")
        if label == "cocircular":
            ok = ok and all(node.point.c <= 1.0 + 1e-9 for node in mesh.nodes)
    high = surface_order(1.2, 0.8)
    low = surface_order(0.8, 0.6)
    ok = ok and high.descending == ("trapezoid", "cocircular", "equidiagonal")
    ok = ok and low.descending == ("equidiagonal", "cocircular", "trapezoid")
    return CheckResult("class-surfaces", ok, "worst witnesses " + ", ".join(details))


def _check_dynamics() -> CheckResult:
    p = RadialPoint(1.0, 1.0, 1.0)
    sol = solve_theta(p)
    config = positions(p, sol.theta)
    m = mass_ratios(mutual_distances(p, sol.theta), signed_areas(config))
    state = relative_equilibrium_ic(config, m)
    omega = math.sqrt(potential(state) / moment(state))
    period = 2.0 * math.pi / omega
    steps = 4096
    traj = integrate(state, period / steps, steps)
    rigid_dev = traj.distance_deviation().max()
    energy_dev = traj.energy_drift().max()

    rest = SimulationState(state.positions.copy(), np.zeros((4, 2)), state.masses.copy())
    rest_traj = integrate(rest, period / steps, int(0.16 * steps))
    ratio_dev = rest_traj.ratio_deviation().max()

    rng = np.random.default_rng(7)
    scatter = rng.uniform(-1.0, 1.0, size=(4, 2))
    scatter -= scatter.mean(axis=0)
    bad_state = SimulationState(
        scatter,
        omega * np.column_stack([-scatter[:, 1], scatter[:, 0]]),
        np.ones(4),
    )
    control_dev = integrate(bad_state, period / steps, steps).distance_deviation().max()

    ok = rigid_dev < 1e-6 and energy_dev < 1e-9 and ratio_dev < 1e-5 and control_dev > 1e-3
    return CheckResult(
        "dynamics",
        ok,
        f"rigid dev {rigid_dev:.2e}, energy {energy_dev:.2e}, "
        f"collapse shape {ratio_dev:.2e}, control {control_dev:.2e}",
    )


def run_suite(n: int, seed: int) -> list[CheckResult]:
    """Run all invariant checks over n seeded interior samples."""
    if n < 1:
        raise ValueError("n must be at least 1")
    points = sample(n, seed)
    solutions = [solve_theta(p) for p in points]
    return [
        _check_bracket_signs(points),
        _check_monotonicity(points),
        _check_angle_bounds(points, solutions),
        _check_masses(points, solutions),
        _check_derivatives(points, seed),
        _check_dtheta_dc(points, seed),
        _check_kite_faces(seed),
        _check_vertices_and_box(points),
        _check_class_surfaces(),
        _check_dynamics(),
    ]
