"""End-to-end acceptance criteria at their stated tolerances.

Each test prints one PASS line (visible with -s); any assertion failure
marks the criterion red.  Counts and tolerances are fixed here, not
tunable.
"""

import math
import time

import numpy as np
import pytest

from ccfour import (
    Face,
    FACE_VERTICES,
    RadialPoint,
    SimulationState,
    constraint_residuals,
    cosine_bounds,
    centrality_residual,
    dtheta_dc,
    dziobek_residual,
    dziobek_residual_dc,
    dziobek_residual_dtheta,
    geometric_witness,
    integrate,
    mass_ratios,
    moment,
    mutual_distances,
    positions,
    potential,
    relative_equilibrium_ic,
    rhombus_ratio,
    sample,
    signed_areas,
    solve_theta,
    surface_mesh,
    surface_order,
    vertices,
)
from conftest import face_points

PI = math.pi
S3 = math.sqrt(3.0)
SEED = 424242


@pytest.fixture(scope="module")
def points():
    return sample(1000, SEED)


@pytest.fixture(scope="module")
def solutions(points):
    return [solve_theta(p) for p in points]


@pytest.fixture(scope="module")
def recovered(points, solutions):
    out = []
    for p, sol in zip(points, solutions):
        d = mutual_distances(p, sol.theta)
        config = positions(p, sol.theta)
        out.append((d, config, mass_ratios(d, signed_areas(config))))
    return out


def test_criterion_01_bracket_signs(points):
    start = time.perf_counter()
    for p in points:
        k1, k2 = cosine_bounds(p)
        assert dziobek_residual(p, math.acos(k2)) > 0.0
        assert dziobek_residual(p, math.acos(k1)) < 0.0
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(f"\nACCEPTANCE 01 bracket-signs: PASS ({len(points)}/{len(points)} in {elapsed:.2f}s)")


def test_criterion_02_unique_root_and_bounds(points, solutions):
    worst = 0.0
    for p, sol in zip(points, solutions):
        assert sol.scaled_residual < 1e-12
        assert PI / 3 < sol.theta <= PI / 2
        if abs(sol.theta - PI / 2) < 1e-9:
            assert min(abs(p.c - p.a), abs(1.0 - p.b)) < 1e-7
        worst = max(worst, sol.scaled_residual)
    print(f"\nACCEPTANCE 02 unique-root-bounds: PASS (worst scaled residual {worst:.2e})")


def test_criterion_03_kite_faces():
    worst_theta = 0.0
    worst_pair = 0.0
    for face, pair in ((Face.I, ("m2", "m4")), (Face.II, ("m1", "m3"))):
        for p in face_points(face, 100):
            sol = solve_theta(p)
            worst_theta = max(worst_theta, abs(sol.theta - PI / 2))
            assert abs(sol.theta - PI / 2) < 1e-12
            d = mutual_distances(p, sol.theta)
            m = mass_ratios(d, signed_areas(positions(p, sol.theta)))
            first = getattr(m, pair[0])
            second = getattr(m, pair[1])
            mismatch = abs(first - second) / first
            worst_pair = max(worst_pair, mismatch)
            assert mismatch < 1e-8
    print(
        f"\nACCEPTANCE 03 kite-faces: PASS (200 points, worst |theta-pi/2| {worst_theta:.1e}, "
        f"worst pair mismatch {worst_pair:.1e})"
    )


def test_criterion_04_mass_positivity_consistency(recovered):
    worst_consistency = 0.0
    worst_centrality = 0.0
    for d, config, m in recovered:
        assert min(m.as_tuple()) > 0.0
        assert m.consistency < 1e-8
        residual = centrality_residual(config, m)
        assert residual < 1e-9
        worst_consistency = max(worst_consistency, m.consistency)
        worst_centrality = max(worst_centrality, residual)
    print(
        f"\nACCEPTANCE 04 masses: PASS ({len(recovered)} samples, worst consistency "
        f"{worst_consistency:.2e}, worst centrality {worst_centrality:.2e})"
    )


def test_criterion_05_monotonic_in_c(points):
    margin_points = [
        p for p in points if min(constraint_residuals(*p.as_tuple())) > 1e-3
    ][:100]
    assert len(margin_points) == 100
    h = 1e-5
    for p in margin_points:
        value = dtheta_dc(p)
        assert value > 0.0
        up = solve_theta(RadialPoint(p.a, p.b, p.c + h)).theta
        down = solve_theta(RadialPoint(p.a, p.b, p.c - h)).theta
        fd = (up - down) / (2 * h)
        assert abs(value - fd) <= 1e-4 * max(abs(value), abs(fd))
    face2 = face_points(Face.II, 25)
    for p in face2:
        assert abs(dtheta_dc(p)) < 1e-8
    print("\nACCEPTANCE 05 theta-increases-with-c: PASS (100 interior + 25 face-II points)")


def test_criterion_06_derivative_correctness(points):
    rng = np.random.default_rng(SEED + 5)
    h = 1e-6
    worst = 0.0
    for p in points:
        k1, k2 = cosine_bounds(p)
        theta = rng.uniform(math.acos(k2), math.acos(k1))
        fd_t = (dziobek_residual(p, theta + h) - dziobek_residual(p, theta - h)) / (2 * h)
        an_t = dziobek_residual_dtheta(p, theta)
        rel_t = abs(an_t - fd_t) / max(abs(an_t), abs(fd_t))
        up = RadialPoint(p.a, p.b, p.c + h)
        down = RadialPoint(p.a, p.b, p.c - h)
        fd_c = (dziobek_residual(up, theta) - dziobek_residual(down, theta)) / (2 * h)
        an_c = dziobek_residual_dc(p, theta)
        rel_c = abs(an_c - fd_c) / max(abs(an_c), abs(fd_c))
        worst = max(worst, rel_t, rel_c)
        assert rel_t <= 1e-6
        assert rel_c <= 1e-6
    print(f"\nACCEPTANCE 06 derivatives: PASS (1000 pairs, worst relative error {worst:.2e})")


def test_criterion_07_class_surfaces():
    worst = {}
    for label in ("trapezoid", "cocircular", "equidiagonal"):
        mesh = surface_mesh(label, 50)
        assert len(mesh.nodes) > 500
        top = 0.0
        for node in mesh.nodes:
            config = positions(node.point, node.theta)
            witness = geometric_witness(config, label)
            assert witness < 1e-8
            top = max(top, witness)
            if label == "cocircular":
                d = mutual_distances(node.point, node.theta)
                lhs = d.r13 * d.r24
                rhs = d.r12 * d.r34 + d.r14 * d.r23
                assert abs(lhs - rhs) <= 1e-9 * lhs
                assert node.point.c <= 1.0 + 1e-9
        worst[label] = top
    wide = surface_order(1.2, 0.8)
    assert wide.c_trapezoid > wide.c_cocircular > wide.c_equidiagonal
    narrow = surface_order(0.8, 0.6)
    assert narrow.c_equidiagonal > narrow.c_cocircular > narrow.c_trapezoid
    checked = {True: 0, False: 0}
    from ccfour import contains

    for a in np.linspace(0.75, S3 - 0.05, 16):
        if abs(a - 1.0) < 0.02:
            continue
        for b in np.linspace(0.05, 1.0, 16):
            order = surface_order(a, b)
            if any(
                c <= 0 or contains(RadialPoint(a, b, c)).status == "outside"
                for c in order.values()
            ):
                continue
            if a > 1:
                assert order.c_trapezoid > order.c_cocircular > order.c_equidiagonal
            else:
                assert order.c_equidiagonal > order.c_cocircular > order.c_trapezoid
            checked[a > 1] += 1
    assert checked[True] > 10 and checked[False] > 10
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    print(f"\nACCEPTANCE 07 class-surfaces: PASS (50x50 meshes; worst witnesses {detail})")


def test_criterion_08_rhombus_family():
    worst = 0.0
    for a in np.linspace(1 / S3 + 0.01, S3 - 0.01, 120):
        p = RadialPoint(a, 1.0, a)
        sol = solve_theta(p)
        d = mutual_distances(p, sol.theta)
        m = mass_ratios(d, signed_areas(positions(p, sol.theta)))
        closed = rhombus_ratio(a)
        mismatch = abs(m.m2 - closed)
        assert mismatch <= 1e-10 * max(1.0, abs(closed))
        worst = max(worst, mismatch)
    tail = rhombus_ratio(S3 - 1e-3)
    assert tail < 1e-2
    print(
        f"\nACCEPTANCE 08 rhombus-family: PASS (120 points, worst |pipeline-closed| {worst:.1e}, "
        f"ratio at sqrt(3)-1e-3 = {tail:.2e})"
    )


def test_criterion_09_vertices_and_box():
    for vert in vertices():
        residuals = constraint_residuals(*vert.point.as_tuple())
        for face, residual in zip(Face, residuals):
            if vert.label in FACE_VERTICES[face]:
                assert abs(residual) <= 1e-14
            else:
                assert abs(residual) > 1e-14
    big = sample(100000, SEED + 9)
    arr = np.array([p.as_tuple() for p in big])
    assert arr[:, 0].min() >= 1 / S3 and arr[:, 0].max() <= S3
    assert arr[:, 1].min() >= 0.0 and arr[:, 1].max() <= 1.0
    assert arr[:, 2].min() >= 0.0 and arr[:, 2].max() <= S3
    print("\nACCEPTANCE 09 vertices-and-box: PASS (5 vertices exact, 100000 samples in box)")


def test_criterion_10_dynamics():
    p = RadialPoint(1, 1, 1)
    sol = solve_theta(p)
    config = positions(p, sol.theta)
    m = mass_ratios(mutual_distances(p, sol.theta), signed_areas(config))
    state = relative_equilibrium_ic(config, m)
    omega = math.sqrt(potential(state) / moment(state))
    period = 2 * PI / omega

    start = time.perf_counter()
    rigid = integrate(state, period / 4096, 4096)
    elapsed = time.perf_counter() - start
    rigid_dev = rigid.distance_deviation().max()
    assert rigid_dev < 1e-6
    assert elapsed < 5.0

    rest = SimulationState(state.positions.copy(), np.zeros((4, 2)), state.masses.copy())
    collapse = integrate(rest, period / 4096, 655)
    shape_dev = collapse.ratio_deviation().max()
    assert shape_dev < 1e-5
    assert collapse.distances()[-1].mean() < 0.6 * collapse.distances()[0].mean()

    rng = np.random.default_rng(7)
    scatter = rng.uniform(-1.0, 1.0, size=(4, 2))
    scatter -= scatter.mean(axis=0)
    control_state = SimulationState(
        scatter,
        omega * np.column_stack([-scatter[:, 1], scatter[:, 0]]),
        np.ones(4),
    )
    control_dev = integrate(control_state, period / 4096, 4096).distance_deviation().max()
    assert control_dev > 1e-3
    print(
        f"\nACCEPTANCE 10 dynamics: PASS (rigid dev {rigid_dev:.2e} in {elapsed:.2f}s, "
        f"collapse shape dev {shape_dev:.2e}, control dev {control_dev:.2e})"
    )
