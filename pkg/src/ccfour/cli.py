"""Command-line interface.

Subcommands: solve one point, sample the region, export a class surface,
run the self-check suite, or integrate a trajectory.  Delimited output is
CSV (header row) or JSON lines, with floats printed to 17 significant
digits so they round-trip; ``--plot`` additionally renders a figure next
to the data.  Exit codes: 0 success, 1 usage, 2 outside the admissible
region, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classify import MESH_LABELS, assigned_labels, surface_mesh
from .domain import OUTSIDE, contains, sample
from .dynamics import SimulationState, integrate, relative_equilibrium_ic
from .errors import (
    CentralConfigError,
    CloseEncounterError,
    MassFormulasDegenerateError,
    NonPositiveMassError,
    OutsideDomainError,
)
from .geometry import RadialPoint, mutual_distances, positions, signed_areas
from .masses import centrality_residual, mass_ratios
from .solver import dziobek_residual, solve_theta
from .verification import run_suite

__all__ = ["main", "build_record", "OutputRecord", "COLUMNS"]

COLUMNS = (
    "a",
    "b",
    "c",
    "theta",
    "m1",
    "m2",
    "m3",
    "m4",
    "labels",
    "faces",
    "f_residual",
    "mass_consistency",
    "centrality_residual",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 instead of argparse's 2
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass(frozen=True)
class OutputRecord:
    """One solved point in the fixed column order of COLUMNS."""

    a: float
    b: float
    c: float
    theta: float
    m1: float
    m2: float
    m3: float
    m4: float
    labels: tuple
    faces: tuple
    f_residual: float
    mass_consistency: float
    centrality_residual: float

    def _theta_out(self, degrees: bool) -> float:
        return math.degrees(self.theta) if degrees else self.theta

    def row(self, degrees: bool = False) -> list:
        return [
            _fmt(self.a),
            _fmt(self.b),
            _fmt(self.c),
            _fmt(self._theta_out(degrees)),
            _fmt(self.m1),
            _fmt(self.m2),
            _fmt(self.m3),
            _fmt(self.m4),
            "|".join(self.labels),
            "|".join(self.faces),
            _fmt(self.f_residual),
            _fmt(self.mass_consistency),
            _fmt(self.centrality_residual),
        ]

    def as_dict(self, degrees: bool = False) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "theta": self._theta_out(degrees),
            "m1": self.m1,
            "m2": self.m2,
            "m3": self.m3,
            "m4": self.m4,
            "labels": list(self.labels),
            "faces": list(self.faces),
            "f_residual": self.f_residual,
            "mass_consistency": self.mass_consistency,
            "centrality_residual": self.centrality_residual,
        }


def _record_from_parts(p: RadialPoint, theta: float, m, faces) -> OutputRecord:
    d = mutual_distances(p, theta)
    config = positions(p, theta)
    return OutputRecord(
        a=p.a,
        b=p.b,
        c=p.c,
        theta=theta,
        m1=m.m1,
        m2=m.m2,
        m3=m.m3,
        m4=m.m4,
        labels=assigned_labels(p),
        faces=tuple(str(f) for f in faces),
        f_residual=abs(dziobek_residual(p, theta)) / d.max_r ** 9,
        mass_consistency=m.consistency,
        centrality_residual=centrality_residual(config, m),
    )


def build_record(p: RadialPoint, tol: float = 1e-9) -> OutputRecord:
    """Solve one admissible point into a full output record.

    tol is the boundary-detection half-width used for the face tags and
    the outside check; the numerical solve keeps its own tolerances.
    """
    membership = contains(p, tol)
    if membership.status == OUTSIDE:
        raise OutsideDomainError(
            f"point {p.as_tuple()} violates constraints", membership
        )
    solution = solve_theta(p)
    d = mutual_distances(p, solution.theta)
    areas = signed_areas(positions(p, solution.theta))
    m = mass_ratios(d, areas)
    return _record_from_parts(p, solution.theta, m, membership.faces)


def _thread_count() -> int:
    env = os.environ.get("CCFOUR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise _UsageError(f"CCFOUR_THREADS must be an integer, got {env!r}")
    return min(8, os.cpu_count() or 1)


def _parallel_map(fn, items):
    items = list(items)
    workers = _thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_records(records, path, fmt, degrees):
    fh, owned = _open_out(path)
    try:
        if fmt == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS)
            for record in records:
                writer.writerow(record.row(degrees))
        else:
            for record in records:
                fh.write(json.dumps(record.as_dict(degrees)) + "\n")
    finally:
        if owned:
            fh.close()


def _print_outside(membership, as_json) -> int:
    violated = [f"face-{f}" for f in membership.violated]
    residuals = {str(face): value for face, value in membership.residuals.items()}
    if as_json:
        print(json.dumps({"status": OUTSIDE, "violated": violated, "residuals": residuals}))
    else:
        print("outside the admissible region", file=sys.stderr)
        for face in membership.violated:
            print(
                f"  violated: face-{face} constraint (residual = {_fmt(membership.residuals[face])})",
                file=sys.stderr,
            )
    return 2


def _print_zero_mass(membership, message, as_json) -> int:
    faces = [f"face-{f}" for f in membership.faces]
    if as_json:
        print(json.dumps({"status": "zero-mass-boundary", "faces": faces, "detail": message}))
    else:
        print(f"zero-mass boundary point ({', '.join(faces) or 'degenerate'}): {message}", file=sys.stderr)
    return 2


def _cmd_solve(args) -> int:
    p = RadialPoint(args.a, args.b, args.c)
    membership = contains(p, args.tol)
    if membership.status == OUTSIDE:
        return _print_outside(membership, args.json)
    try:
        record = build_record(p, args.tol)
    except (NonPositiveMassError, MassFormulasDegenerateError) as exc:
        return _print_zero_mass(membership, str(exc), args.json)
    if args.json:
        print(json.dumps(record.as_dict(args.degrees)))
    else:
        data = record.as_dict(args.degrees)
        width = max(len(k) for k in COLUMNS)
        for key in COLUMNS:
            value = data[key]
            if isinstance(value, list):
                text = "|".join(value)
            else:
                text = _fmt(value)
            print(f"{key:<{width}}  {text}")
    return 0


def _cmd_sample(args) -> int:
    if args.n < 1:
        raise _UsageError("n must be at least 1")
    points = sample(args.n, args.seed)
    records = _parallel_map(build_record, points)
    _write_records(records, args.out, args.format, args.degrees)
    if args.plot:
        from . import plotting

        plotting.save_points_figure(records, args.plot, f"{args.n} solved interior samples")
    return 0


def _cmd_surface(args) -> int:
    if args.res < 2:
        raise _UsageError("--res must be at least 2")
    mesh = surface_mesh(args.label, args.res)
    records = _parallel_map(
        lambda node: _record_from_parts(
            node.point, node.theta, node.masses, contains(node.point).faces
        ),
        mesh.nodes,
    )
    _write_records(records, args.out, args.format, args.degrees)
    print(
        f"{args.label}: {len(mesh.nodes)} nodes kept, {mesh.clipped} clipped "
        f"of {mesh.shape[0]}x{mesh.shape[1]}",
        file=sys.stderr,
    )
    if args.plot:
        from . import plotting

        plotting.save_points_figure(records, args.plot, f"{args.label} surface")
    return 0


def _cmd_verify(args) -> int:
    if args.n < 1:
        raise _UsageError("n must be at least 1")
    results = run_suite(args.n, args.seed)
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
        if not result.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 3


def _trajectory_rows(traj):
    energy = traj.energy_drift()
    angular = traj.angular_momentum_drift()
    distance = traj.distance_deviation()
    ratio = traj.ratio_deviation()
    for k in range(len(traj)):
        row = [_fmt(traj.times[k])]
        row += [_fmt(x) for x in traj.positions[k].ravel()]
        row += [_fmt(x) for x in traj.velocities[k].ravel()]
        row += [_fmt(energy[k]), _fmt(angular[k]), _fmt(distance[k]), _fmt(ratio[k])]
        yield row


_TRAJ_COLUMNS = (
    ["time"]
    + [f"{axis}{i}" for i in range(1, 5) for axis in ("x", "y")]
    + [f"v{axis}{i}" for i in range(1, 5) for axis in ("x", "y")]
    + ["energy_drift", "angular_momentum_drift", "distance_deviation", "ratio_deviation"]
)


def _cmd_simulate(args) -> int:
    p = RadialPoint(args.a, args.b, args.c)
    membership = contains(p)
    if membership.status == OUTSIDE:
        return _print_outside(membership, False)
    solution = solve_theta(p)
    config = positions(p, solution.theta)
    try:
        m = mass_ratios(mutual_distances(p, solution.theta), signed_areas(config))
    except (NonPositiveMassError, MassFormulasDegenerateError) as exc:
        return _print_zero_mass(membership, str(exc), False)

    state = relative_equilibrium_ic(config, m)
    omega = math.hypot(*state.velocities[0]) / math.hypot(*state.positions[0])
    period = 2.0 * math.pi / omega
    periods = args.periods if args.periods is not None else (1.0 if args.mode == "rigid" else 0.16)
    dt = period * args.dt_frac
    steps = max(1, round(periods / args.dt_frac))
    if args.mode == "rest":
        state = SimulationState(state.positions, np.zeros((4, 2)), state.masses)

    stopped = None
    try:
        traj = integrate(state, dt, steps)
    except CloseEncounterError as exc:
        traj = exc.trajectory
        stopped = str(exc)

    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(_TRAJ_COLUMNS)
            for row in _trajectory_rows(traj):
                writer.writerow(row)
    print(f"mode={args.mode} steps={len(traj) - 1} dt={_fmt(dt)} period={_fmt(period)}")
    print(f"max distance deviation   {_fmt(traj.distance_deviation().max())}")
    print(f"max shape deviation      {_fmt(traj.ratio_deviation().max())}")
    print(f"max energy drift         {_fmt(traj.energy_drift().max())}")
    print(f"max angular mom. drift   {_fmt(traj.angular_momentum_drift().max())}")
    if stopped:
        print(f"stopped early: {stopped}")
    if args.plot:
        from . import plotting

        plotting.save_trajectory_figure(traj, args.plot, f"{args.mode} trajectory")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="ccfour", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one radial point")
    solve.add_argument("a", type=float)
    solve.add_argument("b", type=float)
    solve.add_argument("c", type=float)
    solve.add_argument("--tol", type=float, default=1e-9, help="boundary detection tolerance")
    solve.add_argument("--json", action="store_true", help="emit one JSON object")
    solve.add_argument("--degrees", action="store_true", help="report angles in degrees")
    solve.set_defaults(func=_cmd_solve)

    samp = sub.add_parser("sample", help="sample and solve interior points")
    samp.add_argument("n", type=int)
    samp.add_argument("--seed", type=int, default=0)
    samp.add_argument("--out", default=None, help="output path (default stdout)")
    samp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    samp.add_argument("--degrees", action="store_true")
    samp.add_argument("--plot", default=None, help="also render a figure to this path")
    samp.set_defaults(func=_cmd_sample)

    surf = sub.add_parser("surface", help="mesh one class surface")
    surf.add_argument("label", choices=MESH_LABELS)
    surf.add_argument("--res", type=int, default=50, help="grid resolution per axis")
    surf.add_argument("--out", default=None)
    surf.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    surf.add_argument("--degrees", action="store_true")
    surf.add_argument("--plot", default=None, help="also render a figure to this path")
    surf.set_defaults(func=_cmd_surface)

    verify = sub.add_parser("verify", help="run the invariant self-checks")
    verify.add_argument("n", type=int, nargs="?", default=1000)
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=_cmd_verify)

    sim = sub.add_parser("simulate", help="integrate a relative equilibrium or rest start")
    sim.add_argument("a", type=float)
    sim.add_argument("b", type=float)
    sim.add_argument("c", type=float)
    sim.add_argument("--periods", type=float, default=None,
                     help="run length in rotation periods (default 1 rigid, 0.16 rest)")
    sim.add_argument("--dt-frac", type=float, default=1.0 / 4096.0,
                     help="time step as a fraction of the period")
    sim.add_argument("--mode", choices=("rigid", "rest"), default="rigid")
    sim.add_argument("--out", default=None, help="trajectory CSV path")
    sim.add_argument("--plot", default=None, help="also render the orbits to this path")
    sim.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OutsideDomainError as exc:
        if exc.membership is not None:
            return _print_outside(exc.membership, False)
        print(str(exc), file=sys.stderr)
        return 2
    except CentralConfigError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
