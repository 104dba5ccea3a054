"""Special quadrilateral classes and their surfaces inside the region.

Every class is carried by a linear or quadratic equation in the radial
coordinates: the two kite planes c = a and b = 1 (their intersection is
the rhombus edge), the trapezoid saddle c = a*b, the co-circular saddle
b = a*c, the equidiagonal plane a - b + c = 1 and the isosceles-trapezoid
line a = 1, b = c where the last three intersect.  Geometric witnesses
(parallel sides, common circumcircle, equal diagonals, paired sides)
are computed independently from solved positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import A_MAX, A_MIN, B_MAX, BOUNDARY, C_MAX, OUTSIDE, Face, contains
from .errors import (
    DegenerateGeometryError,
    MassFormulasDegenerateError,
    NonPositiveMassError,
    OutsideDomainError,
)
from .geometry import PlanarConfiguration, RadialPoint, mutual_distances, positions, signed_areas
from .masses import MassDistribution, mass_ratios
from .solver import solve_theta

__all__ = [
    "LABELS",
    "ClassificationReport",
    "assigned_labels",
    "class_residuals",
    "classify",
    "geometric_witness",
    "MeshNode",
    "SurfaceMesh",
    "surface_mesh",
    "SurfaceOrder",
    "surface_order",
]

LABELS = (
    "kite13",
    "kite24",
    "rhombus",
    "trapezoid",
    "isosceles_trapezoid",
    "cocircular",
    "equidiagonal",
)

MESH_LABELS = ("trapezoid", "cocircular", "equidiagonal", "kite13", "kite24")


def class_residuals(p: RadialPoint) -> dict:
    """Algebraic residual of each class equation at p.

    The isosceles-trapezoid entry is the pair (a - 1, b - c); the rhombus
    has no equation of its own (conjunction of the two kites).
    """
    a, b, c = p.a, p.b, p.c
    return {
        "kite13": c - a,
        "kite24": 1.0 - b,
        "trapezoid": c - a * b,
        "cocircular": b - a * c,
        "equidiagonal": a - b + c - 1.0,
        "isosceles_trapezoid": (a - 1.0, b - c),
    }


@dataclass(frozen=True)
class ClassificationReport:
    labels: frozenset
    residuals: dict
    witnesses: dict
    theta: float


def assigned_labels(p: RadialPoint, tol: float = 1e-9) -> tuple:
    """Class labels whose coordinate equation holds at p within tol.

    Coordinates are the membership criterion (distances are derived);
    rhombus is the conjunction of the two kite planes.  Returned in the
    canonical LABELS order.
    """
    residuals = class_residuals(p)
    found = set()
    for label, residual in residuals.items():
        if label == "isosceles_trapezoid":
            if max(abs(residual[0]), abs(residual[1])) < tol:
                found.add(label)
        elif abs(residual) < tol:
            found.add(label)
    if "kite13" in found and "kite24" in found:
        found.add("rhombus")
    return tuple(label for label in LABELS if label in found)


def classify(p: RadialPoint, tol: float = 1e-9) -> ClassificationReport:
    """Detect class membership of an admissible point.

    Labels are assigned from the coordinate equations (|residual| < tol);
    each assigned label also gets its geometric witness evaluated on the
    solved configuration.  Exterior points raise OutsideDomainError.
    """
    membership = contains(p)
    if membership.status == OUTSIDE:
        raise OutsideDomainError(
            f"cannot classify {p.as_tuple()}: violates {[str(f) for f in membership.violated]}",
            membership,
        )
    residuals = class_residuals(p)
    labels = set(assigned_labels(p, tol))

    solution = solve_theta(p)
    config = positions(p, solution.theta)
    witnesses = {label: geometric_witness(config, label) for label in sorted(labels)}
    return ClassificationReport(
        labels=frozenset(labels),
        residuals=residuals,
        witnesses=witnesses,
        theta=solution.theta,
    )


def _circumcenter(p1, p2, p3):
    ax, ay = p1
    bx, by = p2
    cx, cy = p3
    det = 2.0 * ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    scale = max(abs(bx - ax), abs(by - ay), abs(cx - ax), abs(cy - ay), 1.0)
    if abs(det) < 1e-12 * scale * scale:
        raise DegenerateGeometryError("circumcenter undefined: bodies 1, 2, 3 nearly collinear")
    b2 = (bx - ax) ** 2 + (by - ay) ** 2
    c2 = (cx - ax) ** 2 + (cy - ay) ** 2
    ux = ax + ((cy - ay) * b2 - (by - ay) * c2) / det
    uy = ay + ((bx - ax) * c2 - (cx - ax) * b2) / det
    return ux, uy


def geometric_witness(config: PlanarConfiguration, label: str) -> float:
    """Distance-level check of a class label on a solved configuration.

    Returns a non-negative residual that vanishes exactly on the class:
    normalized cross product of the 12 and 34 sides (trapezoid), relative
    spread of circumcenter distances (cocircular), or absolute differences
    of the paired distances (kites, equidiagonal, isosceles trapezoid).
    """
    q = config.points()
    r = {
        (i, j): math.hypot(*(q[i - 1] - q[j - 1]))
        for i, j in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    }
    if label == "trapezoid":
        u = q[1] - q[0]
        w = q[3] - q[2]
        nu, nw = math.hypot(*u), math.hypot(*w)
        if nu == 0.0 or nw == 0.0:
            raise DegenerateGeometryError("zero-length side in parallelism witness")
        return abs(u[0] * w[1] - u[1] * w[0]) / (nu * nw)
    if label == "cocircular":
        center = _circumcenter(q[0], q[1], q[2])
        dists = [math.hypot(qi[0] - center[0], qi[1] - center[1]) for qi in q]
        return (max(dists) - min(dists)) / (sum(dists) / 4.0)
    if label == "equidiagonal":
        return abs(r[(1, 3)] - r[(2, 4)])
    if label == "kite13":
        return max(abs(r[(1, 2)] - r[(1, 4)]), abs(r[(2, 3)] - r[(3, 4)]))
    if label == "kite24":
        return max(abs(r[(1, 2)] - r[(2, 3)]), abs(r[(1, 4)] - r[(3, 4)]))
    if label == "rhombus":
        return max(geometric_witness(config, "kite13"), geometric_witness(config, "kite24"))
    if label == "isosceles_trapezoid":
        return max(abs(r[(1, 3)] - r[(2, 4)]), abs(r[(1, 4)] - r[(2, 3)]))
    raise ValueError(f"unknown class label {label!r}")


@dataclass(frozen=True)
class MeshNode:
    point: RadialPoint
    theta: float
    masses: MassDistribution


@dataclass(frozen=True)
class SurfaceMesh:
    label: str
    nodes: tuple
    clipped: int
    shape: tuple


def _mesh_grid(label: str, nu: int, nv: int):
    a_axis = np.linspace(A_MIN, A_MAX, nu)
    if label == "kite24":
        for a in a_axis:
            for c in np.linspace(0.0, C_MAX, nv):
                yield a, 1.0, c
        return
    b_axis = np.linspace(0.0, B_MAX, nv)
    for a in a_axis:
        for b in b_axis:
            if label == "trapezoid":
                yield a, b, a * b
            elif label == "cocircular":
                yield a, b, b / a
            elif label == "equidiagonal":
                yield a, b, 1.0 - a + b
            else:  # kite13
                yield a, b, a


def surface_mesh(label: str, resolution, tol: float = 1e-9) -> SurfaceMesh:
    """Sample one class surface over its footprint clipped to the region.

    resolution is either one count (both axes) or an (nu, nv) pair, each at
    least 2.  Nodes outside the positive-mass region (exterior points and
    zero-mass boundary faces III-VI) are clipped and counted; kept nodes
    carry the solved angle and recovered masses, in row-major grid order.
    """
    if label not in MESH_LABELS:
        raise ValueError(f"no mesh parameterization for label {label!r}")
    if isinstance(resolution, int):
        nu = nv = resolution
    else:
        nu, nv = resolution
    if nu < 2 or nv < 2:
        raise ValueError("resolution must be at least 2 per axis")

    nodes = []
    clipped = 0
    for a, b, c in _mesh_grid(label, nu, nv):
        if min(a, b, c) <= 0.0:
            clipped += 1
            continue
        point = RadialPoint(a, b, c)
        membership = contains(point, tol)
        if membership.status == OUTSIDE:
            clipped += 1
            continue
        if membership.status == BOUNDARY and not set(membership.faces) <= {Face.I, Face.II}:
            clipped += 1  # zero-mass faces
            continue
        try:
            solution = solve_theta(point)
            d = mutual_distances(point, solution.theta)
            areas = signed_areas(positions(point, solution.theta))
            mass = mass_ratios(d, areas)
        except (NonPositiveMassError, MassFormulasDegenerateError):
            clipped += 1
            continue
        nodes.append(MeshNode(point=point, theta=solution.theta, masses=mass))
    return SurfaceMesh(label=label, nodes=tuple(nodes), clipped=clipped, shape=(nu, nv))


@dataclass(frozen=True)
class SurfaceOrder:
    """c-values of the three two-dimensional class surfaces above (a, b)."""

    c_trapezoid: float
    c_cocircular: float
    c_equidiagonal: float
    descending: tuple

    def values(self) -> tuple[float, float, float]:
        return (self.c_trapezoid, self.c_cocircular, self.c_equidiagonal)


def surface_order(a: float, b: float) -> SurfaceOrder:
    """Vertical ordering of the trapezoid, co-circular and equidiagonal surfaces.

    For a > 1 the surfaces stack as trapezoid over co-circular over
    equidiagonal (a*b > b/a > 1 - a + b); for a < 1 the order reverses
    wherever all three c-values are admissible; at a = 1 the three values
    coincide along the isosceles-trapezoid line.
    """
    c_trap = a * b
    c_circ = b / a
    c_equi = 1.0 - a + b
    ranked = sorted(
        (("trapezoid", c_trap), ("cocircular", c_circ), ("equidiagonal", c_equi)),
        key=lambda item: -item[1],
    )
    return SurfaceOrder(
        c_trapezoid=c_trap,
        c_cocircular=c_circ,
        c_equidiagonal=c_equi,
        descending=tuple(name for name, _ in ranked),
    )
