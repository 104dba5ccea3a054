"""Planar geometry of convex four-body configurations.

A configuration is described by three radial coordinates (a, b, c), the
distances of bodies 2, 3, 4 from the crossing point of the two diagonals
(body 1 is rescaled to distance 1), together with the angle theta between
the diagonals.  Bodies are labeled counterclockwise, so the diagonals are
the 1-3 and 2-4 segments and the four exterior sides are 12, 23, 34, 14.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError

__all__ = [
    "RadialPoint",
    "PlanarConfiguration",
    "MutualDistances",
    "SignedAreas",
    "CrossRatio",
    "positions",
    "mutual_distances",
    "signed_areas",
    "cayley_menger",
    "cross_ratio",
]


@dataclass(frozen=True)
class RadialPoint:
    """Radial coordinates (a, b, c) of bodies 2, 3 and 4.

    Zero entries are admitted so that limit points (coincident bodies,
    degenerate vertices) remain representable; operations that require
    strict positivity validate it themselves.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(
                    f"radial coordinate {name} must be finite and >= 0, got {value!r}"
                )
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class PlanarConfiguration:
    """Cartesian positions of the four bodies with the diagonal angle."""

    q1: tuple[float, float]
    q2: tuple[float, float]
    q3: tuple[float, float]
    q4: tuple[float, float]
    theta: float

    def points(self) -> np.ndarray:
        """Positions as a (4, 2) array in body order."""
        return np.array([self.q1, self.q2, self.q3, self.q4], dtype=float)


@dataclass(frozen=True)
class MutualDistances:
    """The six pairwise separations and their inverse cubes."""

    r12: float
    r13: float
    r14: float
    r23: float
    r24: float
    r34: float

    @staticmethod
    def _inv_cube(r: float) -> float:
        return math.inf if r == 0.0 else r ** -3

    @property
    def s12(self) -> float:
        return self._inv_cube(self.r12)

    @property
    def s13(self) -> float:
        return self._inv_cube(self.r13)

    @property
    def s14(self) -> float:
        return self._inv_cube(self.r14)

    @property
    def s23(self) -> float:
        return self._inv_cube(self.r23)

    @property
    def s24(self) -> float:
        return self._inv_cube(self.r24)

    @property
    def s34(self) -> float:
        return self._inv_cube(self.r34)

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        """(r12, r13, r14, r23, r24, r34)."""
        return (self.r12, self.r13, self.r14, self.r23, self.r24, self.r34)

    @property
    def max_r(self) -> float:
        return max(self.as_tuple())


@dataclass(frozen=True)
class SignedAreas:
    """Signed areas of the four triangles, one per omitted body."""

    A1: float
    A2: float
    A3: float
    A4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.A1, self.A2, self.A3, self.A4)


@dataclass(frozen=True)
class CrossRatio:
    """Cross ratio of the complexified positions, (z1-z3)(z2-z4) / (z1-z4)(z2-z3)."""

    numerator: complex
    denominator: complex
    value: complex
    imag: float


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (0.0 < theta < math.pi):
        raise ValueError(f"theta must lie strictly inside (0, pi), got {theta!r}")
    return theta


def positions(p: RadialPoint, theta: float) -> PlanarConfiguration:
    """Place the four bodies in the plane.

    Body 1 sits at (1, 0), body 3 at (-b, 0); bodies 2 and 4 lie on the
    line through the origin at angle theta, on opposite sides of it.
    """
    theta = _check_theta(theta)
    ct, st = math.cos(theta), math.sin(theta)
    return PlanarConfiguration(
        q1=(1.0, 0.0),
        q2=(p.a * ct, p.a * st),
        q3=(-p.b, 0.0),
        q4=(-p.c * ct, -p.c * st),
        theta=theta,
    )


def mutual_distances(p: RadialPoint, theta: float) -> MutualDistances:
    """Six pairwise distances from the radial coordinates.

    The squared exterior sides are a^2 - 2a cos(theta) + 1 and its three
    companions; they are evaluated in the cancellation-free half-angle form
    (x - y)^2 + 4xy sin^2(theta/2) so tiny separations keep full relative
    accuracy.  The diagonals are exactly b + 1 and a + c.
    """
    theta = _check_theta(theta)
    a, b, c = p.a, p.b, p.c
    sh2 = math.sin(0.5 * theta) ** 2
    ch2 = math.cos(0.5 * theta) ** 2
    return MutualDistances(
        r12=math.sqrt((a - 1.0) ** 2 + 4.0 * a * sh2),
        r13=b + 1.0,
        r14=math.sqrt((c - 1.0) ** 2 + 4.0 * c * ch2),
        r23=math.sqrt((a - b) ** 2 + 4.0 * a * b * ch2),
        r24=a + c,
        r34=math.sqrt((b - c) ** 2 + 4.0 * b * c * sh2),
    )


def _triangle_area(p, q, r) -> float:
    # shoelace, positive for counterclockwise p -> q -> r
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def signed_areas(config: PlanarConfiguration) -> SignedAreas:
    """Signed area A_i of the triangle spanned by the three bodies other than i.

    Convention: A_i = (-1)^(i+1) times the shoelace area of the remaining
    bodies taken in ascending index order, which gives the sign pattern
    (+, -, +, -) for counterclockwise configurations.
    """
    q1, q2, q3, q4 = config.q1, config.q2, config.q3, config.q4
    return SignedAreas(
        A1=_triangle_area(q2, q3, q4),
        A2=-_triangle_area(q1, q3, q4),
        A3=_triangle_area(q1, q2, q4),
        A4=-_triangle_area(q1, q2, q3),
    )


def cayley_menger(d: MutualDistances) -> float:
    """Bordered 5x5 determinant of squared distances; zero for planar sets."""
    r12, r13, r14 = d.r12 ** 2, d.r13 ** 2, d.r14 ** 2
    r23, r24, r34 = d.r23 ** 2, d.r24 ** 2, d.r34 ** 2
    matrix = np.array(
        [
            [0.0, 1.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, r12, r13, r14],
            [1.0, r12, 0.0, r23, r24],
            [1.0, r13, r23, 0.0, r34],
            [1.0, r14, r24, r34, 0.0],
        ]
    )
    return float(np.linalg.det(matrix))


def cross_ratio(config: PlanarConfiguration) -> CrossRatio:
    """Cross ratio of the bodies read as complex numbers.

    Real (zero imaginary part) exactly when the four bodies are concyclic
    or collinear; for these configurations that happens precisely on the
    b = a*c surface.
    """
    z1, z2, z3, z4 = (complex(q[0], q[1]) for q in (config.q1, config.q2, config.q3, config.q4))
    scale = max(abs(z1), abs(z2), abs(z3), abs(z4), 1.0)
    fac14 = z1 - z4
    fac23 = z2 - z3
    if abs(fac14) < 1e-12 * scale or abs(fac23) < 1e-12 * scale:
        raise DegenerateGeometryError("cross ratio undefined: a denominator factor vanishes")
    numerator = (z1 - z3) * (z2 - z4)
    denominator = fac14 * fac23
    value = numerator / denominator
    return CrossRatio(numerator=numerator, denominator=denominator, value=value, imag=value.imag)
