"""The admissible region of radial coordinates.

A point (a, b, c) admits a convex central configuration with positive
masses exactly when six polynomial inequalities hold.  Their zero sets are
the six boundary faces, labeled I through VI:

    I    a - c                 >= 0        (kite plane, equal masses 2 and 4)
    II   1 - b                 >= 0        (kite plane, equal masses 1 and 3)
    III  b^2 + 2b - a*c        >  0        (three masses vanish in the limit)
    IV   c^2 + a*c + a^2 - 1   >  0        (mass 3 vanishes)
    V    b^2 + b + 1 - a^2     >  0        (mass 4 vanishes)
    VI   c^2 + 2*a*c - b       >  0        (three masses vanish)

Faces I and II belong to the region itself; the other four are zero-mass
limits.  The region sits inside the box [1/sqrt(3), sqrt(3)] x [0, 1] x
[0, sqrt(3)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BracketCollapseError, FaceMismatchError, OutOfProjectionError
from .geometry import RadialPoint

__all__ = [
    "Face",
    "INTERIOR",
    "BOUNDARY",
    "OUTSIDE",
    "DomainMembership",
    "AngleBracket",
    "Vertex",
    "FACE_VERTICES",
    "ProjectionInterval",
    "A_MIN",
    "A_MAX",
    "B_MAX",
    "C_MAX",
    "DEFAULT_BOUNDARY_TOL",
    "constraint_residuals",
    "contains",
    "cosine_bounds",
    "angle_bracket",
    "boundary_theta",
    "vertices",
    "projection_lower_edge",
    "projection_bounds",
    "sample",
]


class Face(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"

    def __str__(self) -> str:  # plain label in messages and CSV output
        return self.value


INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"

A_MIN = 1.0 / math.sqrt(3.0)
A_MAX = math.sqrt(3.0)
B_MAX = 1.0
C_MAX = math.sqrt(3.0)

DEFAULT_BOUNDARY_TOL = 1e-9


def constraint_residuals(a, b, c):
    """The six face residuals, positive strictly inside the region.

    Polynomial form throughout (no divisions), so the same expressions are
    valid for scalars and numpy arrays and tolerances act on a uniform
    scale.
    """
    return (
        a - c,
        1.0 - b,
        b * b + 2.0 * b - a * c,
        c * c + a * c + a * a - 1.0,
        b * b + b + 1.0 - a * a,
        c * c + 2.0 * a * c - b,
    )


@dataclass(frozen=True)
class DomainMembership:
    """Classification of a radial point against the region."""

    status: str
    faces: tuple[Face, ...]
    violated: tuple[Face, ...]
    residuals: dict

    @property
    def inside(self) -> bool:
        return self.status != OUTSIDE


def contains(p: RadialPoint, tol: float = DEFAULT_BOUNDARY_TOL) -> DomainMembership:
    """Classify p as interior, boundary, or outside.

    Parameters
    ----------
    p : RadialPoint
        Point with strictly positive coordinates.
    tol : float
        Half-width of the boundary band, applied to each polynomial
        residual.  Residuals below -tol mark a violated constraint,
        residuals within [-tol, tol] put the point on that face.
    """
    if tol < 0.0:
        raise ValueError("tol must be non-negative")
    if min(p.a, p.b, p.c) <= 0.0:
        raise ValueError(f"contains() requires strictly positive coordinates, got {p.as_tuple()}")
    values = constraint_residuals(p.a, p.b, p.c)
    residuals = dict(zip(Face, values))
    violated = tuple(face for face, r in residuals.items() if r < -tol)
    if violated:
        return DomainMembership(OUTSIDE, (), violated, residuals)
    faces = tuple(face for face, r in residuals.items() if abs(r) <= tol)
    status = BOUNDARY if faces else INTERIOR
    return DomainMembership(status, faces, (), residuals)


def cosine_bounds(p: RadialPoint) -> tuple[float, float]:
    """Bounds (k1, k2) on cos(theta) compatible with the side-length ordering.

    k1 < cos(theta) < k2 is equivalent to the strict form of the ordering
    diagonals > longest side >= adjacent sides >= shortest side; the bracket
    pinches to a point on the boundary of the region.
    """
    a, b, c = p.a, p.b, p.c
    if min(a, b, c) <= 0.0:
        raise ValueError("cosine bounds require strictly positive coordinates")
    k1 = max(
        (c - a) / (2.0 * b),
        (b - 1.0) / (2.0 * c),
        (a * a - b * b - 2.0 * b) / (2.0 * a),
        (1.0 - c * c - 2.0 * a * c) / (2.0 * a),
    )
    k2 = min((a - c) / 2.0, (1.0 - b) / (2.0 * a))
    return k1, k2


def _clamped_acos(x: float) -> float:
    if x > 1.0:
        if x > 1.0 + 1e-12:
            raise ValueError(f"cosine argument {x!r} outside [-1, 1]")
        x = 1.0
    elif x < -1.0:
        if x < -1.0 - 1e-12:
            raise ValueError(f"cosine argument {x!r} outside [-1, 1]")
        x = -1.0
    return math.acos(x)


@dataclass(frozen=True)
class AngleBracket:
    """Cosine bounds with the corresponding angle interval [theta_l, theta_u]."""

    k1: float
    k2: float
    theta_l: float
    theta_u: float

    @classmethod
    def from_cosines(cls, k1: float, k2: float) -> "AngleBracket":
        return cls(k1=k1, k2=k2, theta_l=_clamped_acos(k2), theta_u=_clamped_acos(k1))

    @property
    def width(self) -> float:
        return self.theta_u - self.theta_l


def angle_bracket(p: RadialPoint) -> AngleBracket:
    """Bracket for the diagonal angle of an interior point.

    Raises BracketCollapseError when k2 - k1 <= 0, which signals a boundary
    or exterior point.
    """
    k1, k2 = cosine_bounds(p)
    if k2 - k1 <= 0.0:
        raise BracketCollapseError(
            f"cosine bracket collapsed (k1={k1!r}, k2={k2!r}); point is not interior"
        )
    return AngleBracket.from_cosines(k1, k2)


def boundary_theta(p: RadialPoint, face: Face, tol: float = DEFAULT_BOUNDARY_TOL) -> float:
    """The unique diagonal angle of a point on the given boundary face.

    Faces I and II force theta = pi/2 (kites); faces III and IV give
    arccos((a - c)/2) and faces V and VI give arccos((1 - b)/(2a)).
    """
    face = Face(face)
    index = list(Face).index(face)
    residual = constraint_residuals(p.a, p.b, p.c)[index]
    if abs(residual) > tol:
        raise FaceMismatchError(
            f"point {p.as_tuple()} is not on face {face} (residual {residual!r})"
        )
    if face in (Face.I, Face.II):
        return 0.5 * math.pi
    if face in (Face.III, Face.IV):
        return _clamped_acos((p.a - p.c) / 2.0)
    return _clamped_acos((1.0 - p.b) / (2.0 * p.a))


@dataclass(frozen=True)
class Vertex:
    label: str
    point: RadialPoint


# Vertex triples carried by each face; the inverse map assigns four faces
# to P1, P3 and P4 and three to P2 and P5.
FACE_VERTICES = {
    Face.I: ("P2", "P3", "P4"),
    Face.II: ("P3", "P4", "P5"),
    Face.III: ("P1", "P2", "P4"),
    Face.IV: ("P1", "P2", "P3"),
    Face.V: ("P1", "P4", "P5"),
    Face.VI: ("P1", "P3", "P5"),
}


def vertices() -> tuple[Vertex, ...]:
    """The five corner points of the closed region."""
    s3 = math.sqrt(3.0)
    return (
        Vertex("P1", RadialPoint(1.0, 0.0, 0.0)),
        Vertex("P2", RadialPoint(1.0 / s3, (2.0 - s3) / s3, 1.0 / s3)),
        Vertex("P3", RadialPoint(1.0 / s3, 1.0, 1.0 / s3)),
        Vertex("P4", RadialPoint(s3, 1.0, s3)),
        Vertex("P5", RadialPoint(s3, 1.0, 2.0 - s3)),
    )


def projection_lower_edge(a: float) -> float:
    """Lower edge l(a) of the footprint in the (a, b) plane."""
    if a < A_MIN - 1e-12 or a > A_MAX + 1e-12:
        raise OutOfProjectionError(f"a={a!r} outside [{A_MIN}, {A_MAX}]")
    if a <= 1.0:
        return -1.0 + 0.5 * (a + math.sqrt(4.0 - 3.0 * a * a))
    return 0.5 * (-1.0 + math.sqrt(4.0 * a * a - 3.0))


@dataclass(frozen=True)
class ProjectionInterval:
    """c-interval over an (a, b) footprint point, tagged by sub-region."""

    c_lo: float
    c_hi: float
    region: str


def projection_bounds(a: float, b: float) -> ProjectionInterval:
    """The admissible c-interval above (a, b) and its sub-region tag.

    The footprint splits into four elementary sub-regions according to
    which faces bound c from below (VI or IV) and above (I or III):

        i   : VI <= c <= I      ii : IV <= c <= I
        iii : IV <= c <= III    iv : VI <= c <= III
    """
    if not (A_MIN - 1e-12 <= a <= A_MAX + 1e-12) or b > B_MAX + 1e-12:
        raise OutOfProjectionError(f"(a, b)=({a!r}, {b!r}) outside the footprint")
    edge = projection_lower_edge(a)
    if b < edge - 1e-12:
        raise OutOfProjectionError(f"b={b!r} below the footprint edge l(a)={edge!r}")

    lo_vi = -a + math.sqrt(a * a + b)
    disc = 4.0 - 3.0 * a * a
    lo_iv = 0.5 * (-a + math.sqrt(disc)) if disc >= 0.0 else -math.inf
    hi_i = a
    hi_iii = (b * b + 2.0 * b) / a

    lower_is_iv = lo_iv > lo_vi
    upper_is_iii = hi_iii < hi_i
    region = {
        (False, False): "i",
        (True, False): "ii",
        (True, True): "iii",
        (False, True): "iv",
    }[(lower_is_iv, upper_is_iii)]

    c_lo = max(lo_vi, lo_iv)
    c_hi = min(hi_i, hi_iii)
    if c_lo > c_hi:
        if c_lo - c_hi <= 1e-10 * max(1.0, a):
            c_lo = c_hi = 0.5 * (c_lo + c_hi)  # pinched interval on an edge
        else:
            raise OutOfProjectionError(
                f"empty c-interval above (a, b)=({a!r}, {b!r}): [{c_lo!r}, {c_hi!r}]"
            )
    return ProjectionInterval(c_lo=c_lo, c_hi=c_hi, region=region)


_SAMPLE_BATCH = 8192


def sample(n: int, seed: int) -> list[RadialPoint]:
    """Draw n interior points by rejection from the bounding box.

    Deterministic for a fixed seed: candidates are drawn in fixed-size
    batches and filtered on strict positivity of all six residuals.
    """
    if n < 1:
        raise ValueError("sample requires n >= 1")
    rng = np.random.default_rng(seed)
    lo = np.array([A_MIN, 0.0, 0.0])
    hi = np.array([A_MAX, B_MAX, C_MAX])
    accepted: list[RadialPoint] = []
    while len(accepted) < n:
        batch = rng.uniform(lo, hi, size=(_SAMPLE_BATCH, 3))
        av, bv, cv = batch.T
        mask = (av > 0.0) & (bv > 0.0) & (cv > 0.0)
        for residual in constraint_residuals(av, bv, cv):
            mask &= residual > 0.0
        for row in batch[mask]:
            accepted.append(RadialPoint(row[0], row[1], row[2]))
            if len(accepted) == n:
                break
    return accepted
