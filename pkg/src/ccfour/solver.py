"""Root solve for the diagonal angle.

For each admissible radial point there is exactly one angle at which the
configuration is central.  That angle is the unique zero of the Dziobek
consistency residual

    (r24^3 - r14^3)(r13^3 - r12^3)(r23^3 - r34^3)
        - (r12^3 - r14^3)(r24^3 - r34^3)(r13^3 - r23^3),

which is strictly decreasing in theta across the cosine bracket and
changes sign at its endpoints, so bisection followed by safeguarded
Newton steps is globally convergent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .domain import (
    OUTSIDE,
    AngleBracket,
    boundary_theta,
    contains,
    cosine_bounds,
)
from .errors import NonConvergenceError, OutsideDomainError
from .geometry import MutualDistances, RadialPoint, mutual_distances

__all__ = [
    "AngleSolution",
    "dziobek_residual",
    "dziobek_residual_dtheta",
    "dziobek_residual_dc",
    "dc_coefficients",
    "solve_theta",
    "dtheta_dc",
]

BISECTION_WIDTH = 1e-3
COLLAPSE_WIDTH = 1e-14
MAX_ITERATIONS = 200
DEFAULT_THETA_TOL = 1e-13


def _cubes(d: MutualDistances) -> tuple[float, float, float, float, float, float]:
    return (d.r12 ** 3, d.r13 ** 3, d.r14 ** 3, d.r23 ** 3, d.r24 ** 3, d.r34 ** 3)


def dziobek_residual(p: RadialPoint, theta: float) -> float:
    """Consistency residual whose zero marks the central configuration."""
    c12, c13, c14, c23, c24, c34 = _cubes(mutual_distances(p, theta))
    return (c24 - c14) * (c13 - c12) * (c23 - c34) - (c12 - c14) * (c24 - c34) * (c13 - c23)


def dziobek_residual_dtheta(p: RadialPoint, theta: float) -> float:
    """Analytic partial derivative of the residual with respect to theta.

    Equals -3 sin(theta) (a r12 w1 + a b r23 w2 + c r14 w3 + b c r34 w4)
    with the four weights built from cube differences; strictly negative
    across the bracket of an interior point.
    """
    d = mutual_distances(p, theta)
    c12, c13, c14, c23, c24, c34 = _cubes(d)
    w1 = (c24 - c14) * (c23 - c34) + (c24 - c34) * (c13 - c23)
    w2 = (c24 - c14) * (c13 - c12) + (c24 - c34) * (c12 - c14)
    w3 = (c24 - c34) * (c13 - c23) - (c13 - c12) * (c23 - c34)
    w4 = (c24 - c14) * (c13 - c12) - (c12 - c14) * (c13 - c23)
    a, b, c = p.a, p.b, p.c
    return -3.0 * math.sin(theta) * (
        a * d.r12 * w1 + a * b * d.r23 * w2 + c * d.r14 * w3 + b * c * d.r34 * w4
    )


def dc_coefficients(p: RadialPoint, theta: float) -> tuple[float, float, float]:
    """The three cube-difference coefficients entering d(residual)/dc.

    On solved configurations the first is non-negative, the second strictly
    positive, the third strictly negative with (second + third) >= 0.
    """
    c12, c13, c14, c23, c24, c34 = _cubes(mutual_distances(p, theta))
    g1 = (c13 - c12) * (c23 - c34) - (c13 - c23) * (c12 - c14)
    g2 = (c13 - c23) * (c24 - c34) - (c13 - c12) * (c23 - c34)
    g3 = (c13 - c23) * (c12 - c14) - (c13 - c12) * (c24 - c14)
    return g1, g2, g3


def dziobek_residual_dc(p: RadialPoint, theta: float) -> float:
    """Analytic partial derivative of the residual with respect to c."""
    d = mutual_distances(p, theta)
    g1, g2, g3 = dc_coefficients(p, theta)
    ct = math.cos(theta)
    return (
        3.0 * d.r24 ** 2 * g1
        + 3.0 * d.r14 * (p.c + ct) * g2
        + 3.0 * d.r34 * (p.c - p.b * ct) * g3
    )


@dataclass(frozen=True)
class AngleSolution:
    """Solved diagonal angle with bracket and convergence diagnostics."""

    theta: float
    residual: float
    scaled_residual: float
    bracket: AngleBracket
    iterations: int
    converged: bool
    on_boundary: bool


def _scaled(p: RadialPoint, theta: float, residual: float) -> float:
    # residual mixes ninth powers of distances; normalize by the largest
    d = mutual_distances(p, theta)
    return abs(residual) / d.max_r ** 9


def solve_theta(p: RadialPoint, tol: float = DEFAULT_THETA_TOL) -> AngleSolution:
    """Solve for the unique diagonal angle of an admissible point.

    Parameters
    ----------
    p : RadialPoint
        Interior or boundary point; exterior points raise
        OutsideDomainError.
    tol : float
        Stopping width on theta (radians).  Convergence is declared on the
        step size; the residual is reported as a diagnostic.

    Interior points are solved by bisection down to a 1e-3 bracket followed
    by Newton steps that fall back to bisection whenever they would leave
    the bracket.  Boundary points (bracket width <= 1e-14) short-circuit to
    the closed-form face angle.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    membership = contains(p)
    if membership.status == OUTSIDE:
        raise OutsideDomainError(
            f"point {p.as_tuple()} violates constraints {[str(f) for f in membership.violated]}",
            membership,
        )
    k1, k2 = cosine_bounds(p)

    if k2 - k1 <= COLLAPSE_WIDTH:
        if membership.faces:
            theta = boundary_theta(p, membership.faces[0])
        else:
            theta = math.acos(min(1.0, max(-1.0, 0.5 * (k1 + k2))))
        bracket = AngleBracket.from_cosines(min(k1, k2), max(k1, k2))
        residual = abs(dziobek_residual(p, theta))
        return AngleSolution(
            theta=theta,
            residual=residual,
            scaled_residual=_scaled(p, theta, residual),
            bracket=bracket,
            iterations=0,
            converged=True,
            on_boundary=True,
        )

    bracket = AngleBracket.from_cosines(k1, k2)
    lo, hi = bracket.theta_l, bracket.theta_u
    iterations = 0

    # The residual is positive at theta_l and negative at theta_u, so a
    # positive midpoint value moves the lower edge up.
    while hi - lo > BISECTION_WIDTH:
        iterations += 1
        if iterations > MAX_ITERATIONS:
            raise NonConvergenceError(f"bisection failed to reduce the bracket for {p.as_tuple()}")
        mid = 0.5 * (lo + hi)
        if dziobek_residual(p, mid) > 0.0:
            lo = mid
        else:
            hi = mid

    x = 0.5 * (lo + hi)
    converged = False
    small_steps = 0
    while iterations < MAX_ITERATIONS:
        iterations += 1
        fx = dziobek_residual(p, x)
        if fx == 0.0:
            converged = True
            break
        if fx > 0.0:
            lo = x
        else:
            hi = x
        dfx = dziobek_residual_dtheta(p, x)
        if dfx != 0.0:
            candidate = x - fx / dfx
            if abs(candidate - x) < tol or hi - lo < tol:
                # within tol of the root; one more pass polishes the
                # residual to its rounding floor before stopping
                x = min(max(candidate, lo), hi)
                small_steps += 1
                if small_steps >= 2:
                    converged = True
                    break
                continue
            if not (lo < candidate < hi):
                candidate = 0.5 * (lo + hi)
        else:
            candidate = 0.5 * (lo + hi)
        small_steps = 0
        x = candidate
    if not converged:
        raise NonConvergenceError(f"angle solve exceeded {MAX_ITERATIONS} iterations at {p.as_tuple()}")

    x = min(max(x, bracket.theta_l), bracket.theta_u)
    residual = abs(dziobek_residual(p, x))
    return AngleSolution(
        theta=x,
        residual=residual,
        scaled_residual=_scaled(p, x, residual),
        bracket=bracket,
        iterations=iterations,
        converged=True,
        on_boundary=False,
    )


def dtheta_dc(p: RadialPoint, tol: float = DEFAULT_THETA_TOL) -> float:
    """Implicit-function derivative of the solved angle with respect to c.

    Strictly positive on the interior; zero on the b = 1 kite face where
    the angle is constant.
    """
    solution = solve_theta(p, tol)
    num = dziobek_residual_dc(p, solution.theta)
    den = dziobek_residual_dtheta(p, solution.theta)
    return -num / den
