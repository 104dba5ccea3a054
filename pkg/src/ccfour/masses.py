"""Mass recovery from a solved configuration.

The Dziobek equations express every mass ratio through signed areas and
inverse-cube distances.  Each ratio has several algebraically equivalent
routes (a plain pairwise quotient, a product form, chains through another
body) that disagree only through rounding; they double as a redundancy
check.  Any single route degenerates somewhere (kite planes, zero-mass
faces, rhombus vertices), so routes are scored by the conditioning of
their difference factors and degraded ones are demoted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDenominatorError,
    DegenerateGeometryError,
    MassFormulasDegenerateError,
    NonPositiveMassError,
)
from .geometry import MutualDistances, PlanarConfiguration, SignedAreas

__all__ = [
    "MassDistribution",
    "LambdaPrime",
    "lambda_prime",
    "mass_ratios",
    "gravitational_accelerations",
    "centrality_residual",
    "rhombus_ratio",
    "KITE_SWITCH",
]

M1_EQUALS_1 = "m1_equals_1"
SUM_EQUALS_1 = "sum_equals_1"

# A ratio formula is treated as degraded when any of its inverse-cube
# difference factors falls below this fraction of the largest inverse
# cube: the factor has lost ~10 significant digits and an alternative
# route (product form or chain through another body) takes over.
KITE_SWITCH = 1e-6

# Below this every difference factor of every route has collapsed, which
# happens only next to the two rhombus vertices where a side matches a
# diagonal; no formula determines the ratio there.
_HARD_FLOOR = 1e-12


@dataclass(frozen=True)
class LambdaPrime:
    """Common Dziobek multiplier: mean of the usable quotients and their spread."""

    value: float
    spread: float
    skipped: tuple[int, ...]


def lambda_prime(d: MutualDistances, floor: float = 1e-14) -> LambdaPrime:
    """Evaluate the three redundant multiplier quotients.

    Quotients whose denominator magnitude falls below `floor` are skipped
    and reported; if all three are degenerate (equal distances all around)
    a DegenerateDenominatorError is raised.
    """
    s12, s13, s14 = d.s12, d.s13, d.s14
    s23, s24, s34 = d.s23, d.s24, d.s34
    expressions = (
        (s12 * s34 - s13 * s24, s12 + s34 - s13 - s24),
        (s12 * s34 - s14 * s23, s12 + s34 - s14 - s23),
        (s13 * s24 - s14 * s23, s13 + s24 - s14 - s23),
    )
    values = []
    skipped = []
    for index, (num, den) in enumerate(expressions):
        if abs(den) < floor:
            skipped.append(index)
        else:
            values.append(num / den)
    if not values:
        raise DegenerateDenominatorError("all multiplier quotients are 0/0")
    mean = sum(values) / len(values)
    scale = max(abs(v) for v in values)
    spread = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            spread = max(spread, abs(values[i] - values[j]))
    if scale > 0.0:
        spread /= scale
    return LambdaPrime(value=mean, spread=spread, skipped=tuple(skipped))


@dataclass(frozen=True)
class MassDistribution:
    """Recovered masses with normalization mode and redundancy diagnostics."""

    m1: float
    m2: float
    m3: float
    m4: float
    normalization: str
    consistency: float
    dziobek_lambda: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.m1, self.m2, self.m3, self.m4)


def _relative_spread(values: list[float]) -> float:
    if len(values) < 2:
        return 0.0
    scale = max(abs(v) for v in values)
    if scale == 0.0:
        return 0.0
    return (max(values) - min(values)) / scale


def mass_ratios(
    d: MutualDistances,
    areas: SignedAreas,
    normalization: str = M1_EQUALS_1,
    kite_switch: float = KITE_SWITCH,
) -> MassDistribution:
    """Recover the four masses of a solved configuration.

    Parameters
    ----------
    d, areas : MutualDistances, SignedAreas
        Taken from a configuration at its solved diagonal angle.
    normalization : str
        "m1_equals_1" (default) or "sum_equals_1".
    kite_switch : float
        Conditioning floor, relative to the largest inverse cube, below
        which a formula's difference factor counts as degenerate and an
        alternative route is used (and the formula leaves the
        redundancy cross-check).

    Raises NonPositiveMassError when a recovered mass is zero or negative
    (the point is outside the positive-mass region) and
    MassFormulasDegenerateError next to the rhombus vertices where every
    formula for some ratio is 0/0.
    """
    if normalization not in (M1_EQUALS_1, SUM_EQUALS_1):
        raise ValueError(f"unknown normalization {normalization!r}")
    s12, s13, s14 = d.s12, d.s13, d.s14
    s23, s24, s34 = d.s23, d.s24, d.s34
    a1, a2, a3, a4 = areas.as_tuple()
    s_scale = max(s12, s13, s14, s23, s24, s34)
    a_scale = max(abs(a1), abs(a2), abs(a3), abs(a4))
    if not math.isfinite(s_scale) or a_scale == 0.0:
        raise DegenerateGeometryError("degenerate configuration: zero distance or area")

    # Every route for a ratio is (sign, area quotient, difference factors
    # of the numerator, difference factors of the denominator).  The first
    # route is the plain pairwise formula, then the kite-safe product form
    # and/or a chain through another body.  Routes whose smallest factor
    # has collapsed relative to the largest inverse cube are demoted.
    routes = {
        "m2/m1": (
            (-1.0, a2 / a1, (s14 - s13,), (s23 - s24,)),
            (-1.0, a2 / a1, (s12 - s13, s34 - s14), (s34 - s24, s23 - s12)),
        ),
        "m3/m1": (
            (1.0, a3 / a1, (s14 - s12,), (s34 - s23,)),
            (1.0, a3 / a1, (s12 - s13, s14 - s24), (s23 - s13, s34 - s24)),
            (1.0, a3 / a1, (s12 - s24, s14 - s13), (s34 - s13, s23 - s24)),
        ),
        "m4/m1": (
            (-1.0, a4 / a1, (s12 - s13,), (s34 - s24,)),
            (-1.0, a4 / a1, (s23 - s12, s14 - s13), (s34 - s14, s23 - s24)),
            (-1.0, a4 / a1, (s23 - s13, s12 - s24, s14 - s13), (s34 - s13, s14 - s24, s23 - s24)),
        ),
    }

    def den_score(route):
        return min(abs(f) for f in route[3]) / s_scale

    def full_score(route):
        return min(abs(f) for f in route[2] + route[3]) / s_scale

    def evaluate(route):
        sign, area_quotient, numerator, denominator = route
        return sign * area_quotient * math.prod(numerator) / math.prod(denominator)

    values = {}
    consistency = 0.0
    for name, candidates in routes.items():
        # full conditioning governs accuracy; a collapsed numerator with a
        # healthy denominator still determines the ratio (it is ~zero, the
        # zero-mass limit), while collapsed denominators on every route
        # leave the ratio undetermined (rhombus vertices)
        well = [r for r in candidates if full_score(r) >= kite_switch]
        if well:
            values[name] = evaluate(well[0])
        else:
            solvable = [r for r in candidates if den_score(r) >= kite_switch]
            if not solvable:
                best = max(candidates, key=den_score)
                if den_score(best) < _HARD_FLOOR:
                    raise MassFormulasDegenerateError(
                        f"every formula for {name} lost all significance (vertex-adjacent point)"
                    )
                solvable = [best]
            values[name] = evaluate(solvable[0])
        consistency = max(consistency, _relative_spread([evaluate(r) for r in well]))

    for name, value in values.items():
        if not math.isfinite(value) or value <= 0.0:
            raise NonPositiveMassError(f"recovered {name} = {value!r} is not positive")

    multiplier = lambda_prime(d)
    m1, m2, m3, m4 = 1.0, values["m2/m1"], values["m3/m1"], values["m4/m1"]
    if normalization == SUM_EQUALS_1:
        total = m1 + m2 + m3 + m4
        m1, m2, m3, m4 = m1 / total, m2 / total, m3 / total, m4 / total
    return MassDistribution(
        m1=m1,
        m2=m2,
        m3=m3,
        m4=m4,
        normalization=normalization,
        consistency=consistency,
        dziobek_lambda=multiplier.value,
    )


def gravitational_accelerations(points: np.ndarray, masses) -> np.ndarray:
    """Direct pairwise gravitational accelerations (G = 1).

    points is (n, 2); raises DegenerateGeometryError for coincident bodies.
    """
    points = np.asarray(points, dtype=float)
    masses = np.asarray(masses, dtype=float)
    n = len(points)
    out = np.zeros_like(points)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            diff = points[j] - points[i]
            r = math.hypot(diff[0], diff[1])
            if r < 1e-12:
                raise DegenerateGeometryError(f"bodies {i + 1} and {j + 1} coincide")
            out[i] += masses[j] * diff / r ** 3
    return out


def centrality_residual(config: PlanarConfiguration, m: MassDistribution) -> float:
    """Independent check that (positions, masses) is a central configuration.

    Returns the largest per-body misalignment between the gravitational
    acceleration and the radius vector from the center of mass (relative
    to the acceleration magnitude), plus the relative spread of the
    per-body proportionality scalars.  Both vanish exactly when each
    acceleration is a common multiple of the radius vector.
    """
    points = config.points()
    masses = np.asarray(m.as_tuple(), dtype=float)
    if np.any(masses <= 0.0):
        raise NonPositiveMassError("centrality check requires positive masses")
    g = gravitational_accelerations(points, masses)
    center = (masses[:, None] * points).sum(axis=0) / masses.sum()
    radii = points - center
    misalignment = 0.0
    scalars = []
    for i in range(4):
        g_norm = math.hypot(g[i, 0], g[i, 1])
        x_norm = math.hypot(radii[i, 0], radii[i, 1])
        if g_norm == 0.0 or x_norm == 0.0:
            raise DegenerateGeometryError("zero acceleration or radius in centrality check")
        cross = abs(g[i, 0] * radii[i, 1] - g[i, 1] * radii[i, 0])
        misalignment = max(misalignment, cross / (g_norm * x_norm))
        scalars.append(float(np.dot(g[i], radii[i])) / x_norm ** 2)
    mean = sum(scalars) / len(scalars)
    spread = (max(scalars) - min(scalars)) / abs(mean)
    return misalignment + spread


def rhombus_ratio(a: float) -> float:
    """Closed-form m2/m1 along the rhombus family (a, 1, a).

    Defined for 1/sqrt(3) < a < sqrt(3); tends to 0 as a -> sqrt(3) and
    grows without bound as a -> 1/sqrt(3), where m1 and m3 vanish.
    """
    lo = 1.0 / math.sqrt(3.0)
    hi = math.sqrt(3.0)
    if not (lo < a < hi):
        raise ValueError(f"rhombus parameter a={a!r} outside ({lo}, {hi})")
    t = (a * a + 1.0) ** 1.5
    return a ** 3 * (8.0 - t) / (8.0 * a ** 3 - t)
