"""Shared generators for boundary-face points and inward offsets."""

import math

import numpy as np
import pytest

from ccfour import Face, RadialPoint, constraint_residuals, sample

SEED = 20260810


def residual_gradient(face, p):
    """Gradient of the face residual with respect to (a, b, c)."""
    a, b, c = p.as_tuple()
    grads = {
        Face.I: (1.0, 0.0, -1.0),
        Face.II: (0.0, -1.0, 0.0),
        Face.III: (-c, 2.0 * b + 2.0, -a),
        Face.IV: (2.0 * a + c, 0.0, 2.0 * c + a),
        Face.V: (-2.0 * a, 2.0 * b + 1.0, 0.0),
        Face.VI: (2.0 * c, -1.0, 2.0 * c + 2.0 * a),
    }
    g = np.array(grads[Face(face)])
    return g / np.linalg.norm(g)


def offset_inward(face, p, distance):
    """Point moved off the face into the region along the residual gradient."""
    moved = np.array(p.as_tuple()) + distance * residual_gradient(face, p)
    return RadialPoint(*moved)


def face_points(face, count, seed=SEED, margin=1e-3):
    """Points on one boundary face whose other residuals exceed `margin`."""
    face = Face(face)
    rng = np.random.default_rng(seed + 17 * list(Face).index(face))
    a_min, a_max = 1.0 / math.sqrt(3.0), math.sqrt(3.0)
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 200000:
            raise RuntimeError(f"could not place {count} points on face {face}")
        a = rng.uniform(a_min + 1e-3, a_max - 1e-3)
        b = rng.uniform(1e-3, 1.0)
        if face == Face.I:
            candidate = (a, b, a)
        elif face == Face.II:
            c = rng.uniform(1e-3, a)
            candidate = (a, 1.0, c)
        elif face == Face.III:
            candidate = (a, b, (b * b + 2.0 * b) / a)
        elif face == Face.IV:
            disc = 4.0 - 3.0 * a * a
            if disc <= 0.0:
                continue
            candidate = (a, b, 0.5 * (-a + math.sqrt(disc)))
        elif face == Face.V:
            disc = 4.0 * a * a - 3.0
            if disc <= 0.0:
                continue
            bv = 0.5 * (-1.0 + math.sqrt(disc))
            if not (0.0 < bv < 1.0):
                continue
            candidate = (a, bv, rng.uniform(1e-3, a))
        else:  # VI
            candidate = (a, b, -a + math.sqrt(a * a + b))
        if min(candidate) <= 0.0:
            continue
        residuals = dict(zip(Face, constraint_residuals(*candidate)))
        own = residuals.pop(face)
        if abs(own) > 1e-12:
            continue
        if min(residuals.values()) < margin:
            continue
        points.append(RadialPoint(*candidate))
    return points


@pytest.fixture(scope="session")
def interior_points():
    return sample(300, SEED)


@pytest.fixture(scope="session")
def interior_points_with_margin(interior_points):
    return [
        p
        for p in interior_points
        if min(constraint_residuals(*p.as_tuple())) > 1e-3
    ]
