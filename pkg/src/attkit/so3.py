"""Core SO(3)/so(3) operators on plain numpy arrays.

Vectors are length-3 float arrays and matrices are 3x3 float arrays.  Entry
R(i,j) in the 1-based row/column convention used throughout the docstrings
maps to ``R[i-1, j-1]``.  Every function is pure (inputs are never mutated),
so the whole module is safe to call from concurrent threads.
"""

import math

import numpy as np

from .errors import ImproperRotation, NotOrthogonal, NotSkew

__all__ = [
    "skew",
    "vex",
    "antisym_projection",
    "vex_pa",
    "normalized_distance",
    "so3_exp",
    "validate_rotation",
]

# Below this angle sin(a)/a and (1-cos a)/a^2 switch to their Taylor forms.
_EXP_TAYLOR_ANGLE = 1e-6
_SKEW_TOL = 1e-9


def skew(v):
    """Map a 3-vector to its skew-symmetric matrix.

    skew(v) @ w equals the cross product v x w for every w:

        [  0  -v3   v2 ]
        [ v3    0  -v1 ]
        [-v2   v1    0 ]
    """
    v1, v2, v3 = v
    return np.array([[0.0, -v3, v2], [v3, 0.0, -v1], [-v2, v1, 0.0]])


def vex(s):
    """Extract the 3-vector from a skew-symmetric matrix (inverse of skew).

    Raises NotSkew when ||S + S^T||_F exceeds 1e-9; the extraction itself
    reads the three defining entries, so vex(skew(v)) == v exactly.
    """
    s = np.asarray(s, dtype=float)
    if np.linalg.norm(s + s.T) > _SKEW_TOL:
        raise NotSkew("matrix is not skew-symmetric: ||S + S^T||_F > 1e-9")
    return np.array([s[2, 1], s[0, 2], s[1, 0]])


def antisym_projection(b):
    """Anti-symmetric projection (B - B^T)/2, the skew part of B."""
    b = np.asarray(b, dtype=float)
    return 0.5 * (b - b.T)


def vex_pa(b):
    """vex of the anti-symmetric projection of an arbitrary 3x3 matrix."""
    b = np.asarray(b, dtype=float)
    return 0.5 * np.array(
        [b[2, 1] - b[1, 2], b[0, 2] - b[2, 0], b[1, 0] - b[0, 1]]
    )


def normalized_distance(r):
    """Normalized Euclidean distance Tr{I - R}/4, in [0, 1].

    0 at the identity, 1 at any 180 deg rotation.  The value is clipped to
    [0, 1] to absorb trace round-off on valid rotations.
    """
    d = 0.25 * (3.0 - (r[0, 0] + r[1, 1] + r[2, 2]))
    return min(1.0, max(0.0, d))


def so3_exp(w):
    """Exponential map: rotation by angle ||w|| about axis w/||w||.

    Closed Rodrigues form I + sin(a)[u]x + (1-cos(a))[u]x^2 written in
    terms of [w]x (never a truncated series), with the removable 0/0
    singularity at a = 0 handled by a second-order Taylor expansion of
    sin(a)/a and (1-cos(a))/a^2 below a < 1e-6.  so3_exp(0) is exactly
    the identity.
    """
    w1, w2, w3 = w
    a2 = w1 * w1 + w2 * w2 + w3 * w3
    a = math.sqrt(a2)
    if a < _EXP_TAYLOR_ANGLE:
        sa = 1.0 - a2 / 6.0
        ca = 0.5 - a2 / 24.0
    else:
        sa = math.sin(a) / a
        half = math.sin(0.5 * a)
        ca = 2.0 * half * half / a2
    # I + sa [w]x + ca (w w^T - a^2 I), the [w]x^2 term expanded
    return np.array(
        [
            [
                1.0 - ca * (w2 * w2 + w3 * w3),
                ca * w1 * w2 - sa * w3,
                ca * w1 * w3 + sa * w2,
            ],
            [
                ca * w1 * w2 + sa * w3,
                1.0 - ca * (w1 * w1 + w3 * w3),
                ca * w2 * w3 - sa * w1,
            ],
            [
                ca * w1 * w3 - sa * w2,
                ca * w2 * w3 + sa * w1,
                1.0 - ca * (w1 * w1 + w2 * w2),
            ],
        ]
    )


def validate_rotation(m, tol=1e-9):
    """Check membership of SO(3) and return the matrix as a float array.

    Raises NotOrthogonal when ||R^T R - I||_F > tol and ImproperRotation for
    an orthogonal matrix with det = -1 (rotation by inversion, which is
    excluded from SO(3)).  No re-orthonormalization is performed: callers
    are expected to keep numerical drift below tol through the exact
    propagators.
    """
    m = np.array(m, dtype=float)
    if m.shape != (3, 3):
        raise NotOrthogonal(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotOrthogonal("matrix has non-finite entries")
    if np.linalg.norm(m.T @ m - np.eye(3)) > tol:
        raise NotOrthogonal(f"||R^T R - I||_F exceeds {tol:g}")
    if abs(np.linalg.det(m) - 1.0) > tol:
        raise ImproperRotation("det(R) = -1: rotation by inversion")
    return m
