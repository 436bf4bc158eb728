"""Quaternion algebra: group operations, operator matrices, frame transform.

Quaternions are plain length-4 float arrays in scalar-first order
[q0, q1, q2, q3].  Unit-norm enforcement is always the caller's job;
normalize() is explicit and nothing renormalizes behind the caller's back.
"""

import math

import numpy as np

from .errors import NotNormalized, ZeroNorm
from .so3 import skew

__all__ = [
    "QUAT_IDENTITY",
    "qmul",
    "conjugate",
    "normalize",
    "quat_norm",
    "gamma_matrix",
    "xi_matrix",
    "psi_matrix",
    "psi_bar_matrix",
    "operator_matrices",
    "sandwich_transform",
]

QUAT_IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])

_UNIT_TOL = 1e-5


def quat_norm(q):
    """Euclidean norm of a 4-component quaternion."""
    return math.sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3])


def qmul(a, b):
    """Quaternion product a (.) b in the scalar/vector block form.

    [a0*b0 - a.b, a0*b + b0*a + a x b].  Associative, unit x unit stays
    unit, and composition satisfies R(a (.) b) = R(a) R(b).
    """
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.array(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + b0 * a1 + a2 * b3 - a3 * b2,
            a0 * b2 + b0 * a2 + a3 * b1 - a1 * b3,
            a0 * b3 + b0 * a3 + a1 * b2 - a2 * b1,
        ]
    )


def conjugate(q):
    """Conjugate [q0, -q]; the group inverse for unit quaternions."""
    return np.array([q[0], -q[1], -q[2], -q[3]])


def normalize(q):
    """Return q/||q||.  Raises ZeroNorm when ||q|| <= 1e-12."""
    n = quat_norm(q)
    if n <= 1e-12:
        raise ZeroNorm("cannot normalize a zero quaternion")
    return np.asarray(q, dtype=float) / n


def gamma_matrix(omega):
    """4x4 angular-velocity operator with Qdot = Gamma(omega) Q / 2.

    Layout [[0, -w^T], [w, -[w]x]]; skew, so the induced flow is
    norm-preserving.
    """
    wx, wy, wz = omega
    return np.array(
        [
            [0.0, -wx, -wy, -wz],
            [wx, 0.0, wz, -wy],
            [wy, -wz, 0.0, wx],
            [wz, wy, -wx, 0.0],
        ]
    )


def xi_matrix(q):
    """4x3 operator with Qdot = Xi(Q) omega / 2: [-q^T; q0 I + [q]x]."""
    q0 = q[0]
    qv = np.asarray(q[1:], dtype=float)
    out = np.empty((4, 3))
    out[0] = -qv
    out[1:] = q0 * np.eye(3) + skew(qv)
    return out


def psi_matrix(q):
    """4x4 operator with Qdot = Psi(Q) [0, omega] / 2.

    [[0, -q^T], [q, q0 I + [q]x]]; the first column carries q so the
    matrix acts on the pure quaternion [0, omega].
    """
    q0 = q[0]
    qv = np.asarray(q[1:], dtype=float)
    out = np.empty((4, 4))
    out[0, 0] = 0.0
    out[0, 1:] = -qv
    out[1:, 0] = qv
    out[1:, 1:] = q0 * np.eye(3) + skew(qv)
    return out


def psi_bar_matrix(q):
    """Variant of psi_matrix with +q^T in the first row.

    [[0, q^T], [q, q0 I + [q]x]]; shows up in the conjugate-trajectory
    derivative Qdot* = -PsiBar(Q) [0, omega] / 2.
    """
    out = psi_matrix(q)
    out[0, 1:] = -out[0, 1:]
    return out


def operator_matrices(omega, q):
    """All four kinematic operators (Gamma, Xi, Psi, PsiBar) at once.

    They satisfy Q (.) [0,w] = Gamma(w) Q = Xi(Q) w = Psi(Q) [0,w], which is
    the content of the four equivalent forms of the quaternion kinematics.
    """
    return gamma_matrix(omega), xi_matrix(q), psi_matrix(q), psi_bar_matrix(q)


def sandwich_transform(q, v_inertial):
    """Rotate an inertial-frame vector into the body frame.

    Evaluates the quaternion sandwich [0, vB] = Q^-1 (.) [0, vI] (.) Q,
    which equals R(Q)^T vI.  Raises NotNormalized when ||q|| strays
    from 1 beyond the four-decimal data gate.
    """
    if abs(quat_norm(q) - 1.0) > _UNIT_TOL:
        raise NotNormalized("sandwich_transform requires a unit quaternion")
    v = np.asarray(v_inertial, dtype=float)
    vbar = np.array([0.0, v[0], v[1], v[2]])
    out = qmul(qmul(conjugate(q), vbar), q)
    return out[1:]
