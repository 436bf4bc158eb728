"""The four attitude parameterizations and every pairwise mapping.

Conventions
-----------
* Euler angles are length-3 arrays [roll, pitch, yaw] in radians.  The
  composition is about fixed axes, z-yaw after y-pitch after x-roll:
  R = Rz(psi) Ry(theta) Rx(phi).  Extraction returns roll/yaw in (-pi, pi]
  and pitch in [-pi/2, pi/2].
* Angle-axis pairs are AngleAxis(angle, axis) with a unit axis; extraction
  produces angles in (0, pi) and refuses the undefined endpoints.
* Rodriguez (Gibbs) vectors are length-3 arrays, tan(angle/2) * axis.
* Quaternions are length-4 scalar-first arrays on the unit 3-sphere;
  Q and -Q encode the same rotation, and extraction from a matrix is
  canonicalized to q0 >= 0 (first non-zero component positive on ties).

All arctangents use the two-argument quadrant-aware form; without it the
round trips through a rotation matrix would lose quadrants.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import (
    AxisNotUnit,
    GimbalLock,
    NotNormalized,
    RodriguezUndefined,
    Singular180,
    UndefinedAxis,
)
from .so3 import skew, so3_exp, vex_pa

__all__ = [
    "AngleAxis",
    "euler_to_rotation",
    "rotation_to_euler",
    "angle_axis_to_rotation",
    "rotation_to_angle_axis",
    "rodriguez_to_rotation",
    "rotation_to_rodriguez",
    "quaternion_to_rotation",
    "rotation_to_quaternion",
    "angle_axis_from_rodriguez",
    "rodriguez_from_angle_axis",
    "quaternion_from_angle_axis",
    "angle_axis_from_quaternion",
    "quaternion_from_rodriguez",
    "rodriguez_from_quaternion",
    "euler_from_rodriguez",
    "euler_from_quaternion",
]

GIMBAL_TOL = 1e-7      # on sqrt(R(3,2)^2 + R(3,3)^2), i.e. |cos(pitch)|
AXIS_TOL = 1e-7        # on sin(angle) for axis recovery
TRACE_TOL = 1e-7       # on 1 + Tr{R} for Rodriguez extraction
Q0_TOL = 1e-7          # on |q0| for q/q0
UNIT_TOL = 1e-9        # on | ||u|| - 1 | for axis inputs
# Gate on | ||Q|| - 1 | before building a matrix.  Wide enough to accept
# quaternions quoted to four decimals (norm defect up to ~4e-6) while still
# catching real normalization drift; callers renormalize past this point.
_QUAT_NORM_TOL = 1e-5


class AngleAxis(NamedTuple):
    """Rotation by `angle` (radians) about the unit vector `axis`."""

    angle: float
    axis: np.ndarray


def _wrap_half_open(a):
    # map atan2's -pi endpoint into the canonical (-pi, pi] range
    return math.pi if a == -math.pi else a


def _check_axis(u):
    u = np.asarray(u, dtype=float)
    if abs(math.sqrt(u[0] ** 2 + u[1] ** 2 + u[2] ** 2) - 1.0) > UNIT_TOL:
        raise AxisNotUnit("rotation axis must have unit length")
    return u


def euler_to_rotation(xi):
    """Rotation matrix from Euler angles [roll, pitch, yaw].

    Composition Rz(psi) Ry(theta) Rx(phi) about fixed axes, written out as
    the explicit nine-entry matrix.  Total: every angle triple yields a
    valid rotation.
    """
    cphi, sphi = math.cos(xi[0]), math.sin(xi[0])
    cth, sth = math.cos(xi[1]), math.sin(xi[1])
    cpsi, spsi = math.cos(xi[2]), math.sin(xi[2])
    return np.array(
        [
            [
                cth * cpsi,
                -cphi * spsi + sphi * sth * cpsi,
                sphi * spsi + cphi * sth * cpsi,
            ],
            [
                cth * spsi,
                cphi * cpsi + sphi * sth * spsi,
                -sphi * cpsi + cphi * sth * spsi,
            ],
            [-sth, sphi * cth, cphi * cth],
        ]
    )


def rotation_to_euler(r):
    """Euler angles [roll, pitch, yaw] from a rotation matrix.

    roll  = atan2(R(3,2), R(3,3))
    pitch = atan2(-R(3,1), sqrt(R(3,2)^2 + R(3,3)^2))
    yaw   = atan2(R(2,1), R(1,1))

    Raises GimbalLock when sqrt(R(3,2)^2 + R(3,3)^2) < 1e-7: the pitch is
    at +/-90 deg and infinitely many (roll, yaw) pairs reproduce R.
    """
    cth = math.hypot(r[2, 1], r[2, 2])
    if cth < GIMBAL_TOL:
        raise GimbalLock("pitch at +/-90 deg: Euler angles not unique")
    phi = _wrap_half_open(math.atan2(r[2, 1], r[2, 2]))
    theta = math.atan2(-r[2, 0], cth)
    psi = _wrap_half_open(math.atan2(r[1, 0], r[0, 0]))
    return np.array([phi, theta, psi])


def angle_axis_to_rotation(aa):
    """Rotation matrix for a rotation of `angle` about unit `axis`.

    Closed Rodrigues form I + sin(a)[u]x + (1-cos(a))[u]x^2; identical to
    so3_exp(angle * axis).  Raises AxisNotUnit for a non-unit axis.
    """
    angle, axis = aa
    u = _check_axis(axis)
    ux = skew(u)
    return np.eye(3) + math.sin(angle) * ux + (1.0 - math.cos(angle)) * (ux @ ux)


def rotation_to_angle_axis(r):
    """Extract AngleAxis(angle, axis) from a rotation matrix.

    angle = arccos((Tr{R} - 1)/2) clamped into arccos's domain, and
    axis = vex_pa(R)/sin(angle).  Raises UndefinedAxis when
    sin(angle) < 1e-7, which covers both the identity (angle 0) and any
    180 deg rotation; the axis is unrecoverable from vex_pa there and the
    180 deg diagonal fallback is deliberately not provided.
    """
    tr = r[0, 0] + r[1, 1] + r[2, 2]
    angle = math.acos(min(1.0, max(-1.0, 0.5 * (tr - 1.0))))
    s = math.sin(angle)
    if s < AXIS_TOL:
        raise UndefinedAxis(
            "rotation angle at a multiple of pi: axis undefined"
        )
    axis = vex_pa(r) / s
    # sin(angle) inherits the acos round-off, which inflates the axis length
    # near pi; the direction itself stays well conditioned, so rescale
    return AngleAxis(angle, axis / np.linalg.norm(axis))


def rodriguez_to_rotation(rho):
    """Rotation matrix from a Rodriguez vector via the Cayley transform.

    ((1 - ||rho||^2) I + 2 rho rho^T + 2 [rho]x) / (1 + ||rho||^2); total
    on R^3 and always exactly orthogonal up to round-off.
    """
    rho = np.asarray(rho, dtype=float)
    n2 = rho @ rho
    return (
        (1.0 - n2) * np.eye(3) + 2.0 * np.outer(rho, rho) + 2.0 * skew(rho)
    ) / (1.0 + n2)


def rotation_to_rodriguez(r):
    """Rodriguez vector from a rotation matrix (trace form).

    rho = [R(3,2)-R(2,3), R(1,3)-R(3,1), R(2,1)-R(1,2)] / (1 + Tr{R}),
    equal to vex((R + I)^-1 (R - I)).  Raises Singular180 when
    1 + Tr{R} < 1e-7: at 180 deg the Rodriguez vector diverges.
    """
    denom = 1.0 + r[0, 0] + r[1, 1] + r[2, 2]
    if denom < TRACE_TOL:
        raise Singular180("Rodriguez vector undefined at 180 deg of rotation")
    return (
        np.array(
            [r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]]
        )
        / denom
    )


def quaternion_to_rotation(q):
    """Rotation matrix R(Q) = I + 2 q0 [q]x + 2 [q]x^2.

    Identical for Q and -Q (the double cover).  Raises NotNormalized when
    ||Q|| strays from 1 beyond the four-decimal data gate; renormalize
    first.
    """
    n = math.sqrt(q[0] ** 2 + q[1] ** 2 + q[2] ** 2 + q[3] ** 2)
    if abs(n - 1.0) > _QUAT_NORM_TOL:
        raise NotNormalized(
            f"quaternion norm deviates from 1 by {abs(n - 1.0):.2e}; renormalize"
        )
    q0, q1, q2, q3 = q
    return np.array(
        [
            [
                1.0 - 2.0 * (q2 * q2 + q3 * q3),
                2.0 * (q1 * q2 - q0 * q3),
                2.0 * (q1 * q3 + q0 * q2),
            ],
            [
                2.0 * (q2 * q1 + q0 * q3),
                1.0 - 2.0 * (q1 * q1 + q3 * q3),
                2.0 * (q2 * q3 - q0 * q1),
            ],
            [
                2.0 * (q3 * q1 - q0 * q2),
                2.0 * (q3 * q2 + q0 * q1),
                1.0 - 2.0 * (q1 * q1 + q2 * q2),
            ],
        ]
    )


def rotation_to_quaternion(r):
    """Unit quaternion from a rotation matrix, canonical sign.

    All four extraction branches are implemented; the branch whose leading
    square-root argument 1 +/- R(1,1) +/- R(2,2) +/- R(3,3) is largest is
    selected, which keeps every divisor at least 2 and avoids the division
    singularity entirely.  The sign is canonicalized to q0 >= 0, breaking
    ties toward the first non-zero vector component being positive.
    """
    t0 = 1.0 + r[0, 0] + r[1, 1] + r[2, 2]
    t1 = 1.0 + r[0, 0] - r[1, 1] - r[2, 2]
    t2 = 1.0 - r[0, 0] + r[1, 1] - r[2, 2]
    t3 = 1.0 - r[0, 0] - r[1, 1] + r[2, 2]
    branch = max(range(4), key=(t0, t1, t2, t3).__getitem__)
    if branch == 0:
        q0 = 0.5 * math.sqrt(t0)
        d = 4.0 * q0
        q = np.array(
            [
                q0,
                (r[2, 1] - r[1, 2]) / d,
                (r[0, 2] - r[2, 0]) / d,
                (r[1, 0] - r[0, 1]) / d,
            ]
        )
    elif branch == 1:
        q1 = 0.5 * math.sqrt(t1)
        d = 4.0 * q1
        q = np.array(
            [
                (r[2, 1] - r[1, 2]) / d,
                q1,
                (r[0, 1] + r[1, 0]) / d,
                (r[0, 2] + r[2, 0]) / d,
            ]
        )
    elif branch == 2:
        q2 = 0.5 * math.sqrt(t2)
        d = 4.0 * q2
        q = np.array(
            [
                (r[0, 2] - r[2, 0]) / d,
                (r[0, 1] + r[1, 0]) / d,
                q2,
                (r[1, 2] + r[2, 1]) / d,
            ]
        )
    else:
        q3 = 0.5 * math.sqrt(t3)
        d = 4.0 * q3
        q = np.array(
            [
                (r[1, 0] - r[0, 1]) / d,
                (r[0, 2] + r[2, 0]) / d,
                (r[1, 2] + r[2, 1]) / d,
                q3,
            ]
        )
    for component in q:
        if component > 0.0:
            break
        if component < 0.0:
            q = -q
            break
    return q


def angle_axis_from_rodriguez(rho):
    """AngleAxis from a Rodriguez vector: angle = 2 atan(||rho||).

    The axis is rho/||rho|| (the cot(angle/2) scaling of rho).  Raises
    UndefinedAxis at rho = 0, where no rotation axis exists.
    """
    rho = np.asarray(rho, dtype=float)
    n = math.sqrt(rho @ rho)
    if n <= 1e-9:
        raise UndefinedAxis("zero Rodriguez vector has no rotation axis")
    return AngleAxis(2.0 * math.atan(n), rho / n)


def rodriguez_from_angle_axis(aa):
    """Rodriguez vector tan(angle/2) * axis.

    Raises Singular180 when the angle is within 1e-7 of an odd multiple of
    pi (||rho|| diverges there) and AxisNotUnit for a non-unit axis.
    """
    angle, axis = aa
    u = _check_axis(axis)
    if abs(math.cos(0.5 * angle)) < AXIS_TOL:
        raise Singular180("tan(angle/2) diverges at 180 deg of rotation")
    return math.tan(0.5 * angle) * u


def quaternion_from_angle_axis(aa):
    """Unit quaternion [cos(angle/2), axis sin(angle/2)].

    Unit-norm by construction.  Raises AxisNotUnit for a non-unit axis.
    """
    angle, axis = aa
    u = _check_axis(axis)
    half = 0.5 * angle
    return np.array([math.cos(half), *(math.sin(half) * u)])


def angle_axis_from_quaternion(q):
    """AngleAxis from a unit quaternion: angle = 2 arccos(q0).

    A quaternion with negative scalar part is first flipped to its
    antipode (same rotation) so extracted angles stay in (0, pi).  Raises
    UndefinedAxis when |q0| >= 1 - 1e-12 (the identity: no axis).
    """
    q = np.asarray(q, dtype=float)
    if q[0] < 0.0:
        q = -q
    q0 = min(1.0, q[0])
    if q0 >= 1.0 - 1e-12:
        raise UndefinedAxis("identity quaternion has no rotation axis")
    angle = 2.0 * math.acos(q0)
    return AngleAxis(angle, q[1:] / math.sin(0.5 * angle))


def quaternion_from_rodriguez(rho):
    """Unit quaternion from a Rodriguez vector (positive-q0 branch).

    q0 = 1/sqrt(1 + ||rho||^2), q = rho * q0; total on R^3.
    """
    rho = np.asarray(rho, dtype=float)
    q0 = 1.0 / math.sqrt(1.0 + rho @ rho)
    return np.array([q0, *(q0 * rho)])


def rodriguez_from_quaternion(q):
    """Rodriguez vector q/q0 (invariant under Q -> -Q).

    Raises RodriguezUndefined when |q0| <= 1e-7: at 180 deg of rotation
    the Rodriguez vector does not exist.
    """
    if abs(q[0]) <= Q0_TOL:
        raise RodriguezUndefined("q/q0 undefined at 180 deg of rotation")
    return np.asarray(q[1:], dtype=float) / q[0]


def euler_from_rodriguez(rho):
    """Euler angles straight from a Rodriguez vector.

    Evaluates the closed-form entries of the induced rotation (the common
    1 + ||rho||^2 factor cancels inside atan2), so the result agrees with
    rotation_to_euler(rodriguez_to_rotation(rho)).  Raises GimbalLock at
    the induced matrix's 90 deg pitch configurations.
    """
    r1, r2, r3 = np.asarray(rho, dtype=float)
    n2 = r1 * r1 + r2 * r2 + r3 * r3
    s32 = 2.0 * (r2 * r3 + r1)
    s33 = 1.0 + r3 * r3 - r1 * r1 - r2 * r2
    s31 = 2.0 * (r1 * r3 - r2)
    s21 = 2.0 * (r1 * r2 + r3)
    s11 = 1.0 + r1 * r1 - r2 * r2 - r3 * r3
    cth = math.hypot(s32, s33)
    if cth < GIMBAL_TOL * (1.0 + n2):
        raise GimbalLock("pitch at +/-90 deg: Euler angles not unique")
    return np.array(
        [
            _wrap_half_open(math.atan2(s32, s33)),
            math.atan2(-s31, cth),
            _wrap_half_open(math.atan2(s21, s11)),
        ]
    )


def euler_from_quaternion(q):
    """Euler angles straight from a unit quaternion.

    roll  = atan2(2(q3 q2 + q0 q1), 1 - 2(q1^2 + q2^2))
    pitch = arcsin(2(q0 q2 - q3 q1))
    yaw   = atan2(2(q2 q1 + q0 q3), 1 - 2(q2^2 + q3^2))

    Raises GimbalLock when the arcsin argument saturates beyond 1 - 1e-9.
    Agrees with rotation_to_euler(quaternion_to_rotation(q)) away from
    lock.
    """
    q0, q1, q2, q3 = q
    s = 2.0 * (q0 * q2 - q3 * q1)
    if abs(s) > 1.0 - 1e-9:
        raise GimbalLock("pitch at +/-90 deg: Euler angles not unique")
    return np.array(
        [
            _wrap_half_open(
                math.atan2(2.0 * (q3 * q2 + q0 * q1), 1.0 - 2.0 * (q1 * q1 + q2 * q2))
            ),
            math.asin(s),
            _wrap_half_open(
                math.atan2(2.0 * (q2 * q1 + q0 * q3), 1.0 - 2.0 * (q2 * q2 + q3 * q3))
            ),
        ]
    )
