"""Continuous derivatives, discrete propagators, and attitude error states.

The continuous dynamics are Rdot = R [Omega]x with Omega the body-referenced
angular velocity in rad/s.  The exact discrete propagators advance by the
closed-form flow of a constant rate held over the step; they preserve the
SO(3)/unit-norm invariants to round-off and never renormalize.  The generic
RK4 step is plumbing for the Euler/Rodriguez/quaternion rate comparisons and
converts derivative-rule failures into IntegrationFailure stamped with the
failure time.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import GimbalLock, InconsistentDerivatives, IntegrationFailure
from .quaternions import conjugate, gamma_matrix, psi_matrix, qmul
from .representations import quaternion_to_rotation
from .so3 import skew, so3_exp

__all__ = [
    "EulerRateJacobian",
    "rotation_derivative",
    "propagate_rotation_exact",
    "euler_rate_jacobian",
    "euler_rate",
    "rodriguez_derivative",
    "quaternion_derivative",
    "propagate_quaternion_exact",
    "rk4_step",
    "rotational_acceleration",
    "attitude_error",
    "attitude_error_derivative",
    "quaternion_error",
    "quaternion_error_derivative",
    "rodriguez_error_derivative",
]

_COS_PITCH_TOL = 1e-7


class EulerRateJacobian(NamedTuple):
    """Euler-rate transformation J (xidot = J Omega) and its inverse."""

    j: np.ndarray
    j_inv: np.ndarray


def rotation_derivative(r, omega):
    """Attitude dynamics Rdot = R [Omega]x."""
    return np.asarray(r, dtype=float) @ skew(omega)


def propagate_rotation_exact(r, omega, dt):
    """One exact discrete attitude step R exp([Omega]x dt).

    This is the exact flow of Rdot = R [Omega]x for a rate held constant
    over the step, so orthonormality and det = +1 are preserved to
    round-off regardless of step size.
    """
    return np.asarray(r, dtype=float) @ so3_exp(np.asarray(omega, dtype=float) * dt)


def euler_rate_jacobian(xi):
    """Transformation between body rates and Euler rates, with inverse.

        J = [1  sin(phi) tan(th)  cos(phi) tan(th)]
            [0  cos(phi)          -sin(phi)       ]
            [0  sin(phi)/cos(th)  cos(phi)/cos(th)]

    J is only locally defined: raises GimbalLock when |cos(pitch)| < 1e-7,
    where no transformation exists.
    """
    cphi, sphi = math.cos(xi[0]), math.sin(xi[0])
    cth, sth = math.cos(xi[1]), math.sin(xi[1])
    if abs(cth) < _COS_PITCH_TOL:
        raise GimbalLock("Euler rates undefined at +/-90 deg pitch")
    tth = sth / cth
    j = np.array(
        [
            [1.0, sphi * tth, cphi * tth],
            [0.0, cphi, -sphi],
            [0.0, sphi / cth, cphi / cth],
        ]
    )
    j_inv = np.array(
        [
            [1.0, 0.0, -sth],
            [0.0, cphi, sphi * cth],
            [0.0, -sphi, cphi * cth],
        ]
    )
    return EulerRateJacobian(j, j_inv)


def euler_rate(xi, omega):
    """Euler rates xidot = J(xi) Omega.  Raises GimbalLock near lock."""
    cphi, sphi = math.cos(xi[0]), math.sin(xi[0])
    cth, sth = math.cos(xi[1]), math.sin(xi[1])
    if abs(cth) < _COS_PITCH_TOL:
        raise GimbalLock("Euler rates undefined at +/-90 deg pitch")
    wx, wy, wz = omega
    a = sphi * wy + cphi * wz
    return np.array(
        [wx + a * sth / cth, cphi * wy - sphi * wz, a / cth]
    )


def rodriguez_derivative(rho, omega):
    """Rodriguez dynamics (I + [rho]x + rho rho^T) Omega / 2."""
    r1, r2, r3 = rho
    w1, w2, w3 = omega
    dot = r1 * w1 + r2 * w2 + r3 * w3
    return 0.5 * np.array(
        [
            w1 + r2 * w3 - r3 * w2 + r1 * dot,
            w2 + r3 * w1 - r1 * w3 + r2 * dot,
            w3 + r1 * w2 - r2 * w1 + r3 * dot,
        ]
    )


def quaternion_derivative(q, omega):
    """Quaternion dynamics Qdot = Gamma(Omega) Q / 2.

    Equal to Q (.) [0, Omega] / 2 = Xi(Q) Omega / 2 = Psi(Q) [0, Omega] / 2;
    the flow is tangent (Q . Qdot = 0), so the norm is preserved.
    """
    q0, q1, q2, q3 = q
    w1, w2, w3 = omega
    return 0.5 * np.array(
        [
            -q1 * w1 - q2 * w2 - q3 * w3,
            q0 * w1 + q2 * w3 - q3 * w2,
            q0 * w2 + q3 * w1 - q1 * w3,
            q0 * w3 + q1 * w2 - q2 * w1,
        ]
    )


def propagate_quaternion_exact(q, omega, dt):
    """One exact discrete quaternion step exp(Gamma(Omega) dt / 2) Q.

    Gamma(Omega)^2 = -||Omega||^2 I, so the exponential closes to
    cos(||Omega|| dt/2) I + sin(||Omega|| dt/2)/||Omega|| Gamma(Omega),
    with the ||Omega|| -> 0 limit I + (dt/2) Gamma handled by a Taylor
    guard.  Norm-preserving; never renormalizes.
    """
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    n = math.sqrt(omega[0] ** 2 + omega[1] ** 2 + omega[2] ** 2)
    x = 0.5 * n * dt
    if x < 1e-6:
        c = 0.5 * dt * (1.0 - x * x / 6.0)
    else:
        c = math.sin(x) / n
    return math.cos(x) * q + c * (gamma_matrix(omega) @ q)


def rk4_step(f, t, y, dt):
    """One classical fourth-order Runge-Kutta step for ydot = f(t, y).

    A GimbalLock or overflow raised by the derivative rule, or a
    non-finite result, aborts with IntegrationFailure carrying the step's
    start time.  Callers integrating quaternion states renormalize the
    result themselves (the raw step is representation-agnostic).
    """
    try:
        k1 = f(t, y)
        k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1)
        k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2)
        k4 = f(t + dt, y + dt * k3)
    except (GimbalLock, OverflowError, FloatingPointError) as exc:
        raise IntegrationFailure(t, str(exc)) from exc
    out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    # a non-finite component makes the component sum non-finite; states here
    # are guarded well below the float range where the sum itself could blow
    total = out.sum() if isinstance(out, np.ndarray) else out
    if not math.isfinite(total):
        raise IntegrationFailure(t, "state became non-finite")
    return out


def rotational_acceleration(q, qdot, qddot):
    """Body angular acceleration from a quaternion trajectory.

    Evaluates [0, Omegadot] = 2 (Q* (.) Qddot + Qdot (.) Qdot*) and returns
    the vector part.  The scalar part must vanish for derivatives that are
    consistent with a unit-quaternion trajectory; raises
    InconsistentDerivatives when it exceeds 1e-6.
    """
    out = 2.0 * (qmul(conjugate(q), qddot) + qmul(qdot, conjugate(qdot)))
    if abs(out[0]) > 1e-6:
        raise InconsistentDerivatives(
            f"scalar part {out[0]:.3e} of the acceleration identity is non-zero"
        )
    return out[1:]


def attitude_error(r, r_star):
    """Attitude error Rtilde = R^T Rstar (I at perfect agreement)."""
    return np.asarray(r, dtype=float).T @ np.asarray(r_star, dtype=float)


def attitude_error_derivative(err, omega, omega_star):
    """Error dynamics Rtildedot = -[Omega]x Rtilde + Rtilde [Omegastar]x."""
    err = np.asarray(err, dtype=float)
    return -skew(omega) @ err + err @ skew(omega_star)


def quaternion_error(q, q_star):
    """Quaternion error Qtilde = Qstar^-1 (.) Q (identity at agreement)."""
    return qmul(conjugate(q_star), q)


def quaternion_error_derivative(q_err, omega, omega_star):
    """Error dynamics Qtildedot = Psi(Qtilde) [0, Omegatilde] / 2.

    The reduced angular-velocity error is the reference rate re-expressed
    in the true body frame, Omegatilde = Omega - R(Qtilde)^T Omegastar
    (R(Qtilde) carries true-body coordinates into the reference body
    frame, so its transpose brings Omegastar across).  With the transpose
    in place this single-Psi form is identical to the unsimplified
    two-term derivative assembled from both trajectories:

        [ qt . (Omegastar - Omega) ]
        [ qt0 (Omega - Omegastar) + [qt]x (Omegastar + Omega) ] / 2
    """
    q_err = np.asarray(q_err, dtype=float)
    omega_t = np.asarray(omega, dtype=float) - quaternion_to_rotation(
        q_err
    ).T @ np.asarray(omega_star, dtype=float)
    return 0.5 * (psi_matrix(q_err) @ np.array([0.0, *omega_t]))


def rodriguez_error_derivative(rho_err, r_star, beta):
    """Rodriguez error dynamics -(I + [rt]x + rt rt^T) Rstar beta / 2.

    beta is the rate mismatch driving the error; beta = 0 freezes it.
    """
    rho_err = np.asarray(rho_err, dtype=float)
    v = np.asarray(r_star, dtype=float) @ np.asarray(beta, dtype=float)
    return -0.5 * (v + np.cross(rho_err, v) + rho_err * (rho_err @ v))
