"""Vector measurements, the M-weighted distance machinery, and identity audits.

A measurement is an (inertial, body) vector pair tied together by
vB = R^T vI.  Sums of normalized outer products of such vectors build the
symmetric weighting matrix M used by the weighted-distance bound; its
companion is Mbar = Tr{M} I - M, whose minimum singular value sets the bound
constant.  The identity_audit evaluator scores every closed-form identity
the library relies on as a worst-case residual over uniformly sampled
rotations.

Everything here is noise-free by construction: the output matrix H satisfies
H Q = 0 exactly only for bias- and noise-free measurement pairs.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    CollinearMeasurements,
    DenominatorVanishes,
    Singular180,
    SingularM,
    TooFewMeasurements,
    UndefinedAxis,
)
from .representations import (
    rotation_to_angle_axis,
    rotation_to_quaternion,
    rotation_to_rodriguez,
    quaternion_to_rotation,
)
from .so3 import normalized_distance, skew, vex_pa

__all__ = [
    "VectorPair",
    "WeightMatrix",
    "IdentityAuditReport",
    "body_from_inertial",
    "build_weight_matrix",
    "weighted_distance",
    "vex_pa_weighted",
    "weighted_distance_bound",
    "measurement_output_matrix",
    "symmetric_eigenvalues",
    "identity_audit",
]

_COLLINEAR_TOL = 1e-6
# Identities routed through the Rodriguez/angle-axis parameterizations are
# scored only up to 1 deg short of the 180 deg singular set; closer in, the
# parameterizations themselves cease to be meaningful.
_AUDIT_ANGLE_CAP = math.pi * (179.0 / 180.0)
_BOUND_ANGLE_CAP = math.pi * (170.0 / 180.0)


class VectorPair(NamedTuple):
    """One vector observed in both frames (vB = R^T vI when consistent)."""

    v_inertial: np.ndarray
    v_body: np.ndarray


@dataclass(frozen=True)
class WeightMatrix:
    """Measurement weighting M, its companion Mbar, and min singular value."""

    m: np.ndarray
    mbar: np.ndarray
    lambda_min: float


def body_from_inertial(r, v_inertial):
    """Express an inertial-frame vector in the body frame: vB = R^T vI."""
    return np.asarray(r, dtype=float).T @ np.asarray(v_inertial, dtype=float)


def build_weight_matrix(pairs, frame="body"):
    """Accumulate M = sum_i v_i v_i^T / ||v_i||^2 over measurement vectors.

    `frame` selects whether the body- or inertial-side vectors are summed.
    Two measurements are augmented with their normalized cross product so
    that M always has full rank; fewer than two raise TooFewMeasurements
    and a (nearly) collinear first pair raises CollinearMeasurements.
    Tr{M} equals the number of summed vectors, so three measurements give
    the Tr{M} = 3 regime the weighted-distance bound requires.
    """
    if frame not in ("body", "inertial"):
        raise ValueError(f"frame must be 'body' or 'inertial', got {frame!r}")
    if len(pairs) < 2:
        raise TooFewMeasurements("at least two vector measurements required")
    idx = 1 if frame == "body" else 0
    vecs = [np.asarray(p[idx], dtype=float) for p in pairs]
    u0 = vecs[0] / np.linalg.norm(vecs[0])
    u1 = vecs[1] / np.linalg.norm(vecs[1])
    cross = np.cross(u0, u1)
    if np.linalg.norm(cross) <= _COLLINEAR_TOL:
        raise CollinearMeasurements(
            "first two measurement vectors are collinear"
        )
    if len(vecs) == 2:
        vecs.append(cross / np.linalg.norm(cross))
    m = np.zeros((3, 3))
    for v in vecs:
        m += np.outer(v, v) / (v @ v)
    mbar = np.trace(m) * np.eye(3) - m
    return WeightMatrix(m, mbar, symmetric_eigenvalues(mbar)[2])


def weighted_distance(m, r):
    """Weighted normalized distance Tr{M (I - R)}/4.

    Reduces to normalized_distance(r) scaled by the plain M = I weighting;
    equals rho^T Mbar rho / (2 (1 + ||rho||^2)) wherever the Rodriguez
    vector of R exists.
    """
    return 0.25 * np.trace(m.m @ (np.eye(3) - np.asarray(r, dtype=float)))


def vex_pa_weighted(m, r):
    """vex_pa(M R) evaluated through the Rodriguez form.

    Returns (I + [rho]x)^T Mbar rho / (1 + ||rho||^2), which equals the
    direct evaluation vex_pa(M @ R).  Raises Singular180 where rho does
    not exist (180 deg of rotation).
    """
    rho = rotation_to_rodriguez(r)
    return ((np.eye(3) + skew(rho)).T @ (m.mbar @ rho)) / (1.0 + rho @ rho)


def weighted_distance_bound(m, r):
    """Both sides of the weighted-distance bound, plus whether it holds.

    lhs = Tr{M (I - R)}/4 and
    rhs = (2/lambda_min) ||vex_pa(M R)||^2 / (1 + Tr{M^-1 M R}).
    Returns (lhs, rhs, holds); `holds` allows 1e-12 absolute and 1e-9
    relative slack so round-off cannot flip a mathematically true
    inequality (it is tight in the small-rotation limit along the minimal
    eigenvector of Mbar).  Raises SingularM for a non-invertible M and
    DenominatorVanishes when 1 + Tr{M^-1 M R} <= 1e-9.
    """
    r = np.asarray(r, dtype=float)
    if abs(np.linalg.det(m.m)) < 1e-12:
        raise SingularM("weighting matrix M is not invertible")
    mr = m.m @ r
    denom = 1.0 + np.trace(np.linalg.solve(m.m, mr))
    if denom <= 1e-9:
        raise DenominatorVanishes("1 + Tr{M^-1 M R} vanishes")
    lhs = weighted_distance(m, r)
    v = vex_pa(mr)
    rhs = (2.0 / m.lambda_min) * (v @ v) / denom
    holds = lhs <= rhs * (1.0 + 1e-9) + 1e-12
    return lhs, rhs, holds


def measurement_output_matrix(pair):
    """4x4 output matrix H with H Q = 0 for a consistent, noise-free pair.

        H = [0            -(vB - vI)^T ]
            [vB - vI      -[vB + vI]x  ]

    For noisy vB the product H Q is non-zero and first-order in the noise.
    """
    vi = np.asarray(pair.v_inertial, dtype=float)
    vb = np.asarray(pair.v_body, dtype=float)
    diff = vb - vi
    out = np.empty((4, 4))
    out[0, 0] = 0.0
    out[0, 1:] = -diff
    out[1:, 0] = diff
    out[1:, 1:] = -skew(vb + vi)
    return out


def _det3(a):
    return (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def symmetric_eigenvalues(a):
    """Eigenvalues of a symmetric 3x3 matrix, descending, in closed form.

    Trigonometric solution of the characteristic cubic; no iterative
    solver involved.  For a symmetric PSD Mbar the last entry is its
    minimum singular value.
    """
    a = np.asarray(a, dtype=float)
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    q = (a[0, 0] + a[1, 1] + a[2, 2]) / 3.0
    if p1 == 0.0:
        lo, mid, hi = sorted((a[0, 0], a[1, 1], a[2, 2]))
        return hi, mid, lo
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (a - q * np.eye(3)) / p
    rr = min(1.0, max(-1.0, 0.5 * _det3(b)))
    phi = math.acos(rr) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    return e1, 3.0 * q - e1 - e3, e3


@dataclass
class IdentityAuditReport:
    """Worst-case residuals of the closed-form identity audit.

    residuals maps identity name -> max absolute residual over the sampled
    rotations; skipped counts samples excluded because they fell on (or
    within the guard band of) a singular set.  bound_checked/bound_holds
    cover the weighted-distance inequality, with bound_margin the smallest
    observed rhs - lhs.
    """

    samples: int
    seed: int
    residuals: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    bound_checked: int = 0
    bound_holds: bool = True
    bound_margin: float = math.inf

    def record(self, name, value):
        prev = self.residuals.get(name)
        if prev is None or value > prev:
            self.residuals[name] = float(value)

    def skip(self, name):
        self.skipped[name] = self.skipped.get(name, 0) + 1

    def passed(self, tol=1e-9):
        """True when every equality residual is within tol and the bound held."""
        return self.bound_holds and all(
            v <= tol for v in self.residuals.values()
        )


def _sample_weight_matrix(rng):
    # three random directions, re-drawn if the first two are near-collinear
    while True:
        vecs = rng.standard_normal((3, 3))
        vecs /= np.linalg.norm(vecs, axis=1)[:, None]
        try:
            return build_weight_matrix(
                [VectorPair(v, v) for v in vecs], frame="body"
            )
        except CollinearMeasurements:
            continue


def identity_audit(samples, seed=0, rotations=None):
    """Score every closed-form identity on uniformly sampled rotations.

    Rotations are drawn through normalized Gaussian 4-vectors (uniform on
    the 3-sphere), so the audit is deterministic for a given seed; pass
    `rotations` (an iterable of matrices) to score a fixed set instead.
    Each identity's worst-case residual is recorded; samples inside a
    guard band of a singular set are skipped and counted.  The
    weighted-distance machinery is evaluated against a fresh random
    three-vector weighting per sample and, per its derivation, only for
    rotations up to 170 deg.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    report = IdentityAuditReport(samples=samples, seed=seed)
    eye = np.eye(3)
    if rotations is None:
        def _draw():
            g = rng.standard_normal(4)
            return quaternion_to_rotation(g / np.linalg.norm(g))
        source = (_draw() for _ in range(samples))
    else:
        source = iter(rotations)
    for r in source:
        v = vex_pa(r)
        v2 = v @ v
        d = normalized_distance(r)
        q = rotation_to_quaternion(r)
        q0, qv = q[0], q[1:]

        # quaternion identities: total, no singular set
        report.record("quaternion_vex_pa", np.linalg.norm(v - 2.0 * q0 * qv))
        report.record("quaternion_distance", abs(d - (1.0 - q0 * q0)))
        report.record(
            "quaternion_vex_norm", abs(v2 - 4.0 * q0 * q0 * (qv @ qv))
        )
        report.record("distance_vex_norm", abs(v2 - 4.0 * (1.0 - d) * d))

        try:
            angle, axis = rotation_to_angle_axis(r)
        except UndefinedAxis:
            report.skip("angle_axis_singular")
            continue
        if angle > _AUDIT_ANGLE_CAP:
            report.skip("near_180_guard_band")
            continue

        half = 0.5 * angle
        report.record(
            "angle_axis_vex_pa",
            np.linalg.norm(v - 2.0 * math.cos(half) * math.sin(half) * axis),
        )
        report.record("angle_axis_distance", abs(d - math.sin(half) ** 2))
        report.record(
            "angle_axis_vex_norm",
            abs(v2 - 4.0 * (math.cos(half) * math.sin(half)) ** 2),
        )

        rho = rotation_to_rodriguez(r)
        n2 = rho @ rho
        report.record(
            "rodriguez_vex_pa", np.linalg.norm(v - 2.0 * rho / (1.0 + n2))
        )
        report.record("rodriguez_distance", abs(d - n2 / (1.0 + n2)))
        report.record(
            "rodriguez_vex_norm", abs(v2 - 4.0 * n2 / (1.0 + n2) ** 2)
        )

        report.record(
            "rodriguez_from_angle_axis",
            np.linalg.norm(rho - math.tan(half) * axis),
        )
        report.record(
            "angle_from_rodriguez",
            abs(angle - 2.0 * math.atan(math.sqrt(n2))),
        )
        report.record(
            "axis_from_rodriguez", np.linalg.norm(axis - rho / math.tan(half))
        )

        report.record("angle_from_quaternion", abs(angle - 2.0 * math.acos(q0)))
        report.record(
            "axis_from_quaternion", np.linalg.norm(axis - qv / math.sin(half))
        )
        report.record("quat_scalar_from_angle", abs(q0 - math.cos(half)))
        report.record(
            "quat_vector_from_angle",
            np.linalg.norm(qv - axis * math.sin(half)),
        )

        report.record("rodriguez_from_quaternion", np.linalg.norm(qv / q0 - rho))
        report.record(
            "quat_scalar_from_rodriguez", abs(q0 - 1.0 / math.sqrt(1.0 + n2))
        )
        report.record(
            "quat_vector_from_rodriguez",
            np.linalg.norm(qv - rho / math.sqrt(1.0 + n2)),
        )

        if angle > _BOUND_ANGLE_CAP:
            report.skip("weighted_bound_angle_cap")
            continue
        w = _sample_weight_matrix(rng)
        lhs, rhs, holds = weighted_distance_bound(w, r)
        report.bound_checked += 1
        report.bound_margin = min(report.bound_margin, rhs - lhs)
        report.bound_holds = report.bound_holds and holds
        report.record(
            "weighted_distance_forms",
            abs(lhs - 0.5 * (rho @ (w.mbar @ rho)) / (1.0 + n2)),
        )
        vw = vex_pa_weighted(w, r)
        report.record(
            "weighted_vex_pa_forms", np.linalg.norm(vw - vex_pa(w.m @ r))
        )
        b = w.mbar @ rho
        rhs_norm = (b @ (eye - skew(rho) @ skew(rho)) @ b) / (1.0 + n2) ** 2
        report.record("weighted_vex_norm_forms", abs(vw @ vw - rhs_norm))
    return report
