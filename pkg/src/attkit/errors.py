"""Structured exceptions raised by the attitude library.

Every singular configuration or contract violation maps to its own class so
callers can branch on the failure kind instead of parsing messages.
"""

__all__ = [
    "AttitudeKitError",
    "NotSkew",
    "NotOrthogonal",
    "ImproperRotation",
    "GimbalLock",
    "UndefinedAxis",
    "Singular180",
    "RodriguezUndefined",
    "NotNormalized",
    "ZeroNorm",
    "AxisNotUnit",
    "InconsistentDerivatives",
    "IntegrationFailure",
    "CollinearMeasurements",
    "TooFewMeasurements",
    "SingularM",
    "DenominatorVanishes",
    "ScenarioParseError",
    "ScenarioValidationError",
    "UnknownExample",
    "CsvIoError",
]


class AttitudeKitError(Exception):
    """Base class for all library-specific errors."""


class NotSkew(AttitudeKitError):
    """Matrix passed to vex() is not skew-symmetric within tolerance."""


class NotOrthogonal(AttitudeKitError):
    """Matrix fails the orthonormality test R^T R = I."""


class ImproperRotation(AttitudeKitError):
    """Orthogonal matrix with det = -1 (rotation by inversion)."""


class GimbalLock(AttitudeKitError):
    """Pitch is at +/-90 deg: Euler extraction / Euler rates undefined."""


class UndefinedAxis(AttitudeKitError):
    """Rotation axis cannot be recovered (rotation angle at 0 or pi)."""


class Singular180(AttitudeKitError):
    """Rodriguez vector undefined: rotation angle at 180 deg."""


class RodriguezUndefined(AttitudeKitError):
    """Quaternion scalar part is zero; q/q0 has no value."""


class NotNormalized(AttitudeKitError):
    """Quaternion norm is too far from 1 for the requested operation."""


class ZeroNorm(AttitudeKitError):
    """Cannot normalize a (near-)zero quaternion."""


class AxisNotUnit(AttitudeKitError):
    """Axis vector does not have unit length within tolerance."""


class InconsistentDerivatives(AttitudeKitError):
    """Quaternion derivatives violate the tangency/consistency check."""


class IntegrationFailure(AttitudeKitError):
    """Fixed-step integration aborted.  Carries the failure time."""

    def __init__(self, time, reason):
        super().__init__(f"integration failed at t={time:.6g}: {reason}")
        self.time = time
        self.reason = reason


class CollinearMeasurements(AttitudeKitError):
    """First two measurement vectors are (nearly) collinear."""


class TooFewMeasurements(AttitudeKitError):
    """At least two vector measurements are required."""


class SingularM(AttitudeKitError):
    """Weighting matrix M is not invertible."""


class DenominatorVanishes(AttitudeKitError):
    """1 + Tr{M^-1 M R} is too close to zero for the bound check."""


class ScenarioParseError(AttitudeKitError):
    """Scenario text is malformed (bad JSON, unknown or missing keys)."""


class ScenarioValidationError(AttitudeKitError):
    """Scenario values violate an invariant (names the invariant)."""


class UnknownExample(AttitudeKitError):
    """Requested built-in example number does not exist."""


class CsvIoError(AttitudeKitError):
    """Writing the output CSV failed."""
