"""Rigid-body attitude representations, kinematics, and simulation tools.

The library covers the rotation-matrix description of attitude together
with the four classic parameterizations (Euler angles, angle-axis,
Rodriguez/Gibbs vector, unit quaternion), every pairwise mapping between
them with explicit singularity errors, the continuous and exact discrete
kinematics of each, measurement-weighted distance machinery, and a
simulation front end that reproduces the Euler-rate gimbal-lock failure
mode next to the well-behaved quaternion and Rodriguez integrations.

All values are plain numpy arrays (quaternions scalar-first) and all
functions are pure, so everything here is thread-safe.
"""

from .errors import (
    AttitudeKitError,
    AxisNotUnit,
    CollinearMeasurements,
    CsvIoError,
    DenominatorVanishes,
    GimbalLock,
    ImproperRotation,
    InconsistentDerivatives,
    IntegrationFailure,
    NotNormalized,
    NotOrthogonal,
    NotSkew,
    RodriguezUndefined,
    ScenarioParseError,
    ScenarioValidationError,
    Singular180,
    SingularM,
    TooFewMeasurements,
    UndefinedAxis,
    UnknownExample,
    ZeroNorm,
)
from .so3 import (
    antisym_projection,
    normalized_distance,
    skew,
    so3_exp,
    validate_rotation,
    vex,
    vex_pa,
)
from .quaternions import (
    QUAT_IDENTITY,
    conjugate,
    gamma_matrix,
    normalize,
    operator_matrices,
    psi_bar_matrix,
    psi_matrix,
    qmul,
    quat_norm,
    sandwich_transform,
    xi_matrix,
)
from .representations import (
    AngleAxis,
    angle_axis_from_quaternion,
    angle_axis_from_rodriguez,
    angle_axis_to_rotation,
    euler_from_quaternion,
    euler_from_rodriguez,
    euler_to_rotation,
    quaternion_from_angle_axis,
    quaternion_from_rodriguez,
    quaternion_to_rotation,
    rodriguez_from_angle_axis,
    rodriguez_from_quaternion,
    rodriguez_to_rotation,
    rotation_to_angle_axis,
    rotation_to_euler,
    rotation_to_quaternion,
    rotation_to_rodriguez,
)
from .kinematics import (
    EulerRateJacobian,
    attitude_error,
    attitude_error_derivative,
    euler_rate,
    euler_rate_jacobian,
    propagate_quaternion_exact,
    propagate_rotation_exact,
    quaternion_derivative,
    quaternion_error,
    quaternion_error_derivative,
    rk4_step,
    rodriguez_derivative,
    rodriguez_error_derivative,
    rotation_derivative,
    rotational_acceleration,
)
from .measurements import (
    IdentityAuditReport,
    VectorPair,
    WeightMatrix,
    body_from_inertial,
    build_weight_matrix,
    identity_audit,
    measurement_output_matrix,
    symmetric_eigenvalues,
    vex_pa_weighted,
    weighted_distance,
    weighted_distance_bound,
)
from .simulation import (
    ALL_INTEGRATORS,
    FailureMarker,
    RunOutput,
    Scenario,
    SineWave,
    TrajectorySample,
    amend_scenario,
    builtin_example,
    parse_scenario,
    run_simulation,
    write_csv,
    write_csv_text,
)

__version__ = "0.1.0"
