"""Scenario ingestion, multi-representation trajectory runs, CSV emission.

A scenario is a three-axis sinusoidal angular-velocity profile, an initial
attitude, a fixed step, and the set of integration methods to compare.  The
truth trajectory always follows the exact discrete propagation of
Rdot = R [Omega]x; each requested method integrates its own representation
independently from the mapped initial condition and is scored by the
divergence metric ||R_truth||_I - ||R_method||_I at every output step.

The rate profile is sampled once per step (at the step's start) and held for
the whole step, for the truth and for every method alike.  Holding the same
piecewise-constant rate everywhere is what makes the exact propagators an
oracle for the RK4 methods; feeding RK4 stages the continuous profile would
bury the comparison under the truth's own sampling error.

Method failures (gimbal lock, Rodriguez blow-up, non-finite states) are
recorded as per-method markers with the failure time; the run continues for
the surviving methods and the failed method's columns turn into NaN.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CsvIoError,
    GimbalLock,
    ImproperRotation,
    IntegrationFailure,
    NotOrthogonal,
    ScenarioParseError,
    ScenarioValidationError,
    Singular180,
    UnknownExample,
)
from .kinematics import (
    euler_rate,
    propagate_quaternion_exact,
    propagate_rotation_exact,
    quaternion_derivative,
    rk4_step,
    rodriguez_derivative,
)
from .quaternions import normalize, quat_norm
from .representations import (
    rotation_to_euler,
    rotation_to_quaternion,
    rotation_to_rodriguez,
)
from .so3 import normalized_distance, validate_rotation

__all__ = [
    "ALL_INTEGRATORS",
    "SineWave",
    "Scenario",
    "FailureMarker",
    "TrajectorySample",
    "RunOutput",
    "builtin_example",
    "parse_scenario",
    "run_simulation",
    "write_csv",
    "write_csv_text",
    "CSV_HEADER",
]

ALL_INTEGRATORS = (
    "so3-exact",
    "euler-rk4",
    "rodriguez-rk4",
    "quat-rk4",
    "quat-exact",
)

# The preset initial attitudes are quoted to four decimals, which leaves an
# orthonormality defect up to ~4e-4; scenario validation accepts that data
# class while still rejecting anything structurally wrong.
_R0_TOL = 1e-3
_RHO_GUARD = 1e6

CSV_HEADER = (
    "t,r11,r12,r13,r21,r22,r23,r31,r32,r33,"
    "phi,theta,psi,rho1,rho2,rho3,q0,q1,q2,q3,"
    "div_euler,div_rodriguez,div_quat"
)


@dataclass(frozen=True)
class SineWave:
    """One axis of the rate profile: amp * sin(freq * t + phase)."""

    amp: float
    freq: float
    phase: float

    def value(self, t):
        return self.amp * math.sin(self.freq * t + self.phase)


@dataclass(frozen=True)
class Scenario:
    """A validated simulation setup.

    omega is a per-axis triple of SineWave components (rad/s), r0 the
    initial attitude, dt the fixed step in seconds, t_end the final time,
    integrators the methods to run, and seed a determinism knob recorded
    into the run (the dynamics themselves are noise-free).
    """

    omega: tuple
    r0: np.ndarray
    dt: float = 1e-3
    t_end: float = 30.0
    integrators: tuple = ALL_INTEGRATORS
    seed: int = 0

    def omega_at(self, t):
        """Body angular velocity at time t, rad/s."""
        return np.array([w.value(t) for w in self.omega])


def _validated_scenario(omega, r0, dt, t_end, integrators, seed):
    if dt <= 0.0:
        raise ScenarioValidationError("dt must be > 0")
    if t_end < dt:
        raise ScenarioValidationError("t_end must be >= dt")
    for name in integrators:
        if name not in ALL_INTEGRATORS:
            raise ScenarioValidationError(
                f"unknown integrator {name!r}; choose from {ALL_INTEGRATORS}"
            )
    try:
        r0 = validate_rotation(r0, tol=_R0_TOL)
    except (NotOrthogonal, ImproperRotation) as exc:
        raise ScenarioValidationError(f"r0 is not a rotation: {exc}") from exc
    return Scenario(
        omega=tuple(omega),
        r0=r0,
        dt=float(dt),
        t_end=float(t_end),
        integrators=tuple(integrators),
        seed=int(seed),
    )


def builtin_example(n):
    """The two preset scenarios: slow/low-gain (1) and fast/high-gain (2).

    Example 2's rate profile is what drives the Euler-rate integration
    through gimbal lock; everything else about the two presets is shaped
    identically.  Raises UnknownExample for anything but 1 or 2.
    """
    if n == 1:
        omega = (
            SineWave(0.1, 0.3376, 0.0),
            SineWave(0.07, 0.6079, math.pi),
            SineWave(0.05, 0.7413, math.pi / 3.0),
        )
        r0 = [
            [0.9479, -0.2040, 0.2448],
            [0.2177, 0.9756, -0.0297],
            [-0.2328, 0.0814, 0.9691],
        ]
    elif n == 2:
        omega = (
            SineWave(0.3, 0.8422, 0.0),
            SineWave(0.21, 0.3682, math.pi),
            SineWave(0.15, 1.4516, math.pi / 3.0),
        )
        r0 = [
            [0.6679, -0.1808, 0.7219],
            [0.6552, 0.6030, -0.4551],
            [-0.3530, 0.7770, 0.5213],
        ]
    else:
        raise UnknownExample(f"no built-in example {n!r}; choose 1 or 2")
    return _validated_scenario(omega, r0, 1e-3, 30.0, ALL_INTEGRATORS, 0)


def amend_scenario(scenario, dt=None, t_end=None, integrators=None):
    """Copy a scenario with some fields replaced, re-running validation."""
    return _validated_scenario(
        scenario.omega,
        scenario.r0,
        scenario.dt if dt is None else dt,
        scenario.t_end if t_end is None else t_end,
        scenario.integrators if integrators is None else integrators,
        scenario.seed,
    )


_SCENARIO_KEYS = {"omega", "r0", "dt", "t_end", "integrators", "seed"}
_OMEGA_KEYS = {"amp", "freq", "phase"}


def _require_number(obj, where):
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        raise ScenarioParseError(f"{where}: expected a number, got {obj!r}")
    return float(obj)


def parse_scenario(text):
    """Parse and validate a JSON scenario.

    Expected object keys: omega (array of 3 objects {amp, freq, phase}),
    r0 (9 numbers, row-major), and optional dt (default 1e-3), t_end
    (default 30), integrators (default: all), seed (default 0).  Unknown
    keys are rejected.  Raises ScenarioParseError for malformed text and
    ScenarioValidationError when a value violates an invariant.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(obj, dict):
        raise ScenarioParseError("scenario must be a JSON object")
    unknown = set(obj) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioParseError(f"unknown keys: {sorted(unknown)}")
    for key in ("omega", "r0"):
        if key not in obj:
            raise ScenarioParseError(f"missing required key {key!r}")

    raw_omega = obj["omega"]
    if not isinstance(raw_omega, list) or len(raw_omega) != 3:
        raise ScenarioParseError("omega: expected an array of 3 objects")
    omega = []
    for i, entry in enumerate(raw_omega):
        where = f"omega[{i}]"
        if not isinstance(entry, dict):
            raise ScenarioParseError(f"{where}: expected an object")
        bad = set(entry) - _OMEGA_KEYS
        if bad:
            raise ScenarioParseError(f"{where}: unknown keys {sorted(bad)}")
        missing = _OMEGA_KEYS - set(entry)
        if missing:
            raise ScenarioParseError(f"{where}: missing keys {sorted(missing)}")
        omega.append(
            SineWave(
                _require_number(entry["amp"], f"{where}.amp"),
                _require_number(entry["freq"], f"{where}.freq"),
                _require_number(entry["phase"], f"{where}.phase"),
            )
        )

    raw_r0 = obj["r0"]
    if (
        not isinstance(raw_r0, list)
        or len(raw_r0) != 9
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw_r0)
    ):
        raise ScenarioParseError("r0: expected an array of 9 numbers (row-major)")
    r0 = np.array(raw_r0, dtype=float).reshape(3, 3)

    dt = _require_number(obj.get("dt", 1e-3), "dt")
    t_end = _require_number(obj.get("t_end", 30.0), "t_end")
    integrators = obj.get("integrators", list(ALL_INTEGRATORS))
    if not isinstance(integrators, list) or not all(
        isinstance(x, str) for x in integrators
    ):
        raise ScenarioParseError("integrators: expected an array of strings")
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ScenarioParseError("seed: expected an integer")
    return _validated_scenario(omega, r0, dt, t_end, integrators, seed)


@dataclass(frozen=True)
class FailureMarker:
    """Why and when a method dropped out of the run."""

    time: float
    reason: str


@dataclass(frozen=True)
class TrajectorySample:
    """One output row: truth attitude plus the live method states."""

    t: float
    r: np.ndarray
    xi: np.ndarray | None
    rho: np.ndarray | None
    q: np.ndarray | None


@dataclass
class RunOutput:
    """Full result of a scenario run.

    divergences holds one series per requested method (NaN after that
    method's failure); failures maps a failed method to its marker.  The
    sample fields xi/rho/q mirror the euler-rk4 / rodriguez-rk4 /
    quaternion method states (quat-rk4 when requested, else quat-exact).
    """

    scenario: Scenario
    samples: list = field(default_factory=list)
    divergences: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)


def _num_steps(dt, t_end):
    # guard the fencepost against binary round-off in t_end/dt
    return int(math.floor(t_end / dt + 1e-9))


def run_simulation(scenario):
    """Run the truth propagation and every requested method side by side.

    Returns a RunOutput with floor(t_end/dt) + 1 samples.  Per-method
    failures (gimbal lock, Rodriguez norm beyond 1e6, non-finite states)
    become markers and NaN divergence entries from the failure time on;
    they never abort the run.
    """
    dt = scenario.dt
    n = _num_steps(dt, scenario.t_end)
    methods = scenario.integrators
    r_truth = scenario.r0.copy()

    states = {}
    failures = {}
    for m in methods:
        try:
            if m == "so3-exact":
                states[m] = scenario.r0.copy()
            elif m == "euler-rk4":
                states[m] = rotation_to_euler(scenario.r0)
            elif m == "rodriguez-rk4":
                states[m] = rotation_to_rodriguez(scenario.r0)
            else:
                # mapped initial quaternion, renormalized so that the
                # 4-decimal presets start exactly on the unit sphere
                states[m] = normalize(rotation_to_quaternion(scenario.r0))
        except (GimbalLock, Singular180) as exc:
            states[m] = None
            failures[m] = FailureMarker(0.0, str(exc))

    div = {m: np.full(n + 1, math.nan) for m in methods}
    samples = []

    def method_distance(name, state):
        if name == "so3-exact":
            return normalized_distance(state)
        if name == "euler-rk4":
            # trace of the Euler-composed matrix, written out directly
            cphi, sphi = math.cos(state[0]), math.sin(state[0])
            cth = math.cos(state[1])
            cpsi, spsi = math.cos(state[2]), math.sin(state[2])
            sth = math.sin(state[1])
            tr = (
                cth * cpsi
                + cphi * cpsi
                + sphi * sth * spsi
                + cphi * cth
            )
            return 0.25 * (3.0 - tr)
        if name == "rodriguez-rk4":
            n2 = state @ state
            return n2 / (1.0 + n2)
        return 1.0 - state[0] * state[0]

    for k in range(n + 1):
        t = k * dt
        d_truth = normalized_distance(r_truth)
        for m in methods:
            if states[m] is not None:
                div[m][k] = d_truth - method_distance(m, states[m])
        xi = states.get("euler-rk4")
        rho = states.get("rodriguez-rk4")
        q = states.get("quat-rk4", states.get("quat-exact"))
        samples.append(TrajectorySample(t=t, r=r_truth, xi=xi, rho=rho, q=q))
        if k == n:
            break

        w = scenario.omega_at(t)
        r_truth = propagate_rotation_exact(r_truth, w, dt)
        for m in methods:
            y = states[m]
            if y is None:
                continue
            try:
                if m == "so3-exact":
                    states[m] = propagate_rotation_exact(y, w, dt)
                elif m == "euler-rk4":
                    states[m] = rk4_step(
                        lambda tt, s: euler_rate(s, w), t, y, dt
                    )
                elif m == "rodriguez-rk4":
                    out = rk4_step(
                        lambda tt, s: rodriguez_derivative(s, w), t, y, dt
                    )
                    if out @ out > _RHO_GUARD * _RHO_GUARD:
                        raise IntegrationFailure(
                            t, "Rodriguez vector norm exceeded 1e6"
                        )
                    states[m] = out
                elif m == "quat-rk4":
                    out = rk4_step(
                        lambda tt, s: quaternion_derivative(s, w), t, y, dt
                    )
                    states[m] = out / quat_norm(out)
                else:
                    states[m] = propagate_quaternion_exact(y, w, dt)
            except IntegrationFailure as exc:
                states[m] = None
                failures[m] = FailureMarker(exc.time, exc.reason)

    return RunOutput(
        scenario=scenario, samples=samples, divergences=div, failures=failures
    )


def _fmt(x):
    return "nan" if x is None or math.isnan(x) else format(x, ".17g")


def write_csv_text(out, stride=1):
    """CSV content of a RunOutput, 17-significant-digit decimal text.

    One row per retained sample (every `stride`-th, starting at t = 0):
    the truth rotation entries, the Euler/Rodriguez/quaternion method
    states (NaN where the method failed or was not requested), and the
    three divergence columns.  Deterministic: the same run always yields
    an identical string.
    """
    if stride < 1:
        raise ValueError("stride must be >= 1")
    div = out.divergences
    rows = [CSV_HEADER]
    for k, s in enumerate(out.samples):
        if k % stride:
            continue
        cells = [_fmt(s.t)]
        cells.extend(_fmt(v) for v in s.r.ravel())
        for state, width in ((s.xi, 3), (s.rho, 3), (s.q, 4)):
            if state is None:
                cells.extend(["nan"] * width)
            else:
                cells.extend(_fmt(v) for v in state)
        for name in ("euler-rk4", "rodriguez-rk4", "quat-rk4"):
            series = div.get(name)
            if series is None and name == "quat-rk4":
                series = div.get("quat-exact")
            cells.append("nan" if series is None else _fmt(series[k]))
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def write_csv(out, path, stride=1):
    """Write a RunOutput as CSV (see write_csv_text for the format).

    Raises CsvIoError when the destination cannot be written.
    """
    data = write_csv_text(out, stride)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(data)
    except OSError as exc:
        raise CsvIoError(f"cannot write {path}: {exc}") from exc
