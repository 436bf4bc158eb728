"""Command-line front end: `attitude-sim run | convert | check-identities`.

Exit codes: 0 on success, 2 on any validation/parse/singularity error,
3 on I/O failure.  Euler angles cross the CLI boundary in degrees (matching
how initial conditions are usually quoted); the library itself works in
radians throughout.
"""

import argparse
import json
import sys

import numpy as np

from . import representations as rep
from .errors import AttitudeKitError, CsvIoError, ScenarioParseError
from .measurements import identity_audit
from .quaternions import normalize
from .simulation import (
    ALL_INTEGRATORS,
    amend_scenario,
    builtin_example,
    parse_scenario,
    run_simulation,
    write_csv,
)
from .so3 import validate_rotation

__all__ = ["main", "convert_value", "REPRESENTATIONS"]

REPRESENTATIONS = ("so3", "euler", "angle-axis", "rodriguez", "quat")

_SIZES = {"so3": 9, "euler": 3, "angle-axis": 4, "rodriguez": 3, "quat": 4}


def _parse_numbers(text, count, what):
    """Accept a JSON array or comma/space separated numbers."""
    try:
        values = json.loads(text)
    except json.JSONDecodeError:
        try:
            values = [float(tok) for tok in text.replace(",", " ").split()]
        except ValueError:
            raise ScenarioParseError(
                f"{what}: cannot parse {text!r} as numbers"
            ) from None
    if not isinstance(values, list) or len(values) != count:
        raise ScenarioParseError(f"{what}: expected {count} numbers")
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError):
        raise ScenarioParseError(f"{what}: expected {count} numbers") from None


def _to_rotation(from_rep, values):
    if from_rep == "so3":
        return validate_rotation(np.array(values).reshape(3, 3), tol=1e-3)
    if from_rep == "euler":
        return rep.euler_to_rotation(np.radians(values))
    if from_rep == "angle-axis":
        return rep.angle_axis_to_rotation(
            rep.AngleAxis(values[0], np.array(values[1:]))
        )
    if from_rep == "rodriguez":
        return rep.rodriguez_to_rotation(np.array(values))
    # quoted quaternions often carry rounded components; renormalize on
    # ingestion the way any propagation loop would
    return rep.quaternion_to_rotation(normalize(np.array(values)))


def _from_rotation(to_rep, r):
    if to_rep == "so3":
        return list(r.ravel())
    if to_rep == "euler":
        return list(np.degrees(rep.rotation_to_euler(r)))
    if to_rep == "angle-axis":
        angle, axis = rep.rotation_to_angle_axis(r)
        return [angle, *axis]
    if to_rep == "rodriguez":
        return list(rep.rotation_to_rodriguez(r))
    return list(rep.rotation_to_quaternion(r))


def convert_value(from_rep, to_rep, text):
    """Convert one representation's value text to another's.

    Values are flat number lists: so3 takes 9 row-major entries, euler 3
    angles in degrees, angle-axis [angle_rad, ux, uy, uz], rodriguez 3
    components, quat 4 scalar-first components.  The conversion routes
    through the rotation matrix, so every singular configuration surfaces
    as its structured error (gimbal lock, 180 deg, undefined axis).
    """
    if from_rep not in REPRESENTATIONS:
        raise ScenarioParseError(f"unknown representation {from_rep!r}")
    if to_rep not in REPRESENTATIONS:
        raise ScenarioParseError(f"unknown representation {to_rep!r}")
    values = _parse_numbers(text, _SIZES[from_rep], from_rep)
    out = _from_rotation(to_rep, _to_rotation(from_rep, values))
    return "[" + ", ".join(format(v, ".17g") for v in out) + "]"


def _cmd_run(args):
    if args.example is not None:
        scenario = builtin_example(args.example)
    else:
        with open(args.scenario, "rb") as fh:
            scenario = parse_scenario(fh.read())
    integrators = None
    if args.integrators is not None:
        integrators = tuple(
            s.strip() for s in args.integrators.split(",") if s.strip()
        )
    if args.dt is not None or args.t_end is not None or integrators is not None:
        scenario = amend_scenario(
            scenario, dt=args.dt, t_end=args.t_end, integrators=integrators
        )
    out = run_simulation(scenario)
    write_csv(out, args.out, stride=args.stride)
    for name, marker in sorted(out.failures.items()):
        print(
            f"note: {name} dropped out at t={marker.time:.6g}: {marker.reason}",
            file=sys.stderr,
        )
    return 0


def _cmd_convert(args):
    print(convert_value(args.from_rep, args.to_rep, args.value))
    return 0


def _cmd_check_identities(args):
    report = identity_audit(args.samples, seed=args.seed)
    width = max(len(k) for k in report.residuals)
    for name in sorted(report.residuals):
        value = report.residuals[name]
        flag = "ok" if value <= args.tolerance else "FAIL"
        print(f"{name:<{width}}  max residual {value:.3e}  {flag}")
    bound_flag = "ok" if report.bound_holds else "FAIL"
    print(
        f"{'weighted-distance bound':<{width}}  "
        f"checked {report.bound_checked}, min margin "
        f"{report.bound_margin:.3e}  {bound_flag}"
    )
    if report.skipped:
        skipped = ", ".join(f"{k}: {v}" for k, v in sorted(report.skipped.items()))
        print(f"skipped singular samples -> {skipped}")
    ok = report.passed(args.tolerance)
    print(f"{report.samples} samples, seed {report.seed}: "
          f"{'all identities hold' if ok else 'FAILURES detected'}")
    return 0 if ok else 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="attitude-sim",
        description="Rigid-body attitude representation toolkit and simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser(
        "run", help="integrate a scenario with every requested method"
    )
    src = p_run.add_mutually_exclusive_group(required=True)
    src.add_argument(
        "--example", type=int, choices=(1, 2), help="built-in example preset"
    )
    src.add_argument("--scenario", help="JSON scenario file")
    p_run.add_argument("--dt", type=float, help="step size in seconds")
    p_run.add_argument("--t-end", dest="t_end", type=float, help="final time")
    p_run.add_argument(
        "--integrators",
        help="comma-separated subset of: " + ", ".join(ALL_INTEGRATORS),
    )
    p_run.add_argument("--stride", type=int, default=1, help="output stride")
    p_run.add_argument("--out", required=True, help="output CSV path")
    p_run.set_defaults(func=_cmd_run)

    p_conv = sub.add_parser(
        "convert", help="convert a value between attitude representations"
    )
    p_conv.add_argument(
        "--from", dest="from_rep", required=True, choices=REPRESENTATIONS
    )
    p_conv.add_argument(
        "--to", dest="to_rep", required=True, choices=REPRESENTATIONS
    )
    p_conv.add_argument(
        "--value",
        required=True,
        help="number list, e.g. '[0.98, 0.03, 0.12, 0.11]' (euler in degrees)",
    )
    p_conv.set_defaults(func=_cmd_convert)

    p_chk = sub.add_parser(
        "check-identities", help="audit the closed-form identity catalogue"
    )
    p_chk.add_argument("--samples", type=int, default=10000)
    p_chk.add_argument("--seed", type=int, default=0)
    p_chk.add_argument("--tolerance", type=float, default=1e-9)
    p_chk.set_defaults(func=_cmd_check_identities)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CsvIoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AttitudeKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
