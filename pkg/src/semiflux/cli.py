"""Command-line front door: run the toolkit's computations and emit tables.

Single process.  Commands that aggregate independent sub-experiments
(``check-all``) may fan out across a thread pool capped by the
SEMIFLUX_THREADS environment variable, but output assembly is ordered,
so files are byte-identical for any thread count.  CSV output uses '.'
as the decimal separator and 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys

import numpy as np

from . import acceptance, distributions, hamiltonian, stieltjes, symplectic
from .intervals import Interval, IntervalSet, Orientation
from .piecewise import NAMED_FUNCTIONS, named_function
from .smooth import TEST_FUNCTION_NAMES, test_function
from .symplectic import PROFILE_NAMES, named_profile

__all__ = ["main"]


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _digest(inputs: dict) -> str:
    canon = json.dumps(inputs, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _scalar_record(op: str, inputs: dict, value) -> dict:
    return {
        "op": op,
        "inputs": inputs,
        "inputs_digest": _digest(inputs),
        "value": value,
    }


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", newline="") as fp:
            fp.write(text)


def _emit_record(args, record: dict, stdout_value=None) -> None:
    """Print the primary value; optionally write the full record to --out."""
    if stdout_value is not None:
        print(stdout_value)
    if args.out is None:
        return
    if args.format == "json":
        _write_text(args.out, json.dumps(record, sort_keys=True, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        _flatten_csv(writer, record)
        _write_text(args.out, buf.getvalue())


def _flatten_csv(writer, record, prefix=""):
    for key in sorted(record):
        val = record[key]
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            _flatten_csv(writer, val, prefix=f"{name}.")
        elif isinstance(val, float):
            writer.writerow([name, _fmt(val)])
        else:
            writer.writerow([name, val])


def _emit_rows(args, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    _write_text(args.out, buf.getvalue())


# ---------------------------------------------------------------------------
# shared argument groups


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="write results to this path")
    p.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )


def _add_operator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="TOML file with a [hamiltonian] table")
    p.add_argument("--a", type=float, default=None, help="dispersion scale (a > 0)")
    p.add_argument("--alpha", type=float, default=None, help="sign coupling")
    p.add_argument("--orientation", default=None, choices=("left", "right"))
    p.add_argument("--n", type=int, default=None, help="grid points (even, >= 8)")
    p.add_argument("--circumference", type=float, default=None)
    p.add_argument("--coupling-factor", type=float, default=None)
    p.add_argument(
        "--allow-indefinite",
        action="store_true",
        default=None,
        help="admit a sign-changing coefficient (diagnostics only)",
    )


def _operator_config(args) -> hamiltonian.HamiltonianConfig:
    if args.config is not None:
        base = hamiltonian.config_from_toml(args.config)
    else:
        base = hamiltonian.HamiltonianConfig()
    kwargs = {
        "a": base.a,
        "alpha": base.alpha,
        "orientation": base.orientation,
        "grid_n": base.grid_n,
        "circumference": base.circumference,
        "coupling_factor": base.coupling_factor,
        "allow_indefinite": base.allow_indefinite,
    }
    if args.a is not None:
        kwargs["a"] = args.a
    if args.alpha is not None:
        kwargs["alpha"] = args.alpha
    if args.orientation is not None:
        kwargs["orientation"] = Orientation.parse(args.orientation)
    if args.n is not None:
        kwargs["grid_n"] = args.n
    if args.circumference is not None:
        kwargs["circumference"] = args.circumference
    if args.coupling_factor is not None:
        kwargs["coupling_factor"] = args.coupling_factor
    if args.allow_indefinite:
        kwargs["allow_indefinite"] = True
    return hamiltonian.HamiltonianConfig(**kwargs)


def _operator_inputs(cfg: hamiltonian.HamiltonianConfig) -> dict:
    return {
        "a": cfg.a,
        "alpha": cfg.alpha,
        "orientation": cfg.orientation.value,
        "grid_n": cfg.grid_n,
        "circumference": cfg.circumference,
        "coupling_factor": cfg.coupling_factor,
    }


# ---------------------------------------------------------------------------
# commands


def _cmd_pair(args) -> int:
    f = named_function(args.f)
    phi = test_function(args.phi)
    o = Orientation.parse(args.orientation)
    value = stieltjes.pair_against_test_derivative(f, phi, o)
    inputs = {"f": args.f, "phi": args.phi, "orientation": o.value}
    _emit_record(args, _scalar_record("pair", inputs, value), stdout_value=repr(value))
    return 0


def _cmd_measures(args) -> int:
    f = named_function(args.f)
    o = Orientation.parse(args.orientation)
    m = stieltjes.Measure.from_distribution(f, o)
    s = IntervalSet.parse(args.set)
    value = stieltjes.measure_of(m, s)
    inputs = {"f": args.f, "orientation": o.value, "set": str(s)}
    _emit_record(
        args, _scalar_record("measures", inputs, value), stdout_value=repr(value)
    )
    return 0


def _cmd_euler(args) -> int:
    f = named_function(args.f)
    o = Orientation.parse(args.orientation)
    value = distributions.euler_character(f, o)
    inputs = {"f": args.f, "orientation": o.value}
    _emit_record(args, _scalar_record("euler", inputs, value), stdout_value=value)
    return 0


def _cmd_spectrum(args) -> int:
    cfg = _operator_config(args)
    eigs = hamiltonian.spectrum(hamiltonian.build(cfg))
    if args.count is not None:
        eigs = eigs[: args.count]
    if args.format == "json" and args.out is not None:
        inputs = _operator_inputs(cfg)
        record = _scalar_record(
            "spectrum", inputs, [complex(v).real if np.iscomplexobj(eigs) else float(v) for v in eigs]
        )
        _write_text(args.out, json.dumps(record, sort_keys=True, indent=2) + "\n")
    else:
        text = hamiltonian.spectrum_csv_text(eigs)
        _write_text(args.out, text)
    return 0


def _cmd_norms(args) -> int:
    f = named_function(args.f)
    s = IntervalSet.parse(args.set)
    ps = tuple(float(p) for p in args.ps.split(","))
    rec = stieltjes.norms(f, s, ps=ps)
    inputs = {"f": args.f, "set": str(s), "ps": list(ps)}
    record = _scalar_record("norms", inputs, rec.to_dict())
    _emit_record(args, record, stdout_value=json.dumps(rec.to_dict(), sort_keys=True))
    return 0


_INITIAL_STATES = ("gaussian", "unit-mode")


def _initial_state(name: str, op: hamiltonian.HamiltonianOperator) -> np.ndarray:
    x = op.grid
    length = op.config.circumference
    if name == "gaussian":
        psi = np.exp(-((x / (length / 8.0)) ** 2))
    elif name == "unit-mode":
        psi = 1.0 + 0.5 * np.sin(2.0 * math.pi * x / length)
    else:
        raise ValueError(f"unknown initial state {name!r}; options: {_INITIAL_STATES}")
    return psi / math.sqrt(op.spacing * float(np.sum(psi * psi)))


def _cmd_propagate(args) -> int:
    cfg = _operator_config(args)
    op = hamiltonian.build(cfg)
    psi0 = _initial_state(args.psi0, op)
    psi = hamiltonian.propagate(op, psi0, args.tau, args.method, slices=args.slices)
    rows = [(float(x), float(v)) for x, v in zip(op.grid, psi)]
    _emit_rows(args, ["x", "Re psi"], rows)
    return 0


def _cmd_symplectic(args) -> int:
    pair = symplectic.HamiltonianPair(
        theta=named_profile(args.theta), alpha=named_profile(args.alpha_profile)
    )
    x0 = symplectic.PhasePoint(args.q0, args.p0)
    traj = symplectic.flow(
        pair, args.model, x0, args.t_end, args.dt, record_every=args.record_every
    )
    _emit_rows(args, ["t", "q", "p", "H"], list(traj.rows()))
    print(f"energy drift: {_fmt(traj.energy_drift())}", file=sys.stderr)
    return 0


def _cmd_krein(args) -> int:
    o = Orientation.parse(args.orientation)
    op, form = hamiltonian.krein_model(args.n, args.circumference, o)
    rec = hamiltonian.krein_check(op, form)
    inputs = {"n": args.n, "circumference": args.circumference, "orientation": o.value}
    record = _scalar_record("krein", inputs, rec.to_dict())
    _emit_record(args, record, stdout_value=json.dumps(rec.to_dict(), sort_keys=True))
    return 0


def _cmd_check_all(args) -> int:
    workers = _thread_cap()
    results = acceptance.run_all(max_workers=workers)
    for r in results:
        print(r.line())
    all_passed = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    if args.out is not None:
        payload = []
        for r in results:
            d = r.to_dict()
            d.pop("seconds")  # keep files reproducible run to run
            payload.append(d)
        if args.format == "json":
            _write_text(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            buf = io.StringIO()
            writer = csv.writer(buf)
            writer.writerow(["index", "name", "passed", "requirement", "measured"])
            for d in payload:
                writer.writerow(
                    [
                        d["index"],
                        d["name"],
                        d["passed"],
                        d["requirement"],
                        json.dumps(d["measured"], sort_keys=True),
                    ]
                )
            _write_text(args.out, buf.getvalue())
    return 0 if all_passed else 1


def _thread_cap() -> int:
    raw = os.environ.get("SEMIFLUX_THREADS", "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"SEMIFLUX_THREADS must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiflux",
        description="one-sided measures, distributional pairings, and the "
        "sign-coupled grid operator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", help="pair a step function against a test derivative")
    p.add_argument("--f", required=True, choices=sorted(NAMED_FUNCTIONS))
    p.add_argument("--phi", default="gaussian", choices=TEST_FUNCTION_NAMES)
    p.add_argument("--orientation", required=True, choices=("left", "right", "standard"))
    _add_output_flags(p)
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("measures", help="measure of an interval set")
    p.add_argument("--f", required=True, choices=sorted(NAMED_FUNCTIONS))
    p.add_argument("--orientation", required=True, choices=("left", "right", "standard"))
    p.add_argument("--set", required=True, help='e.g. "(0,1]" or "[0,1) u {2}"')
    _add_output_flags(p)
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser("euler", help="Euler character of a piecewise function")
    p.add_argument("--f", required=True, choices=sorted(NAMED_FUNCTIONS))
    p.add_argument("--orientation", required=True, choices=("left", "right", "standard"))
    _add_output_flags(p)
    p.set_defaults(func=_cmd_euler)

    p = sub.add_parser("spectrum", help="eigenvalues of the grid operator")
    _add_operator_flags(p)
    p.add_argument("--count", type=int, default=None, help="emit only the first k")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("norms", help="sup/BV/Lp norms over an interval set")
    p.add_argument("--f", required=True, choices=sorted(NAMED_FUNCTIONS))
    p.add_argument("--set", default="[0,1]")
    p.add_argument("--ps", default="1,2", help="comma-separated exponents")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_norms)

    p = sub.add_parser("propagate", help="imaginary-time evolution on the grid")
    _add_operator_flags(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--method", choices=("exponential", "trotter"), default="exponential")
    p.add_argument("--slices", type=int, default=32)
    p.add_argument("--psi0", default="gaussian", choices=_INITIAL_STATES)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_propagate)

    p = sub.add_parser("symplectic", help="integrate a Hamiltonian flow")
    p.add_argument("--theta", default="zero", choices=PROFILE_NAMES)
    p.add_argument("--alpha-profile", default="half-tanh", choices=PROFILE_NAMES)
    p.add_argument("--model", choices=("h1", "h2"), default="h2")
    p.add_argument("--q0", type=float, default=0.0)
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--record-every", type=int, default=1)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_symplectic)

    p = sub.add_parser("krein", help="fundamental-symmetry diagnostics")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--circumference", type=float, default=2.0)
    p.add_argument("--orientation", default="left", choices=("left", "right"))
    _add_output_flags(p)
    p.set_defaults(func=_cmd_krein)

    p = sub.add_parser("check-all", help="run the full acceptance suite")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_check_all)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, stieltjes.TopologyMismatchError) as exc:
        print(f"semiflux: {exc}", file=sys.stderr)
        return 1
    except symplectic.DomainExitError as exc:
        print(f"semiflux: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
