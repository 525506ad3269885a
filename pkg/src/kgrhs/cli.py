"""Scenario-file command line: `kg-rhs {solve,verify,klein,sweep} <file>`.

A scenario is a single JSON object validated against a strict schema
(unknown fields are rejected).  Complex numbers are written as [re, im]
pairs, four-vectors as length-4 arrays (each entry a number or a pair),
fields either as a plain four-vector (constant) or as
{"amplitude": [...], "exponent": [...]}.

Exit codes: 0 success, 1 residuals above tolerance, 2 malformed scenario,
3 domain error (no real root, below rest energy, violated precondition).

Outputs are deterministic: identical scenario files produce byte-identical
json/csv payloads.  Run metadata (command, seed, tolerance) is segregated
into a `meta` object (json) or a leading `#` comment line (csv); no
timestamps appear anywhere.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from jsonschema import Draft202012Validator

from . import klein as klein_mod
from . import observables, verifier
from .algebra import ComplexFourVector, FourVector
from .errors import KGRHSError
from .planewave import (
    Case,
    ExponentialField,
    PlaneWaveSolution,
    PotentialBundle,
    solve_nonhermitian,
    solve_quat_left_first,
    solve_quat_left_second,
    solve_quat_right_first,
    solve_quat_right_second,
    solve_usual,
)
from .units import NATURAL

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_SCHEMA = 2
EXIT_DOMAIN = 3

_NUMBER_OR_PAIR = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}
_VECTOR4 = {
    "type": "array",
    "items": _NUMBER_OR_PAIR,
    "minItems": 4,
    "maxItems": 4,
}
_FIELD = {
    "oneOf": [
        _VECTOR4,
        {
            "type": "object",
            "properties": {"amplitude": _VECTOR4, "exponent": _VECTOR4},
            "required": ["amplitude"],
            "additionalProperties": False,
        },
    ]
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": ["solve", "verify", "klein", "sweep"]},
        "case": {"enum": [c.value for c in Case]},
        "parameters": {
            "type": "object",
            "properties": {
                "mass": {"type": "number", "minimum": 0},
                "charge": {"type": "number"},
                "spatial_K": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 3,
                    "maxItems": 3,
                },
                "K": _VECTOR4,
                "P": _VECTOR4,
                "A": _FIELD,
                "B": _FIELD,
                "A1": _FIELD,
                "phi0": _NUMBER_OR_PAIR,
                "phi1": _NUMBER_OR_PAIR,
                "amplitudes": {
                    "type": "array",
                    "items": _NUMBER_OR_PAIR,
                    "minItems": 2,
                    "maxItems": 2,
                },
                "positive_root": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
        "barrier": {
            "type": "object",
            "properties": {
                "E": {"type": "number"},
                "V0": {"type": "number"},
                "V1": {"type": "number"},
                "m": {"type": "number", "minimum": 0},
                "q": {"type": "number"},
                "phase": {"type": "number"},
                "branch": {"enum": ["auto", "stationary"]},
                "paradox_branch": {"enum": ["outgoing", "opposite"]},
                "x": _VECTOR4,
            },
            "required": ["E", "V0"],
            "additionalProperties": False,
        },
        "verification": {
            "type": "object",
            "properties": {
                "stencil": {
                    "type": "object",
                    "properties": {
                        "h": {"type": "number", "exclusiveMinimum": 0},
                        "order": {"enum": [2, 4]},
                    },
                    "additionalProperties": False,
                },
                "points": {"type": "integer", "minimum": 1},
                "box": {
                    "type": "object",
                    "properties": {
                        "t": {"type": "number"},
                        "bounds": {
                            "type": "array",
                            "items": {
                                "type": "array",
                                "items": {"type": "number"},
                                "minItems": 2,
                                "maxItems": 2,
                            },
                            "minItems": 3,
                            "maxItems": 3,
                        },
                    },
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
        "sweep": {
            "type": "object",
            "properties": {
                "path": {"enum": ["E", "V0", "V1", "m", "q", "phase"]},
                "start": {"type": "number"},
                "stop": {"type": "number"},
                "steps": {"type": "integer", "minimum": 2},
            },
            "required": ["path", "start", "stop", "steps"],
            "additionalProperties": False,
        },
        "output": {"enum": ["human", "json", "csv"]},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer", "minimum": 0},
    },
    "required": ["command"],
    "additionalProperties": False,
}

_VALIDATOR = Draft202012Validator(SCENARIO_SCHEMA)


class ScenarioError(Exception):
    """Scenario file failed validation; message carries the field path."""


def load_scenario(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from exc
    validate_scenario(raw)
    return raw


def validate_scenario(raw: dict):
    errors = sorted(_VALIDATOR.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ScenarioError(f"scenario field {path}: {err.message}")


# ---------------------------------------------------------------------------
# Scenario -> domain objects
# ---------------------------------------------------------------------------

def _as_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def _as_cfv(vec) -> ComplexFourVector:
    return ComplexFourVector.from_array([_as_complex(v) for v in vec])


def _as_fv(vec, what: str) -> FourVector:
    arr = _as_cfv(vec).as_array()
    if np.any(arr.imag):
        raise ScenarioError(f"{what} must be real")
    return FourVector.from_array(arr.real)


def _as_field(spec, what: str) -> ExponentialField:
    if spec is None:
        return ExponentialField.zero()
    if isinstance(spec, dict):
        amp = _as_cfv(spec["amplitude"])
        expo = _as_cfv(spec["exponent"]) if "exponent" in spec else None
        return ExponentialField(amp, expo)
    return ExponentialField.constant(_as_cfv(spec))


def _require(params: dict, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise ScenarioError(f"parameters missing required field: {missing[0]}")


def build_solution(scenario: dict) -> PlaneWaveSolution:
    """Construct a solution from a solve scenario (runs the case's solver)."""
    if "case" not in scenario:
        raise ScenarioError("scenario field case: required for solve/verify")
    case = Case(scenario["case"])
    p = scenario.get("parameters", {})
    if case is Case.USUAL:
        _require(p, "mass", "spatial_K")
        return solve_usual(
            p["spatial_K"], p["mass"], positive_root=p.get("positive_root", True)
        )
    _require(p, "mass", "charge")
    m, q = p["mass"], p["charge"]
    if case in (Case.GENERALIZED, Case.NON_HERMITIAN):
        _require(p, "A")
        b_vec = _as_fv(p["B"], "B") if "B" in p else FourVector.zero()
        return solve_nonhermitian(_as_fv(p["A"], "A"), b_vec, m, q)
    amps = tuple(_as_complex(v) for v in p.get("amplitudes", [1.0, 1.0]))
    if case is Case.QUAT_LEFT_FIRST:
        _require(p, "A", "B", "A1")
        return solve_quat_left_first(
            _as_fv(p["A"], "A"), _as_fv(p["B"], "B"), _as_field(p["A1"], "A1"),
            m, q, amplitudes=amps,
        )
    if case is Case.QUAT_LEFT_SECOND:
        _require(p, "A", "B", "A1")
        return solve_quat_left_second(
            _as_fv(p["A"], "A"), _as_fv(p["B"], "B"), _as_field(p["A1"], "A1"), m, q
        )
    if case is Case.QUAT_RIGHT_SECOND:
        _require(p, "A", "B", "A1")
        return solve_quat_right_second(
            _as_fv(p["A"], "A"), _as_fv(p["B"], "B"), _as_field(p["A1"], "A1"), m, q
        )
    _require(p, "A", "A1", "spatial_K")
    return solve_quat_right_first(
        _as_fv(p["A"], "A"), _as_field(p["A1"], "A1"), p["spatial_K"],
        m, q, amplitudes=amps,
    )


def build_explicit_solution(scenario: dict) -> PlaneWaveSolution:
    """Construct a solution from fully explicit verify-scenario data."""
    if "case" not in scenario:
        raise ScenarioError("scenario field case: required for solve/verify")
    case = Case(scenario["case"])
    p = scenario.get("parameters", {})
    _require(p, "mass", "K", "P")
    bundle = PotentialBundle(
        A=_as_field(p.get("A"), "A"),
        B=_as_field(p.get("B"), "B"),
        A1=_as_field(p.get("A1"), "A1"),
    )
    return PlaneWaveSolution(
        case=case,
        Q=ComplexFourVector.from_parts(_as_fv(p["P"], "P"), _as_fv(p["K"], "K")),
        phi0=_as_complex(p.get("phi0", 1.0)),
        phi1=_as_complex(p.get("phi1", 0.0)),
        potentials=bundle,
        mass=p["mass"],
        charge=p.get("charge", 0.0),
        units=NATURAL,
    )


def build_barrier(scenario: dict) -> klein_mod.BarrierSpec:
    b = scenario.get("barrier")
    if b is None:
        raise ScenarioError("scenario field barrier: required for klein/sweep")
    return klein_mod.BarrierSpec(
        E=b["E"],
        V0=b["V0"],
        V1=b.get("V1", 0.0),
        m=b.get("m", 1.0),
        q=b.get("q", 1.0),
        phi0=b.get("phase", 0.0),
    )


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def _verification_config(scenario: dict):
    v = scenario.get("verification", {})
    st = v.get("stencil", {})
    stencil = verifier.StencilSpec(h=st.get("h", 1e-3), order=st.get("order", 2))
    n_points = v.get("points", 10)
    box_cfg = v.get("box", {})
    box = observables.Box(
        t=box_cfg.get("t", 0.0),
        bounds=tuple(tuple(b) for b in box_cfg.get("bounds", ((0, 1), (0, 1), (0, 1)))),
    )
    return stencil, n_points, box


def _solution_payload(solution, scenario):
    stencil, n_points, box = _verification_config(scenario)
    seed = scenario.get("seed", 0)
    rng = np.random.default_rng(seed)
    points = rng.uniform(-0.5, 0.5, size=(n_points, 4))
    kge = [float(verifier.kge_residual_fd(solution, pt, stencil)) for pt in points]
    cont = [float(verifier.continuity_residual_fd(solution, pt, stencil)) for pt in points]
    report = solution.constraint_report()
    payload = {
        "case": solution.case.value,
        "K": list(solution.K.as_array()),
        "P": list(solution.P.as_array()),
        "phi0": [solution.phi0.real, solution.phi0.imag],
        "phi1": [solution.phi1.real, solution.phi1.imag],
        "mass": solution.mass,
        "charge": solution.charge,
        "constraints": dict(sorted(report.residuals.items())),
        "notes": list(report.notes),
        "fd_kge_max": max(kge),
        "fd_continuity_max": max(cont),
    }
    try:
        exps = observables.expectations(solution, box)
        payload["expectations"] = {
            "energy": [exps.energy[0], exps.energy[1]],
            "momentum": [list(exps.momentum[0]), exps.momentum[1]],
            "energy_sq": [exps.energy_sq[0], exps.energy_sq[1]],
            "momentum_sq": [exps.momentum_sq[0], exps.momentum_sq[1]],
            "conservation_residual": float(
                observables.conservation_residual(solution, box)
            ),
        }
    except KGRHSError as exc:
        payload["expectations"] = {"skipped": str(exc)}
    worst = max([report.max_residual, max(kge), max(cont)])
    payload["max_residual"] = worst
    return payload


def run_solve(scenario: dict) -> tuple:
    solution = build_solution(scenario)
    payload = _solution_payload(solution, scenario)
    tolerance = scenario.get("tolerance", 1e-5)
    code = EXIT_OK if payload["max_residual"] <= tolerance else EXIT_TOLERANCE
    return payload, code


def run_verify(scenario: dict) -> tuple:
    solution = build_explicit_solution(scenario)
    payload = _solution_payload(solution, scenario)
    tolerance = scenario.get("tolerance", 1e-5)
    code = EXIT_OK if payload["max_residual"] <= tolerance else EXIT_TOLERANCE
    return payload, code


def _klein_row(spec: klein_mod.BarrierSpec, branch, paradox_branch, x):
    result = klein_mod.solve_complex_barrier(
        spec, branch=branch, paradox_branch=paradox_branch
    )
    trans = result.trans_coeff if x is None else result.trans_coeff_at(x)
    rt_sum = result.refl_coeff + trans
    correction = (
        result.correction if x is None else klein_mod.rt_sum_correction(result, x)
    )
    return {
        "E": spec.E,
        "V0": spec.V0,
        "V1": spec.V1,
        "refl": result.refl_coeff,
        "trans": trans,
        "rt_sum": rt_sum,
        "correction": correction,
        "regime": result.regime.value,
    }, result


def run_klein(scenario: dict) -> tuple:
    b = scenario.get("barrier", {})
    spec = build_barrier(scenario)
    x = _as_fv(b["x"], "x") if "x" in b else None
    row, result = _klein_row(
        spec, b.get("branch", "auto"), b.get("paradox_branch", "outgoing"), x
    )
    r1, r2 = result.boundary_residuals()
    payload = dict(row)
    payload.update(
        {
            "Q": [result.Q.real, result.Q.imag],
            "Qprime": [result.Qprime.real, result.Qprime.imag],
            "R": [result.R.real, result.R.imag],
            "T": [result.T.real, result.T.imag],
            "boundary_residuals": [r1, r2],
            "energy_residual": result.energy_residual,
            "orthogonality_residual": result.orthogonality_residual,
        }
    )
    tolerance = scenario.get("tolerance", 1e-9)
    worst = max(r1, r2, result.energy_residual)
    code = EXIT_OK if worst <= tolerance else EXIT_TOLERANCE
    return payload, code


def run_sweep(scenario: dict, jobs: int = 1) -> tuple:
    sweep = scenario.get("sweep")
    if sweep is None:
        raise ScenarioError("scenario field sweep: required for sweep command")
    base = scenario.get("barrier")
    if base is None:
        raise ScenarioError("scenario field barrier: required for sweep command")
    values = np.linspace(sweep["start"], sweep["stop"], sweep["steps"])
    branch = base.get("branch", "auto")
    paradox = base.get("paradox_branch", "outgoing")
    x = _as_fv(base["x"], "x") if "x" in base else None

    def one(idx_value):
        idx, value = idx_value
        params = {
            "E": base["E"],
            "V0": base["V0"],
            "V1": base.get("V1", 0.0),
            "m": base.get("m", 1.0),
            "q": base.get("q", 1.0),
            "phi0": base.get("phase", 0.0),
        }
        key = "phi0" if sweep["path"] == "phase" else sweep["path"]
        params[key] = float(value)
        row, _ = _klein_row(klein_mod.BarrierSpec(**params), branch, paradox, x)
        return idx, row

    pairs = list(enumerate(values))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, pairs))
    else:
        rows = [one(p) for p in pairs]
    rows.sort(key=lambda r: r[0])
    return {"rows": [r for _, r in rows]}, EXIT_OK


# ---------------------------------------------------------------------------
# Output formatting
# ---------------------------------------------------------------------------

_CSV_COLUMNS = ["E", "V0", "V1", "refl", "trans", "rt_sum", "correction", "regime"]


def _fmt_machine(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _fmt_human(x) -> str:
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


def render(payload: dict, scenario: dict, command: str) -> str:
    mode = scenario.get("output", "human")
    meta = {
        "command": command,
        "seed": scenario.get("seed", 0),
        "tolerance": scenario.get("tolerance"),
    }
    if mode == "json":
        return json.dumps({"meta": meta, "data": payload}, sort_keys=True, indent=2)
    if mode == "csv":
        rows = payload.get("rows", [payload])
        buf = io.StringIO()
        buf.write(
            f"# kg-rhs {command} seed={meta['seed']} tolerance={meta['tolerance']}\n"
        )
        writer = csv.writer(buf, lineterminator="\n")
        columns = [c for c in _CSV_COLUMNS if c in rows[0]]
        if not columns:
            columns = sorted(rows[0])
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_machine(row[c]) for c in columns])
        return buf.getvalue()
    lines = [f"kg-rhs {command}"]
    rows = payload.get("rows")
    if rows is not None:
        header = [c for c in _CSV_COLUMNS if c in rows[0]]
        lines.append("  ".join(header))
        for row in rows:
            lines.append("  ".join(_fmt_human(row[c]) for c in header))
    else:
        for key in sorted(payload):
            lines.append(f"  {key}: {_fmt_human_value(payload[key])}")
    return "\n".join(lines) + "\n"


def _fmt_human_value(v):
    if isinstance(v, float):
        return _fmt_human(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt_human_value(x)}" for k, x in sorted(v.items())) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_human_value(x) for x in v) + "]"
    return str(v)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kg-rhs",
        description="Plane-wave wave-equation scenarios: solve, verify, scatter, sweep.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "verify", "klein", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("scenario", help="path to the scenario JSON file")
        p.add_argument("--output", choices=["human", "json", "csv"])
        p.add_argument("--tolerance", type=float)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int)
    args = parser.parse_args(argv)

    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    if scenario["command"] != args.command:
        print(
            f"error: scenario declares command {scenario['command']!r}, "
            f"invoked as {args.command!r}",
            file=sys.stderr,
        )
        return EXIT_SCHEMA

    for key in ("output", "tolerance", "seed"):
        value = getattr(args, key)
        if value is not None:
            scenario[key] = value

    try:
        if args.command == "solve":
            payload, code = run_solve(scenario)
        elif args.command == "verify":
            payload, code = run_verify(scenario)
        elif args.command == "klein":
            payload, code = run_klein(scenario)
        else:
            payload, code = run_sweep(scenario, jobs=max(1, args.jobs))
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except KGRHSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    sys.stdout.write(render(payload, scenario, args.command))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
