"""Batch command-line front end.

Subcommands map one-to-one onto the experiment families::

    phasecycle otto   --omega1 1 --omega2 2 --t-cold 1 --t-hot 4
    phasecycle carnot cycle --omega1 2 --omega2 1 --t-hot 2 --t-cold 1
    phasecycle carnot maximize-power --t-hot 4 --t-cold 1 --ds 1 --c1 1 --c2 1
    phasecycle pump   --config loop.toml --compare-exact
    phasecycle phase  --path-file path.csv

Parameters come from an optional TOML config file with command-line flags
taking precedence.  Single runs emit a JSON report; parameter sweeps emit
CSV (one row per point, numbers with 17 significant digits).  Output is
byte-identical across repeated runs of the same configuration.

Exit codes: 0 success, 2 configuration/schema violation, 3 numerical
failure inside a module (the error is serialized to stdout).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover - py310 path
    import tomli as tomllib

import numpy as np

from . import CONVENTIONS_VERSION, carnot, otto, phase, pump
from .errors import PathRefinementError, PhasecycleError

__all__ = ["main", "run", "RunConfig", "ConfigError", "env_seed"]

SCHEMA_VERSION = 1
_DEFAULT_SEED = 20260809
_TWO_PI = 2.0 * math.pi


class ConfigError(Exception):
    """A configuration or schema violation (CLI exit code 2)."""


def env_seed() -> int:
    """Seed for randomized sweeps/tests, from PHASECYCLE_SEED."""
    raw = os.environ.get("PHASECYCLE_SEED", str(_DEFAULT_SEED))
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"PHASECYCLE_SEED must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Sweep:
    parameter: str
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class OutputSpec:
    fmt: Optional[str] = None  # "json" | "csv" | None = choose by run shape
    path: Optional[str] = None


@dataclass(frozen=True)
class RunConfig:
    experiment: str  # otto | carnot-cycle | carnot-maximize-power | pump | phase
    params: dict
    sweep: Optional[Sweep] = None
    output: OutputSpec = field(default_factory=OutputSpec)


# --------------------------------------------------------------------------
# schema validation

_SCALAR_SCHEMAS = {
    "otto": {"omega1": None, "omega2": None, "t_cold": None, "t_hot": None,
             "hbar": 1.0},
    "carnot-cycle": {"omega1": None, "omega2": None, "t_cold": None,
                     "t_hot": None, "hbar": 1.0},
    "carnot-maximize-power": {"t_hot": None, "t_cold": None, "ds": None,
                              "c1": None, "c2": None},
}

_SWEEPABLE = {
    "otto": ("omega1", "omega2", "t_cold", "t_hot", "hbar"),
    "carnot-cycle": ("omega1", "omega2", "t_cold", "t_hot", "hbar"),
    "carnot-maximize-power": ("t_hot", "t_cold", "ds", "c1", "c2"),
    "pump": ("drive_frequency",),
    "phase": (),
}

_RATE_KEYS = ("gamma_l_plus", "gamma_r_plus", "gamma_l_minus", "gamma_r_minus")


def _need_number(params: dict, key: str, where: str) -> float:
    if key not in params:
        raise ConfigError(f"{where}.{key}: required parameter missing")
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number, got {v!r}")
    return float(v)


def _validate_scalar_params(experiment: str, params: dict) -> dict:
    schema = _SCALAR_SCHEMAS[experiment]
    out = {}
    for key, default in schema.items():
        if key in params:
            out[key] = _need_number(params, key, "params")
        elif default is not None:
            out[key] = default
        else:
            raise ConfigError(f"params.{key}: required parameter missing")
    for key in params:
        if key not in schema:
            raise ConfigError(f"params.{key}: unknown parameter for {experiment}")
    return out


def _validate_rate_table(tbl: Any, where: str) -> dict:
    if not isinstance(tbl, dict):
        raise ConfigError(f"{where}: expected a table with offset/amplitude/phase")
    out = {"offset": _need_number(tbl, "offset", where),
           "amplitude": float(tbl.get("amplitude", 0.0)),
           "phase": float(tbl.get("phase", 0.0))}
    for key in tbl:
        if key not in ("offset", "amplitude", "phase"):
            raise ConfigError(f"{where}.{key}: unknown rate key")
    for key in ("amplitude", "phase"):
        if isinstance(tbl.get(key), bool):
            raise ConfigError(f"{where}.{key}: expected a number")
    return out


def _validate_pump_params(params: dict) -> dict:
    known = {"protocol", "compare_exact", "periods", "rate_floor"}
    for key in params:
        if key not in known:
            raise ConfigError(f"params.{key}: unknown parameter for pump")
    proto = params.get("protocol")
    if not isinstance(proto, dict):
        raise ConfigError("params.protocol: required table missing")
    for key in proto:
        if key not in _RATE_KEYS + ("drive_frequency",):
            raise ConfigError(f"params.protocol.{key}: unknown protocol key")
    out = {
        "protocol": {
            "drive_frequency": _need_number(proto, "drive_frequency",
                                            "params.protocol"),
            **{k: _validate_rate_table(proto.get(k), f"params.protocol.{k}")
               for k in _RATE_KEYS},
        },
        "compare_exact": bool(params.get("compare_exact", False)),
        "periods": params.get("periods", 1),
        "rate_floor": float(params.get("rate_floor", 0.0)),
    }
    if not isinstance(out["periods"], int) or out["periods"] < 1:
        raise ConfigError("params.periods: expected a positive integer")
    return out


def _validate_phase_params(params: dict) -> dict:
    known = {"path_file", "path"}
    for key in params:
        if key not in known:
            raise ConfigError(f"params.{key}: unknown parameter for phase")
    has_file = "path_file" in params
    has_table = "path" in params
    if has_file == has_table:
        raise ConfigError("params: provide exactly one of path_file or [path]")
    if has_file:
        if not isinstance(params["path_file"], str):
            raise ConfigError("params.path_file: expected a file path string")
        return {"path_file": params["path_file"]}
    tbl = params["path"]
    if not isinstance(tbl, dict):
        raise ConfigError("params.path: expected a table")
    for key in tbl:
        if key not in ("theta", "phi", "samples", "t_span"):
            raise ConfigError(f"params.path.{key}: unknown path key")
    out = {"theta": _validate_rate_table(tbl.get("theta"), "params.path.theta"),
           "phi": _validate_rate_table(tbl.get("phi"), "params.path.phi")}
    samples = tbl.get("samples")
    if not isinstance(samples, int) or samples < 2:
        raise ConfigError("params.path.samples: expected an integer >= 2")
    out["samples"] = samples
    span = tbl.get("t_span", [0.0, _TWO_PI])
    if (not isinstance(span, (list, tuple)) or len(span) != 2
            or not all(isinstance(x, (int, float)) for x in span)
            or not float(span[1]) > float(span[0])):
        raise ConfigError("params.path.t_span: expected [start, stop] with stop > start")
    out["t_span"] = [float(span[0]), float(span[1])]
    return {"path": out}


def validate_config(cfg: RunConfig) -> RunConfig:
    """Check a RunConfig against its experiment schema; returns the config
    with defaults filled in.  Raises ConfigError on any violation."""
    if cfg.experiment in _SCALAR_SCHEMAS:
        params = _validate_scalar_params(cfg.experiment, cfg.params)
    elif cfg.experiment == "pump":
        params = _validate_pump_params(cfg.params)
    elif cfg.experiment == "phase":
        params = _validate_phase_params(cfg.params)
    else:
        raise ConfigError(f"experiment: unknown experiment {cfg.experiment!r}")

    if cfg.sweep is not None:
        allowed = _SWEEPABLE[cfg.experiment]
        if cfg.sweep.parameter not in allowed:
            raise ConfigError(
                f"sweep.parameter: {cfg.sweep.parameter!r} is not sweepable for "
                f"{cfg.experiment} (choose from {', '.join(allowed) or 'nothing'})")
        if not isinstance(cfg.sweep.count, int) or cfg.sweep.count < 2:
            raise ConfigError("sweep.count: expected an integer >= 2")
        for name in ("start", "stop"):
            v = getattr(cfg.sweep, name)
            if not isinstance(v, (int, float)) or not math.isfinite(float(v)):
                raise ConfigError(f"sweep.{name}: expected a finite number")
    if cfg.output.fmt not in (None, "json", "csv"):
        raise ConfigError(f"output.format: expected json or csv, got {cfg.output.fmt!r}")
    return RunConfig(cfg.experiment, params, cfg.sweep, cfg.output)


# --------------------------------------------------------------------------
# experiment drivers (validated params -> results dict)

_TOLERANCES = {
    "otto": {},
    "carnot-cycle": {},
    "carnot-maximize-power": {"optimizer_abs_tol": 1e-12,
                              "optimizer_rel_tol": 1e-12},
    "pump": {"ode_abs_tol": 1e-12, "ode_rel_tol": 1e-12,
             "quadrature_abs_tol": 1e-13, "quadrature_rel_tol": 1e-13,
             "period_map_tol": pump.PERIOD_MAP_TOL},
    "phase": {"overlap_floor": 1e-12},
}


def _run_otto(params: dict) -> dict:
    beta_cold, beta_hot = 1.0 / params["t_cold"], 1.0 / params["t_hot"]
    res = otto.cycle(otto.OttoSpec(omega1=params["omega1"], omega2=params["omega2"],
                                   beta_cold=beta_cold, beta_hot=beta_hot,
                                   hbar=params["hbar"]))
    return {
        "w1": res.w1, "q2": res.q2, "w3": res.w3, "q4": res.q4,
        "w_net_extracted": res.w_net_extracted,
        "efficiency": res.efficiency,
        "max_power_frequency_ratio": otto.max_power_frequency_ratio(beta_cold, beta_hot),
        "efficiency_at_max_power": otto.efficiency_at_max_power(beta_cold, beta_hot),
    }


def _run_carnot_cycle(params: dict) -> dict:
    spec = carnot.solve_adiabats(params["omega1"], params["omega2"],
                                 beta_hot=1.0 / params["t_hot"],
                                 beta_cold=1.0 / params["t_cold"],
                                 hbar=params["hbar"])
    res = carnot.reversible_cycle(spec)
    return {
        "omega_t3": spec.omega_t3, "omega_t4": spec.omega_t4,
        "q_hot": res.q_hot, "w_adiabat_1": res.w_adiabat_1,
        "q_cold": res.q_cold, "w_adiabat_2": res.w_adiabat_2,
        "w_net_extracted": res.w_net_extracted,
        "efficiency": res.efficiency,
    }


def _run_carnot_max_power(params: dict) -> dict:
    p = carnot.LowDissipationParams(t_hot=params["t_hot"], t_cold=params["t_cold"],
                                    delta_s=params["ds"], c1=params["c1"],
                                    c2=params["c2"])
    opt = carnot.maximize_power(p)
    return {
        "tau_cold_star": opt.tau_cold_star,
        "tau_hot_star": opt.tau_hot_star,
        "p_star": opt.p_star,
        "efficiency_star": opt.efficiency_star,
    }


def _build_protocol(params: dict) -> pump.RateProtocol:
    proto = params["protocol"]
    rates = {k: pump.SinusoidalRate(offset=proto[k]["offset"],
                                    amplitude=proto[k]["amplitude"],
                                    phase=proto[k]["phase"])
             for k in _RATE_KEYS}
    return pump.RateProtocol(drive_frequency=proto["drive_frequency"],
                             rate_floor=params["rate_floor"], **rates)


def _run_pump(params: dict) -> dict:
    protocol = _build_protocol(params)
    dyn = pump.dynamic_charge(protocol)
    geo = pump.geometric_charge(protocol)
    out = {
        "n_dyn": dyn.n_right, "n_dyn_left": dyn.n_left, "n_dyn_total": dyn.n_total,
        "n_geom": geo.n_right, "n_geom_left": geo.n_left, "n_geom_total": geo.n_total,
    }
    if params["compare_exact"]:
        ex = pump.integrate_exact(protocol, periods=params["periods"])
        out.update({
            "n_exact": ex.pumped.n_right,
            "n_exact_left": ex.pumped.n_left,
            "n_exact_total": ex.pumped.n_total,
            "residual": abs(ex.pumped.n_right - dyn.n_right - geo.n_right),
            "periods_to_converge": ex.periods_to_converge,
        })
    return out


# pump sweep table: per-period right-reservoir charges plus the residual
_PUMP_SWEEP_COLUMNS = ("n_exact", "n_dyn", "n_geom", "residual")


def _read_path_csv(path_file: str) -> phase.BlochPath:
    try:
        fh = open(path_file, newline="")
    except OSError as exc:
        raise ConfigError(f"params.path_file: cannot open {path_file!r}: {exc}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path_file}:1: empty path file") from None
        header = [h.strip() for h in header]
        if header[:3] != ["t", "theta", "phi"] or header not in (
                ["t", "theta", "phi"], ["t", "theta", "phi", "energy"]):
            raise ConfigError(
                f"{path_file}:1: header must be t,theta,phi[,energy], got {','.join(header)}")
        has_energy = len(header) == 4
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ConfigError(f"{path_file}:{lineno}: expected {len(header)} fields")
            try:
                rows.append([float(x) for x in row])
            except ValueError as exc:
                raise ConfigError(f"{path_file}:{lineno}: {exc}") from None
    if len(rows) < 2:
        raise ConfigError(f"{path_file}: need at least two path rows")
    data = np.array(rows)
    energies = data[:, 3] if has_energy else None
    return phase.BlochPath.from_angles(data[:, 1], data[:, 2], times=data[:, 0],
                                       energies=energies)


def _analytic_path(tbl: dict, samples: int) -> phase.BlochPath:
    t = np.linspace(tbl["t_span"][0], tbl["t_span"][1], samples)
    theta = tbl["theta"]["offset"] + tbl["theta"]["amplitude"] * np.cos(
        t + tbl["theta"]["phase"])
    phi = tbl["phi"]["offset"] + tbl["phi"]["amplitude"] * np.cos(
        t + tbl["phi"]["phase"])
    return phase.BlochPath.from_angles(theta, phi, times=t)


def _run_phase(params: dict) -> dict:
    if "path_file" in params:
        # explicit samples cannot be refined; under-resolved data surfaces
        # as a module error
        res = phase.geometric_phase(_read_path_csv(params["path_file"]))
    else:
        tbl = params["path"]
        samples = tbl["samples"]
        for _ in range(8):  # refine until the path and its half-resolution
            try:                      # subsample both resolve the curve
                res = phase.geometric_phase(_analytic_path(tbl, samples))
                break
            except PathRefinementError:
                samples = 2 * samples - 1
        else:
            raise ConfigError("params.path: path cannot be refined into "
                              "overlapping samples (antipodal jump)")
    out = {
        "total_geometric": res.total_geometric,
        "pancharatnam_term": res.pancharatnam_term,
        "connection_term": res.connection_term,
        "connection_error": res.connection_error,
    }
    if res.dynamical is not None:
        out["dynamical"] = res.dynamical
        out["dynamical_error"] = res.dynamical_error
    return out


_DRIVERS = {
    "otto": _run_otto,
    "carnot-cycle": _run_carnot_cycle,
    "carnot-maximize-power": _run_carnot_max_power,
    "pump": _run_pump,
    "phase": _run_phase,
}


# --------------------------------------------------------------------------
# run + serialization

def _set_sweep_value(cfg: RunConfig, value: float) -> dict:
    params = json.loads(json.dumps(cfg.params))  # deep copy of plain data
    if cfg.experiment == "pump":
        params["protocol"]["drive_frequency"] = value
    else:
        params[cfg.sweep.parameter] = value
    return params


def _sweep_values(sweep: Sweep) -> list[float]:
    step = (sweep.stop - sweep.start) / (sweep.count - 1)
    return [sweep.start + i * step for i in range(sweep.count)]


def _fmt17(x) -> str:
    if isinstance(x, bool) or isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _csv_report(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt17(row[c]) for c in columns])
    return buf.getvalue()


def _json_report(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a validated RunConfig.

    Returns ``(exit_code, report_text)``: code 0 with the JSON/CSV report,
    or code 3 with a serialized module error.  Identical configs produce
    byte-identical reports.
    """
    driver = _DRIVERS[cfg.experiment]
    try:
        if cfg.sweep is None:
            results = driver(cfg.params)
            payload = {
                "schema_version": SCHEMA_VERSION,
                "conventions": CONVENTIONS_VERSION,
                "experiment": cfg.experiment,
                "inputs": {**cfg.params, "seed": env_seed()},
                "tolerances": _TOLERANCES[cfg.experiment],
                "results": results,
            }
            if cfg.output.fmt == "csv":
                cols = sorted(results)
                return 0, _csv_report(cols, [results])
            return 0, _json_report(payload)

        values = _sweep_values(cfg.sweep)
        with ThreadPoolExecutor(max_workers=min(8, len(values))) as pool:
            rows = list(pool.map(lambda v: driver(_set_sweep_value(cfg, v)), values))
        if cfg.experiment == "pump":
            key = "omega"
            columns = [key] + [c for c in _PUMP_SWEEP_COLUMNS if c in rows[0]]
        else:
            key = cfg.sweep.parameter
            columns = [key] + sorted(rows[0])
        table = [{key: v, **row} for v, row in zip(values, rows)]
        if cfg.output.fmt == "json":
            payload = {
                "schema_version": SCHEMA_VERSION,
                "conventions": CONVENTIONS_VERSION,
                "experiment": cfg.experiment,
                "inputs": {**cfg.params, "seed": env_seed()},
                "sweep": {"parameter": cfg.sweep.parameter, "start": cfg.sweep.start,
                          "stop": cfg.sweep.stop, "count": cfg.sweep.count},
                "tolerances": _TOLERANCES[cfg.experiment],
                "rows": [{c: row[c] for c in columns} for row in table],
            }
            return 0, _json_report(payload)
        return 0, _csv_report(columns, table)
    except PhasecycleError as exc:
        return 3, _json_report({
            "schema_version": SCHEMA_VERSION,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        })


# --------------------------------------------------------------------------
# argument parsing

def _add_common(sp: argparse.ArgumentParser):
    sp.add_argument("--config", help="TOML configuration file")
    sp.add_argument("--out", help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("json", "csv"), dest="fmt",
                    help="report format (default: json, csv for sweeps)")
    sp.add_argument("--sweep", nargs=4, metavar=("PARAM", "START", "STOP", "COUNT"),
                    help="sweep PARAM over a linear grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasecycle",
        description="Thermal-engine cycles, two-state charge pumping and "
                    "geometric phases, batch style.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_otto = sub.add_parser("otto", help="harmonic-oscillator Otto cycle")
    _add_common(p_otto)
    for flag in ("--omega1", "--omega2", "--t-cold", "--t-hot", "--hbar"):
        p_otto.add_argument(flag, type=float)

    p_carnot = sub.add_parser("carnot", help="spin-1/2 Carnot cycle")
    carnot_sub = p_carnot.add_subparsers(dest="verb", required=True)
    p_cycle = carnot_sub.add_parser("cycle", help="reversible cycle energy book")
    _add_common(p_cycle)
    for flag in ("--omega1", "--omega2", "--t-cold", "--t-hot", "--hbar"):
        p_cycle.add_argument(flag, type=float)
    p_maxp = carnot_sub.add_parser("maximize-power",
                                   help="low-dissipation finite-time optimum")
    _add_common(p_maxp)
    for flag in ("--t-hot", "--t-cold", "--ds", "--c1", "--c2"):
        p_maxp.add_argument(flag, type=float)

    p_pump = sub.add_parser("pump", help="driven two-state dot charge pumping")
    _add_common(p_pump)
    p_pump.add_argument("--compare-exact", action="store_true", default=None,
                        help="also integrate the master equation exactly")
    p_pump.add_argument("--omega-sweep", nargs=3, metavar=("START", "STOP", "COUNT"),
                        help="sweep the drive frequency")
    p_pump.add_argument("--drive-frequency", type=float)
    p_pump.add_argument("--periods", type=int)

    p_phase = sub.add_parser("phase", help="geometric phase of a Bloch path")
    _add_common(p_phase)
    p_phase.add_argument("--path-file", help="CSV path: t,theta,phi[,energy]")

    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _parse_sweep_args(raw, where: str) -> Sweep:
    param, start, stop, count = raw
    try:
        return Sweep(parameter=str(param), start=float(start), stop=float(stop),
                     count=int(count))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge config file and command-line flags into a validated RunConfig."""
    if args.command == "carnot":
        experiment = f"carnot-{args.verb}"
    else:
        experiment = args.command

    params: dict = {}
    sweep: Optional[Sweep] = None
    fmt = path = None
    if args.config:
        doc = _load_config_file(args.config)
        for key in doc:
            if key not in ("params", "sweep", "output", "experiment"):
                raise ConfigError(f"{args.config}: unknown top-level table {key!r}")
        if "experiment" in doc and doc["experiment"] != experiment:
            raise ConfigError(
                f"{args.config}: experiment {doc['experiment']!r} does not match "
                f"the {experiment!r} subcommand")
        params = doc.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"{args.config}: params must be a table")
        if "sweep" in doc:
            tbl = doc["sweep"]
            if not isinstance(tbl, dict) or not {"parameter", "start", "stop",
                                                 "count"} <= set(tbl):
                raise ConfigError(
                    f"{args.config}: sweep needs parameter/start/stop/count")
            sweep = _parse_sweep_args((tbl["parameter"], tbl["start"], tbl["stop"],
                                       tbl["count"]), f"{args.config}: sweep")
        if "output" in doc:
            tbl = doc["output"]
            if not isinstance(tbl, dict):
                raise ConfigError(f"{args.config}: output must be a table")
            fmt = tbl.get("format")
            path = tbl.get("path")

    # flags take precedence over the config file
    flag_map = {"omega1": "omega1", "omega2": "omega2", "t_cold": "t_cold",
                "t_hot": "t_hot", "hbar": "hbar", "ds": "ds", "c1": "c1",
                "c2": "c2", "path_file": "path_file"}
    for attr, key in flag_map.items():
        v = getattr(args, attr, None)
        if v is not None:
            params[key] = v
    if getattr(args, "compare_exact", None) is not None:
        params["compare_exact"] = True
    if getattr(args, "periods", None) is not None:
        params["periods"] = args.periods
    if getattr(args, "drive_frequency", None) is not None:
        params.setdefault("protocol", {})
        if isinstance(params["protocol"], dict):
            params["protocol"]["drive_frequency"] = args.drive_frequency
    if getattr(args, "sweep", None) is not None:
        sweep = _parse_sweep_args(args.sweep, "--sweep")
    if getattr(args, "omega_sweep", None) is not None:
        start, stop, count = args.omega_sweep
        sweep = _parse_sweep_args(("drive_frequency", start, stop, count),
                                  "--omega-sweep")
    if args.fmt is not None:
        fmt = args.fmt
    if args.out is not None:
        path = args.out

    return validate_config(RunConfig(experiment=experiment, params=params,
                                     sweep=sweep,
                                     output=OutputSpec(fmt=fmt, path=path)))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        code, text = run(cfg)  # ingested files can still violate the schema
    except ConfigError as exc:
        print(f"phasecycle: {exc}", file=sys.stderr)
        return 2
    if cfg.output.path and code == 0:
        with open(cfg.output.path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
