"""Command-line front end: ``fracschro {ml,free,well,green,fracderiv}``.

Values resolve as built-in defaults, then a JSON ``--config`` file, then
flags. The resolved configuration is echoed to stderr as JSON. Data files
hold no run metadata, so identical configurations give identical bytes.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import frac_calc, free_particle, green, potential_well
from .errors import NumericalFailure
from .mittag_leffler import MLOrder, ml, ml_asymptotic, ml_series
from .scales import Scales

SUBCOMMANDS = ("ml", "free", "well", "green", "fracderiv")

COMMON_DEFAULTS: dict[str, Any] = {
    "nu": None, "nu_re": None, "nu_im": None,
    "nm": 1.0, "lp": 1.0, "tp": 1.0,
    "t_min": 0.0, "t_max": 1.0, "nt": 11,
    "x_min": None, "x_max": None, "nx": 201,
    "k_min": None, "k_max": None, "nk": 512,
    "tol": 1e-12, "output": None, "format": "csv",
}

SCENARIO_DEFAULTS: dict[str, dict[str, Any]] = {
    "ml": {"alpha": "1", "beta": "1", "z": "0", "method": "auto", "max_terms": 100000,
           "num_terms": 8},
    "free": {"k_center": 0.0, "sigma_k": 1.0, "x0": 0.0, "part": "full"},
    "well": {"width": math.pi, "modes": "1:1", "part": "full"},
    "green": {"kind": "retarded", "k_center": 0.0, "sigma_k": 1.0, "x0": 0.0, "kernel": False},
    "fracderiv": {"lam": "1", "x0": 0.0},
}


class UsageError(Exception):
    """Invalid command line or configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    subcommand: str
    nu: complex
    scales: Scales
    grid: dict[str, Any]
    params: dict[str, Any]
    tolerance: float
    output_path: str | None
    output_format: str
    resolved: dict[str, Any] = field(default_factory=dict, repr=False)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser):
    s = argparse.SUPPRESS
    p.add_argument("--config", default=s, help="JSON file with default values")
    p.add_argument("--nu", default=s, help="derivative order, e.g. 0.5 or 1+0.2j")
    p.add_argument("--nu-re", type=float, default=s)
    p.add_argument("--nu-im", type=float, default=s)
    p.add_argument("--nm", type=float, default=s, help="mass ratio m/M_p")
    p.add_argument("--lp", type=float, default=s)
    p.add_argument("--tp", type=float, default=s)
    for ax in ("t", "x", "k"):
        p.add_argument(f"--{ax}-min", type=float, default=s)
        p.add_argument(f"--{ax}-max", type=float, default=s)
        p.add_argument(f"--n{ax}", type=int, default=s)
    p.add_argument("--tol", type=float, default=s)
    p.add_argument("--output", default=s, help="output path (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default=s)


def build_parser() -> argparse.ArgumentParser:
    s = argparse.SUPPRESS
    parser = _Parser(prog="fracschro", description="Time-fractional Schrodinger numerics.")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    p = sub.add_parser("ml", help="evaluate E_{alpha,beta}(z)")
    p.add_argument("--alpha", default=s)
    p.add_argument("--beta", default=s)
    p.add_argument("--z", default=s)
    p.add_argument("--method", choices=("auto", "series", "asymptotic"), default=s)
    p.add_argument("--max-terms", type=int, default=s)
    p.add_argument("--num-terms", type=int, default=s)
    _add_common(p)
    for name in ("free", "green"):
        p = sub.add_parser(name, help=f"{name} scenario on a Gaussian packet")
        p.add_argument("--k-center", type=float, default=s)
        p.add_argument("--sigma-k", type=float, default=s)
        p.add_argument("--x0", type=float, default=s)
        if name == "free":
            p.add_argument("--part", choices=("full", "onshell", "offshell"), default=s)
        else:
            p.add_argument("--kind", choices=("retarded", "advanced", "wheeler"), default=s)
            p.add_argument("--kernel", action="store_true", default=s,
                           help="emit the multiplier on the (t, k) grid")
        _add_common(p)
    p = sub.add_parser("well", help="infinite-well evolution")
    p.add_argument("--width", type=float, default=s)
    p.add_argument("--modes", default=s, help="comma list n:coef, e.g. 1:1,3:0.5j")
    p.add_argument("--part", choices=("full", "onshell", "offshell"), default=s)
    _add_common(p)
    p = sub.add_parser("fracderiv", help="fractional derivative of exp(-(x-x0)**2)")
    p.add_argument("--lambda", dest="lam", default=s)
    p.add_argument("--x0", type=float, default=s)
    _add_common(p)
    return parser


def _complex(name: str, v) -> complex:
    try:
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return complex(float(v[0]), float(v[1]))
        return complex(str(v).replace(" ", "")) if isinstance(v, str) else complex(v)
    except (TypeError, ValueError):
        raise UsageError(f"--{name.replace('_', '-')}: cannot parse {v!r} as a complex number")


def parse_modes(text: str) -> list[tuple[int, complex]]:
    out = []
    for item in str(text).split(","):
        try:
            n, c = item.split(":")
            n = int(n)
        except ValueError:
            raise UsageError(f"--modes: expected n:coef, got {item!r}")
        if n < 1:
            raise UsageError(f"--modes: mode index must be >= 1, got {n}")
        out.append((n, _complex("modes", c)))
    return out


def _load_file(path: str, allowed: set[str]) -> dict[str, Any]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--config: {exc}")
    if not isinstance(data, dict):
        raise UsageError("--config: top level must be a JSON object")
    norm = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = sorted(set(norm) - allowed)
    if unknown:
        raise UsageError(f"--config: unknown keys {unknown}")
    return norm


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    """Parse ``argv`` (and an optional ``--config`` file) into a validated :class:`RunConfig`."""
    ns = vars(build_parser().parse_args(argv))
    cmd = ns.pop("subcommand", None)
    if cmd is None:
        raise UsageError("missing subcommand; choose one of " + ", ".join(SUBCOMMANDS))
    values = dict(COMMON_DEFAULTS)
    values.update(SCENARIO_DEFAULTS[cmd])
    cfg_path = ns.pop("config", None)
    if cfg_path is not None:
        values.update(_load_file(cfg_path, set(values)))
    if "nu" in ns:
        values["nu_re"] = values["nu_im"] = None
    if "nu_re" in ns or "nu_im" in ns:
        values["nu"] = None
    values.update(ns)
    return _validate(cmd, values)


def _validate(cmd: str, v: dict[str, Any]) -> RunConfig:
    if v["nu"] is not None:
        nu = _complex("nu", v["nu"])
    elif v["nu_re"] is not None or v["nu_im"] is not None:
        nu = complex(float(v["nu_re"] or 0.0), float(v["nu_im"] or 0.0))
    else:
        nu = 1 + 0j
    if not nu.real > 0:
        raise UsageError(f"--nu: Re(nu) must be > 0, got {nu}")
    try:
        scales = Scales(v["nm"], v["lp"], v["tp"])
    except ValueError as exc:
        raise UsageError(f"--nm/--lp/--tp: {exc}")
    tol = float(v["tol"])
    if not 0 < tol <= 1e-2:
        raise UsageError(f"--tol: must lie in (0, 1e-2], got {tol}")
    for ax in ("t", "x", "k"):
        if int(v[f"n{ax}"]) < 2:
            raise UsageError(f"--n{ax}: grid counts must be >= 2")
    if cmd in ("free", "well") and float(v["t_min"]) < 0:
        raise UsageError("--t-min: causal scenarios need t >= 0")
    if (v["x_min"] is None) != (v["x_max"] is None):
        raise UsageError("--x-min/--x-max: give both or neither")
    if v["x_min"] is None:
        # the well lives on [0, width]; other scenarios default to [-10, 10]
        v["x_min"], v["x_max"] = (0.0, float(v["width"])) if cmd == "well" else (-10.0, 10.0)
    if v["t_max"] < v["t_min"] or v["x_max"] < v["x_min"]:
        raise UsageError("--t-max/--x-max: maximum below minimum")
    if (v["k_min"] is None) != (v["k_max"] is None):
        raise UsageError("--k-min/--k-max: give both or neither")
    if v["format"] not in ("csv", "json"):
        raise UsageError(f"--format: expected csv or json, got {v['format']!r}")
    params = {k: v[k] for k in SCENARIO_DEFAULTS[cmd]}
    if cmd == "ml":
        params["alpha"] = _complex("alpha", params["alpha"])
        params["beta"] = _complex("beta", params["beta"])
        params["z"] = _complex("z", params["z"])
    elif cmd == "well":
        params["modes"] = parse_modes(params["modes"])
        if not params["width"] > 0:
            raise UsageError("--width: must be > 0")
    elif cmd == "fracderiv":
        params["lam"] = _complex("lambda", params["lam"])
    if cmd in ("free", "green") and not params["sigma_k"] > 0:
        raise UsageError("--sigma-k: must be > 0")
    grid = {k: v[k] for k in ("t_min", "t_max", "nt", "x_min", "x_max", "nx",
                              "k_min", "k_max", "nk")}
    resolved = {"subcommand": cmd, "nu": [nu.real, nu.imag],
                **{k: v[k] for k in ("nm", "lp", "tp", "tol", "output", "format")},
                **grid, **{k: _jsonable(p) for k, p in params.items()}}
    return RunConfig(cmd, nu, scales, grid, params, tol, v["output"], v["format"], resolved)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, list):
        return [_jsonable(i) for i in v]
    if isinstance(v, tuple):
        return [_jsonable(i) for i in v]
    return v


def _axis(g, ax: str) -> np.ndarray:
    return np.linspace(float(g[f"{ax}_min"]), float(g[f"{ax}_max"]), int(g[f"n{ax}"]))


def _ml_kw(cfg: RunConfig) -> dict[str, float]:
    return {"atol": cfg.tolerance, "rtol": cfg.tolerance}


def _packet(cfg: RunConfig):
    p, g = cfg.params, cfg.grid
    grid = None
    if g["k_min"] is not None:
        grid = free_particle.KGrid(float(g["k_min"]), float(g["k_max"]), int(g["nk"]))
    elif int(g["nk"]) != COMMON_DEFAULTS["nk"]:
        c, s = p["k_center"], p["sigma_k"]
        grid = free_particle.KGrid(c - 14.0 * s, c + 14.0 * s, int(g["nk"]))
    return free_particle.gaussian_packet(p["k_center"], p["sigma_k"], p["x0"], grid)


def _field_table(fld) -> tuple[list[str], np.ndarray]:
    tt, xx = np.meshgrid(fld.t_values, fld.x_values, indexing="ij")
    v = fld.values
    cols = [tt.ravel(), xx.ravel(), v.real.ravel(), v.imag.ravel(), (np.abs(v) ** 2).ravel()]
    return ["t", "x", "re", "im", "abs2"], np.column_stack(cols)


def _pick_part(cfg: RunConfig, t: np.ndarray, decompose, full):
    part = cfg.params["part"]
    if part == "full":
        return full()
    if complex(cfg.nu) != 0.5:
        raise UsageError("--part: on/off-shell parts exist only for nu = 0.5")
    rows = [decompose(ti) for ti in t]
    idx = 0 if part == "onshell" else 1
    vals = np.vstack([r[idx].values for r in rows])
    return free_particle.SpaceTimeField(t, rows[0][idx].x_values, vals)


def _run_free(cfg: RunConfig):
    spec = _packet(cfg)
    t, x = _axis(cfg.grid, "t"), _axis(cfg.grid, "x")
    return _field_table(_pick_part(
        cfg, t,
        lambda ti: free_particle.decompose_half_shell(spec, ti, x, cfg.scales),
        lambda: free_particle.evolve_free(spec, cfg.nu, t, x, cfg.scales, **_ml_kw(cfg))))


def _run_well(cfg: RunConfig):
    p = cfg.params
    width = float(p["width"])
    n_max = max(n for n, _ in p["modes"])
    coef = np.zeros(n_max, dtype=complex)
    for n, c in p["modes"]:
        coef[n - 1] += c
    ws = potential_well.WellSpectrum(width, coef)
    t, x = _axis(cfg.grid, "t"), _axis(cfg.grid, "x")
    return _field_table(_pick_part(
        cfg, t,
        lambda ti: potential_well.decompose_half_well(ws, ti, x, cfg.scales),
        lambda: potential_well.evolve_well(ws, cfg.nu, t, x, cfg.scales, **_ml_kw(cfg))))


def _run_green(cfg: RunConfig):
    spec = _packet(cfg)
    t = _axis(cfg.grid, "t")
    kind = cfg.params["kind"]
    if cfg.params["kernel"]:
        k = spec.k_values
        g = green.green_kernel_k(kind, cfg.nu, t[:, None], k[None, :], cfg.scales, **_ml_kw(cfg))
        tt, kk = np.meshgrid(t, k, indexing="ij")
        return ["t", "k", "re", "im"], np.column_stack(
            [tt.ravel(), kk.ravel(), np.real(g).ravel(), np.imag(g).ravel()])
    x = _axis(cfg.grid, "x")
    return _field_table(green.apply_green(kind, cfg.nu, spec, t, x, cfg.scales, **_ml_kw(cfg)))


def _run_fracderiv(cfg: RunConfig):
    x = _axis(cfg.grid, "x")
    f = np.exp(-((x - cfg.params["x0"]) ** 2))
    spec = frac_calc.frac_deriv(frac_calc.forward_transform(x, f), cfg.params["lam"])
    d = frac_calc.inverse_transform(spec, x)
    return ["x", "re", "im", "abs2"], np.column_stack([x, d.real, d.imag, np.abs(d) ** 2])


def _run_ml(cfg: RunConfig) -> str:
    p = cfg.params
    try:
        order = MLOrder(p["alpha"], p["beta"])
    except ValueError as exc:
        raise UsageError(f"--alpha: {exc}")
    if p["method"] == "series":
        r = ml_series(order, p["z"], int(p["max_terms"]), atol=cfg.tolerance, rtol=cfg.tolerance)
    elif p["method"] == "asymptotic":
        r = ml_asymptotic(order, p["z"], int(p["num_terms"]))
    else:
        r = ml(order, p["z"], atol=cfg.tolerance, rtol=cfg.tolerance, max_terms=int(p["max_terms"]))
    v = complex(r.value)
    return f"{v.real:.17g} {v.imag:.17g} {r.abs_error_bound:.17g} {r.method.value}\n"


def format_table(header: list[str], rows: np.ndarray, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"columns": header, "rows": rows.tolist()}) + "\n"
    lines = [",".join(header)]
    lines += [",".join(f"{v:.17g}" for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fracschro-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


RUNNERS = {"free": _run_free, "well": _run_well, "green": _run_green,
           "fracderiv": _run_fracderiv}


def run(cfg: RunConfig) -> int:
    """Execute a resolved configuration; returns the process exit code."""
    try:
        if cfg.subcommand == "ml":
            text = _run_ml(cfg)
        else:
            header, rows = RUNNERS[cfg.subcommand](cfg)
            text = format_table(header, rows, cfg.output_format)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("value", "bound", "error"):
            val = getattr(exc, attr, None)
            if val is not None:
                parts = [val.real, val.imag] if isinstance(val, complex) else [float(np.abs(val))]
                parts = [p if math.isfinite(p) else None for p in parts]
                err[attr] = parts if isinstance(val, complex) else parts[0]
        print(json.dumps(err, allow_nan=False), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.output_path:
        write_atomic(cfg.output_path, text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(cfg.resolved, sort_keys=True), file=sys.stderr)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
