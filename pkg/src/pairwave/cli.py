"""Batch front-end: tables and comparison reports as CSV or JSON lines.

Exit codes: 0 clean, 1 configuration or infeasible-trap error, 2 partial
numerical failures (flagged rows).  Identical configuration produces
byte-identical output (no wall-clock content unless --timestamp is given;
grid points are evaluated by a worker pool but always written in grid
order).
"""
import argparse
import concurrent.futures as cf
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, homogeneous, poles, trap
from .errors import ConfigError, InfeasibleTrapError, PairwaveError
from .homogeneous import GasParams, InitialData, ScaledPoint

_FL = "{:.17g}"


def _fmt(x):
    if isinstance(x, float):
        return _FL.format(x)
    return str(x)


def _csv_field(x):
    s = _fmt(x)
    if any(c in s for c in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


@dataclass
class RunConfig:
    """Validated run configuration shared by all subcommands."""
    gas: GasParams
    tol: float = 1e-6
    contour_angle: float = 0.1
    region_thresh: float = asymptotics.DEFAULT_REGION_THRESH
    threads: int = 1
    fmt: str = "csv"
    out: str = "-"
    timestamp: bool = False
    command_args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tol <= 0 or self.contour_angle <= 0 or self.region_thresh <= 0:
            raise ConfigError("tolerances and thresholds must be positive")
        if self.fmt not in ("csv", "jsonl"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")


def _validate_grid(name, values):
    vals = [float(v) for v in values]
    if not vals:
        raise ConfigError(f"grid {name!r} is empty")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ConfigError(f"grid {name!r} must be strictly increasing")
    return vals


def _parse_float_list(text):
    return [float(tok) for tok in text.split(",") if tok.strip()]


class TableWriter:
    """Buffers rows and emits them in deterministic grid order."""

    def __init__(self, cfg, meta, columns):
        self.cfg = cfg
        self.meta = dict(meta)
        if cfg.timestamp:
            import datetime
            self.meta["generated_at"] = datetime.datetime.now(
                datetime.timezone.utc).isoformat()
        self.columns = columns
        self.rows = []

    def add(self, row):
        self.rows.append(row)

    def render(self):
        buf = io.StringIO()
        if self.cfg.fmt == "csv":
            for key, val in self.meta.items():
                buf.write(f"# {key}: {val}\n")
            buf.write(",".join(self.columns) + "\n")
            for row in self.rows:
                buf.write(",".join(_csv_field(row.get(c, "")) for c in
                                   self.columns) + "\n")
        else:
            buf.write(json.dumps({"meta": self.meta}, sort_keys=True) + "\n")
            for row in self.rows:
                out = {c: row.get(c, None) for c in self.columns}
                buf.write(json.dumps(out, sort_keys=True,
                                     default=_fmt) + "\n")
        return buf.getvalue()

    def write(self):
        text = self.render()
        if self.cfg.out == "-":
            sys.stdout.write(text)
        else:
            with open(self.cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)


def _pool_map(cfg, fn, items):
    if cfg.threads == 1:
        return [fn(it) for it in items]
    with cf.ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(fn, items))


def cmd_lambda_table(cfg):
    args = cfg.command_args
    r_grid = _validate_grid("r_tilde", args["r_tilde"])
    tau_grid = _validate_grid("tau", args["tau"])
    points = [(rt, tau) for tau in tau_grid for rt in r_grid]

    def one(point):
        rt, tau = point
        pt = ScaledPoint(rt, tau)
        row = {"r_tilde": rt, "tau": tau, "status": "ok"}
        row["region_profile"] = asymptotics.region_profile(
            pt, cfg.region_thresh)
        try:
            la = asymptotics.lambda_asymptotic(pt, c_thresh=cfg.region_thresh)
            lo = homogeneous.lambda_oracle(pt, contour_angle=cfg.contour_angle,
                                           tol=cfg.tol)
            row["lambda_asymptotic"] = la
            row["lambda_oracle"] = lo
            row["rel_error"] = abs(la - lo) / abs(lo) if lo != 0 else \
                float("inf")
        except PairwaveError as exc:
            row["status"] = f"failed: {type(exc).__name__}"
        return row

    rows = _pool_map(cfg, one, points)
    writer = TableWriter(cfg, {
        "table": "lambda", "units": "hbar = 2m = 1, nondimensional (r~, tau)",
        "tol": _fmt(cfg.tol), "contour_angle": _fmt(cfg.contour_angle),
        "region_thresh": _fmt(cfg.region_thresh),
    }, ["r_tilde", "tau", "lambda_asymptotic", "lambda_oracle", "rel_error",
        "region_profile", "status"])
    for row in rows:
        writer.add(row)
    writer.write()
    return 2 if any(r["status"] != "ok" for r in rows) else 0


def cmd_steady(cfg):
    args = cfg.command_args
    r_grid = _validate_grid("r", args["r"])
    if any(r <= 0 for r in r_grid):
        raise ConfigError("steady-state grid must have r > 0")

    def one(r):
        row = {"r": r, "status": "ok"}
        try:
            lom = homogeneous.steady_g0_r(r, cfg.gas)
            quad = homogeneous.g0_quadrature(r, cfg.gas)
            row["g0_lommel"] = lom
            row["g0_quadrature"] = quad
            row["rel_gap"] = abs(lom - quad) / abs(quad) if quad != 0 else \
                float("inf")
        except PairwaveError as exc:
            row["status"] = f"failed: {type(exc).__name__}"
        return row

    rows = _pool_map(cfg, one, r_grid)
    writer = TableWriter(cfg, {
        "table": "steady", "units": "hbar = 2m = 1",
        "coupling_g": _fmt(cfg.gas.g),
    }, ["r", "g0_lommel", "g0_quadrature", "rel_gap", "status"])
    for row in rows:
        writer.add(row)
    writer.write()
    return 2 if any(r["status"] != "ok" for r in rows) else 0


def cmd_poles(cfg):
    args = cfg.command_args
    t = float(args["t"])
    m_min, m_max = int(args["m_min"]), int(args["m_max"])
    if not t > 0:
        raise ConfigError("poles need t > 0")
    if m_min > m_max:
        raise ConfigError("m range is empty")
    m_values = [m for m in range(m_min, m_max + 1) if m != 0]
    if not m_values:
        raise ConfigError("m range contains only m = 0")

    records, failed = poles.find_poles(t, m_values)
    by_m = {rec.m: rec for rec in records}
    writer = TableWriter(cfg, {
        "table": "poles", "units": "16 pi a rho0 = 1", "t": _fmt(t),
    }, ["m", "eta_est_re", "eta_est_im", "eta_re", "eta_im", "k_re", "k_im",
        "residual", "quadrant", "status"])
    for m in m_values:
        est = poles.pole_estimate(m, t)
        row = {"m": m, "eta_est_re": est.real, "eta_est_im": est.imag}
        rec = by_m.get(m)
        if rec is None:
            row.update({"status": "failed: no convergence"})
        else:
            row.update({"eta_re": rec.eta.real, "eta_im": rec.eta.imag,
                        "k_re": rec.k.real, "k_im": rec.k.imag,
                        "residual": rec.residual, "quadrant": rec.quadrant,
                        "status": "ok"})
        writer.add(row)
    writer.write()
    return 2 if failed else 0


def _build_trap(cfg):
    args = cfg.command_args
    kind = args.get("trap_kind", "quadratic")
    volume = float(args.get("volume", 30000.0))
    if kind == "constant":
        model = trap.constant_trap(float(args.get("v0", 0.0)), volume, cfg.gas)
    elif kind == "quadratic":
        model = trap.quadratic_trap(float(args.get("epsilon", 0.2)), volume,
                                    cfg.gas)
    else:
        raise ConfigError(f"unknown trap kind {kind!r}")
    return model


def cmd_trap_profile(cfg):
    args = cfg.command_args
    model = _build_trap(cfg)
    solution = trap.solve_tf(model, tol=min(cfg.tol, 1e-10))
    r_grid = _validate_grid("R", args["R"]) if args.get("R") else \
        list(np.linspace(0.0, trap._radius_of_ball(model.omega_volume), 25))

    g = cfg.gas.g
    rows = []
    for R in r_grid:
        phi0 = solution.phi0(R)
        rows.append({
            "R": float(R), "phi0": phi0,
            "in_region": solution.region.contains(R),
            "r_tilde_scale": math.sqrt(g * phi0 * phi0),
            "tau_scale": g * phi0 * phi0,
        })
    writer = TableWriter(cfg, {
        "table": "trap-profile", "units": "hbar = 2m = 1",
        "E": _fmt(solution.energy), "zeta": _fmt(solution.zeta),
        "zeta_e": _fmt(solution.zeta_e),
        "threshold": _fmt(solution.threshold),
        "norm_residual": _fmt(solution.norm_residual),
    }, ["R", "phi0", "in_region", "r_tilde_scale", "tau_scale",
        "r", "t", "lambda_slow", "status"])
    for row in rows:
        writer.add(row)

    lam_r = args.get("lambda_r") or []
    lam_t = args.get("lambda_t") or []
    status = 0
    if lam_r and lam_t:
        for R in r_grid:
            for r in lam_r:
                for t in lam_t:
                    row = {"R": float(R), "r": float(r), "t": float(t)}
                    if not solution.region.contains(R):
                        row["in_region"] = False
                        row["status"] = "outside region"
                    else:
                        try:
                            row["lambda_slow"] = trap.lambda_slow(
                                R, float(r), float(t), solution,
                                c_thresh=cfg.region_thresh)
                            row["in_region"] = True
                            row["status"] = "ok"
                        except PairwaveError as exc:
                            row["status"] = f"failed: {type(exc).__name__}"
                            status = 2
                    writer.add(row)
    writer.write()
    return status


def cmd_self_check(cfg):
    """Fast invariant battery; prints one PASS/FAIL line per check."""
    checks = []
    gas = cfg.gas

    def check(name, fn):
        try:
            ok = bool(fn())
            msg = ""
        except Exception as exc:  # a crash is a failure, not an abort
            ok, msg = False, f" ({type(exc).__name__}: {exc})"
        checks.append(ok)
        print(f"[{'PASS' if ok else 'FAIL'}] {name}{msg}")

    ks = [0.0, 0.3, 1.0, 3.0, 10.0]
    check("g0hat in [-1, 0) and monotone",
          lambda: all(-1 <= homogeneous.g0_hat(k, gas) < 0 for k in ks)
          and all(homogeneous.g0_hat(a, gas) < homogeneous.g0_hat(b, gas)
                  for a, b in zip(ks, ks[1:])))
    check("omega identity (g0 - 1/g0) g/4 = omega",
          lambda: all(abs((homogeneous.g0_hat(k, gas)
                           - 1 / homogeneous.g0_hat(k, gas)) * gas.g / 4
                          - homogeneous.omega(k, gas)) < 1e-12 * (1 + k ** 3)
                      for k in ks[1:]))
    check("closed form vs Riccati oracle at (k=1, t=5)",
          lambda: abs(homogeneous.khat_exact(1.0, 5.0, InitialData.zero(), gas)
                      - homogeneous.riccati_numeric(1.0, 5.0,
                                                    0.0, gas, tol=1e-11))
          < 1e-8)
    check("steady Lommel vs quadrature at r=1",
          lambda: abs(homogeneous.steady_g0_r(1.0, gas)
                      - homogeneous.g0_quadrature(1.0, gas))
          < 1e-3 * abs(homogeneous.g0_quadrature(1.0, gas)))

    def _small_r():
        pt = ScaledPoint(1.0, 100.0)
        la = asymptotics.lambda_asymptotic(pt, c_thresh=cfg.region_thresh)
        return abs(la * 100.0 ** 4 - math.pi ** 2 / 120) \
            < 0.02 * math.pi ** 2 / 120

    check("small-r law tau^4 Lambda ~ pi^2/120 at tau=100", _small_r)

    def _poles_ok():
        recs, failed = poles.find_poles(10.0, [m for m in range(-5, 6)
                                               if m != 0])
        return not failed and all(r.residual < 1e-10
                                  and r.quadrant in ("I", "III")
                                  for r in recs)

    check("poles: residual < 1e-10, quadrants I/III (t=10)", _poles_ok)

    def _const_trap():
        model = trap.constant_trap(0.0, 50.0, gas)
        sol = trap.solve_tf(model)
        return abs(sol.phi0(1.0) - 1.0) < 1e-12 and sol.norm_residual < 1e-10

    check("constant trap reproduces phi0 = 1", _const_trap)

    from .specfun import lommel_modified_identities
    check("modified Lommel identities residual < 1e-10 (z = 1, 10)",
          lambda: all(abs(res) < 1e-10
                      for z in (1.0, 10.0)
                      for res in lommel_modified_identities(z)))
    print(f"{sum(checks)}/{len(checks)} checks passed")
    return 0 if all(checks) else 2


def _load_config_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _gas_from(doc):
    gas = doc.get("gas", {})
    if "coupling" in gas:
        return GasParams.from_coupling(float(gas["coupling"]))
    if "a" in gas and "rho0" in gas:
        return GasParams(a=float(gas["a"]), rho0=float(gas["rho0"]))
    if gas:
        raise ConfigError("gas section needs either 'coupling' or 'a'+'rho0'")
    return GasParams.from_coupling(1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pairwave",
        description="Pair-excitation kernel tables for a dilute Bose gas "
                    "(units hbar = 2m = 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--out", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "jsonl"), dest="fmt")
        p.add_argument("--tol", type=float)
        p.add_argument("--contour-angle", type=float, dest="contour_angle")
        p.add_argument("--region-thresh", type=float, dest="region_thresh")
        p.add_argument("--threads", type=int)
        p.add_argument("--coupling", type=float,
                       help="gas coupling g = 16 pi a rho0")
        p.add_argument("--timestamp", action="store_true", default=None,
                       help="include a generation timestamp in the metadata")

    p = sub.add_parser("lambda-table",
                       help="asymptotic vs oracle deviation kernel table")
    add_shared(p)
    p.add_argument("--r-tilde", help="comma list of scaled separations")
    p.add_argument("--tau", help="comma list of scaled times")

    p = sub.add_parser("steady", help="steady-state kernel with cross-check")
    add_shared(p)
    p.add_argument("--r", help="comma list of separations (r > 0)")

    p = sub.add_parser("poles", help="propagator poles (16 pi a rho0 = 1)")
    add_shared(p)
    p.add_argument("--t", type=float)
    p.add_argument("--m-min", type=int, dest="m_min")
    p.add_argument("--m-max", type=int, dest="m_max")

    p = sub.add_parser("trap-profile",
                       help="Thomas-Fermi profile and local scalings")
    add_shared(p)
    p.add_argument("--trap", choices=("constant", "quadratic"),
                   dest="trap_kind")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--v0", type=float)
    p.add_argument("--volume", type=float)
    p.add_argument("--R", help="comma list of center-of-mass radii")
    p.add_argument("--lambda-r", dest="lambda_r",
                   help="comma list of separations for deviation rows")
    p.add_argument("--lambda-t", dest="lambda_t",
                   help="comma list of times for deviation rows")

    p = sub.add_parser("self-check", help="run the fast invariant battery")
    add_shared(p)
    return parser


_DEFAULT_GRIDS = {
    "lambda-table": {"r_tilde": [1.0], "tau": [100.0]},
    "steady": {"r": [0.5, 1.0, 2.0, 3.0, 5.0]},
    "poles": {"t": 10.0, "m_min": -8, "m_max": 8},
}


def _assemble_config(args):
    doc = _load_config_file(args.config) if args.config else {}
    if getattr(args, "coupling", None) is not None:
        doc["gas"] = {"coupling": args.coupling}
    gas = _gas_from(doc)

    def pick(flag, key, default):
        v = getattr(args, flag, None)
        if v is not None:
            return v
        return doc.get(key, default)

    threads_default = int(os.environ.get("PAIRWAVE_THREADS", "1"))
    cmd_args = dict(_DEFAULT_GRIDS.get(args.command, {}))
    cmd_args.update(doc.get(args.command.replace("-", "_"), {}))

    # per-command flag overrides (an explicitly empty list is a config error)
    if args.command == "lambda-table":
        if args.r_tilde is not None:
            cmd_args["r_tilde"] = _parse_float_list(args.r_tilde)
        if args.tau is not None:
            cmd_args["tau"] = _parse_float_list(args.tau)
    elif args.command == "steady":
        if args.r is not None:
            cmd_args["r"] = _parse_float_list(args.r)
    elif args.command == "poles":
        for key in ("t", "m_min", "m_max"):
            v = getattr(args, key, None)
            if v is not None:
                cmd_args[key] = v
    elif args.command == "trap-profile":
        for key in ("trap_kind", "epsilon", "v0", "volume"):
            v = getattr(args, key, None)
            if v is not None:
                cmd_args[key] = v
        if args.R is not None:
            cmd_args["R"] = _parse_float_list(args.R)
        if args.lambda_r is not None:
            cmd_args["lambda_r"] = _parse_float_list(args.lambda_r)
        if args.lambda_t is not None:
            cmd_args["lambda_t"] = _parse_float_list(args.lambda_t)

    return RunConfig(
        gas=gas,
        tol=float(pick("tol", "tol", 1e-6)),
        contour_angle=float(pick("contour_angle", "contour_angle", 0.1)),
        region_thresh=float(pick("region_thresh", "region_thresh",
                                 asymptotics.DEFAULT_REGION_THRESH)),
        threads=int(pick("threads", "threads", threads_default)),
        fmt=pick("fmt", "format", "csv"),
        out=pick("out", "out", "-"),
        timestamp=bool(pick("timestamp", "timestamp", False)),
        command_args=cmd_args,
    )


_COMMANDS = {
    "lambda-table": cmd_lambda_table,
    "steady": cmd_steady,
    "poles": cmd_poles,
    "trap-profile": cmd_trap_profile,
    "self-check": cmd_self_check,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _assemble_config(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, InfeasibleTrapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
