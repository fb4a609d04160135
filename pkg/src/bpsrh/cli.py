"""Command-line front end.

Exit status: 0 on success, 1 when the input fails validation, 2 when a
numerical check exceeds its tolerance.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io as _io
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import io as bio
from .errors import BpsError, ParseError, SchemaError
from .formal import factorize, kronecker_wallcross, sector_product, standard_cone
from .gw import gw_degenerate_series
from .lattice import active_rays, classify
from .rh import (
    RhSolution,
    TauEvaluator,
    jump_residual,
    log_phi,
    log_psi,
    log_tau,
    sample_jump_times,
    tau_asymptotic_coeff,
    tau_asymptotic_coeff_exact,
    tau_log_coeff,
)

log = logging.getLogger("bpsrh")

COMMANDS = ("rays", "classify", "wallcross", "kronecker", "solve", "jump-check", "tau", "asymptotics", "gw-series")
EXIT_OK, EXIT_INVALID, EXIT_CHECK = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    format: str = "json"
    truncation: Optional[int] = None
    t_start: float = 1e-2
    t_stop: float = 1.0
    t_steps: int = 20
    ray: Optional[float] = None
    tolerance: Optional[float] = None
    k: Optional[int] = None
    beta: Optional[tuple] = None
    genus_max: int = 5
    height: float = math.inf
    charge: Optional[list] = None
    samples: int = 20
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SchemaError(f"unknown command {self.command!r}")
        if self.truncation is not None and self.truncation < 1:
            raise SchemaError("--truncation must be at least 1")
        if self.format not in ("json", "csv"):
            raise SchemaError("--format must be json or csv")


# ---------------------------------------------------------------------------
# helpers


def _structure(cfg: RunConfig):
    if not cfg.input_path:
        raise SchemaError("--input is required for this command")
    return bio.read_structure(cfg.input_path)


def _csv(header: Sequence[str], rows) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["%.15e" % v if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _t_grid(cfg: RunConfig, direction: complex) -> list:
    if not (cfg.t_start > 0 and cfg.t_stop > 0 and cfg.t_steps >= 1):
        raise SchemaError("t-grid needs positive --t-start, --t-stop and --t-steps")
    mods = np.geomspace(cfg.t_start, cfg.t_stop, cfg.t_steps)
    return [direction * float(m) for m in mods]


def _ray_direction(cfg: RunConfig, s) -> complex:
    if cfg.ray is not None:
        return cmath.exp(1j * cfg.ray)
    # default: a direction halfway between two consecutive active rays
    rays = active_rays(s)
    args = sorted({r.arg for r in rays} | {r.opposite().arg for r in rays})
    if not args:
        return 1.0 + 0j
    gaps = [(b - a, a) for a, b in zip(args, args[1:] + [args[0] + 2 * math.pi])]
    width, start = max(gaps)
    return cmath.exp(1j * (start + width / 2))


def _beta(cfg: RunConfig, n: int) -> tuple:
    if cfg.beta is None:
        return tuple(1 if i == n - 1 else 0 for i in range(n))
    if len(cfg.beta) != n:
        raise SchemaError(f"--beta needs {n} integers")
    return cfg.beta


# ---------------------------------------------------------------------------
# commands


def cmd_rays(cfg):
    s = _structure(cfg)
    rays = active_rays(s, cfg.height)
    if cfg.format == "csv":
        rows = [(r.direction.real, r.direction.imag, r.arg, r.height, " ".join(str(list(g)) for g in r.classes)) for r in rays]
        return _csv(["direction_re", "direction_im", "arg", "height", "classes"], rows), EXIT_OK
    payload = [
        {"direction": r.direction, "arg": r.arg, "height": r.height, "classes": [list(g) for g in r.classes]}
        for r in rays
    ]
    return bio.dumps(payload), EXIT_OK


def cmd_classify(cfg):
    s = _structure(cfg)
    flags = classify(s)
    k1, k2 = s.support_bounds()
    payload = {
        "finite": flags.finite,
        "ray_finite": flags.ray_finite,
        "uncoupled": flags.uncoupled,
        "generic": flags.generic,
        "integral": flags.integral,
        "support_constant": s.support_constant,
        "k1": k1,
        "k2": k2,
    }
    if cfg.format == "csv":
        return _csv(list(payload), [list(payload.values())]), EXIT_OK
    return bio.dumps(payload), EXIT_OK


def _omega_output(cfg, table):
    if cfg.format == "csv":
        return _csv(["gamma", "omega"], [(" ".join(map(str, g)), bio.format_rational(v)) for g, v in table.items()])
    return bio.dumps(bio.omega_table_json(table))


def cmd_wallcross(cfg):
    s = _structure(cfg)
    N = cfg.truncation or 6
    cone = standard_cone(s)
    first = cfg.ray if cfg.ray is not None else math.pi
    sector = (cmath.exp(1j * first), cmath.exp(1j * (first - math.pi)))
    target = sector_product(s, sector, N, cone)
    charge = cfg.charge if cfg.charge is not None else (s.exact_charge or s.central_charge)
    result = factorize(target, charge, N)
    table = dict(sorted(result.omega_table().items(), key=lambda kv: (sum(map(abs, kv[0])), kv[0])))
    return _omega_output(cfg, table), EXIT_OK


def cmd_kronecker(cfg):
    if cfg.k is None:
        raise SchemaError("--k is required")
    table = kronecker_wallcross(cfg.k, cfg.truncation or 6)
    return _omega_output(cfg, table), EXIT_OK


def cmd_solve(cfg):
    s = _structure(cfg)
    sol = RhSolution(s)
    r = _ray_direction(cfg, s)
    beta = _beta(cfg, s.rank)
    rows = []
    for t in _t_grid(cfg, r):
        psi = cmath.exp(log_psi(sol, r, beta, t))
        phi = cmath.exp(log_phi(sol, r, beta, t))
        rows.append((t.real, t.imag, psi.real, psi.imag, phi.real, phi.imag))
    header = ["t_re", "t_im", "psi_re", "psi_im", "phi_re", "phi_im"]
    if cfg.format == "csv":
        return _csv(header, rows), EXIT_OK
    return bio.dumps({"ray": r, "beta": list(beta), "rows": [dict(zip(header, row)) for row in rows]}), EXIT_OK


def cmd_jump_check(cfg):
    s = _structure(cfg)
    sol = RhSolution(s)
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-10
    rng = np.random.default_rng(cfg.seed)
    n = s.rank
    betas = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    report = []
    worst = 0.0
    for ray in active_rays(s):
        ts = sample_jump_times(s, ray, cfg.samples, rng)
        res = max(jump_residual(sol, ray, b, t) for b in betas for t in ts)
        worst = max(worst, res)
        report.append({"direction": ray.direction, "classes": [list(g) for g in ray.classes], "max_residual": res})
    status = EXIT_OK if worst < tol else EXIT_CHECK
    payload = {"rays": report, "max_residual": worst, "tolerance": tol, "passed": status == EXIT_OK}
    if cfg.format == "csv":
        rows = [(r["direction"].real, r["direction"].imag, r["max_residual"]) for r in report]
        return _csv(["direction_re", "direction_im", "max_residual"], rows), status
    return bio.dumps(payload), status


def cmd_tau(cfg):
    s = _structure(cfg)
    r = _ray_direction(cfg, s)
    te = TauEvaluator(s, r)
    rows = []
    for t in _t_grid(cfg, r):
        tau = cmath.exp(log_tau(te, None, t))
        rows.append((t.real, t.imag, tau.real, tau.imag))
    header = ["t_re", "t_im", "tau_re", "tau_im"]
    if cfg.format == "csv":
        return _csv(header, rows), EXIT_OK
    return bio.dumps({"ray": r, "rows": [dict(zip(header, row)) for row in rows]}), EXIT_OK


def cmd_asymptotics(cfg):
    s = _structure(cfg)
    RhSolution(s)
    out = {"log_coefficient": tau_log_coeff(s), "coefficients": []}
    for g in range(2, cfg.genus_max + 1):
        entry = {"genus": g, "value": tau_asymptotic_coeff(s, g)}
        exact = tau_asymptotic_coeff_exact(s, g)
        if exact is not None:
            entry["exact"] = [exact[0], exact[1]]
        out["coefficients"].append(entry)
    if cfg.format == "csv":
        rows = [(c["genus"], c["value"].real, c["value"].imag) for c in out["coefficients"]]
        return _csv(["genus", "re", "im"], rows), EXIT_OK
    return bio.dumps(out), EXIT_OK


def cmd_gw_series(cfg):
    if not cfg.input_path:
        raise SchemaError("--input is required for this command")
    chi, table = bio.gv_from_dict(bio.loads(open(cfg.input_path).read(), cfg.input_path), cfg.input_path)
    coeffs = gw_degenerate_series(chi, table, cfg.genus_max)
    if cfg.format == "csv":
        rows = [(c.genus, bio.format_rational(c.constant_maps), c.total.real, c.total.imag) for c in coeffs]
        return _csv(["genus", "constant_maps", "total_re", "total_im"], rows), EXIT_OK
    payload = [{"genus": c.genus, "constant_maps": c.constant_maps, "total": c.total} for c in coeffs]
    return bio.dumps(payload), EXIT_OK


HANDLERS = {
    "rays": cmd_rays,
    "classify": cmd_classify,
    "wallcross": cmd_wallcross,
    "kronecker": cmd_kronecker,
    "solve": cmd_solve,
    "jump-check": cmd_jump_check,
    "tau": cmd_tau,
    "asymptotics": cmd_asymptotics,
    "gw-series": cmd_gw_series,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, artifact text)."""
    try:
        text, status = HANDLERS[cfg.command](cfg)
    except (ParseError, SchemaError) as exc:
        return EXIT_INVALID, f"{type(exc).__name__}: {exc}\n"
    except BpsError as exc:
        return EXIT_INVALID, f"{type(exc).__name__}: {exc}\n"
    except ValueError as exc:
        return EXIT_INVALID, f"{type(exc).__name__}: {exc}\n"
    except ArithmeticError as exc:
        return EXIT_CHECK, f"{type(exc).__name__}: {exc}\n"
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    return status, text


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def _charge_list(text: str) -> list:
    out = []
    for part in text.split(";"):
        re, im = part.split(",")
        out.append(complex(float(re), float(im)))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpsrh", description="BPS structures, wall-crossing and RH solutions")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path")
    common.add_argument("--output", dest="output_path")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--truncation", type=int)
    common.add_argument("--t-start", type=float, default=1e-2)
    common.add_argument("--t-stop", type=float, default=1.0)
    common.add_argument("--t-steps", type=int, default=20)
    common.add_argument("--ray", type=float, help="ray argument in radians")
    common.add_argument("--tolerance", type=float)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "kronecker":
            p.add_argument("--k", type=int, required=True)
        if name in ("solve",):
            p.add_argument("--beta", type=_int_list)
        if name in ("asymptotics", "gw-series"):
            p.add_argument("--genus-max", type=int, default=5)
        if name == "rays":
            p.add_argument("--height", type=float, default=math.inf)
        if name == "wallcross":
            p.add_argument("--charge", type=_charge_list, help="target central charge 're,im;re,im;...'")
        if name == "jump-check":
            p.add_argument("--samples", type=int, default=20)
            p.add_argument("--seed", type=int, default=0)
    return parser


def _configure_logging():
    level = os.environ.get("BPSRH_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    try:
        cfg = RunConfig(**opts)
    except SchemaError as exc:
        sys.stderr.write(f"SchemaError: {exc}\n")
        return EXIT_INVALID
    log.info("running %s", cfg.command)
    status, text = run(cfg)
    if status == EXIT_INVALID:
        sys.stderr.write(text)
    elif not cfg.output_path:
        sys.stdout.write(text)
    return status
