"""Command-line front end: config ingestion, command dispatch, CSV/TSV
emission and human-readable summaries.

Exit codes: 0 success, 1 configuration or regime error, 2 numerical failure.
Output files are deterministic: identical configuration produces identical
bytes. Floats are printed with 18 significant digits so every emitted table
reparses to the exact values that produced it.
"""

import argparse
import math
import sys
from dataclasses import dataclass

from dipolewell import eigensolver, model, oracles
from dipolewell._backend import backend_name
from dipolewell.spectrum import (
    X0_THRESHOLD_DEFAULT,
    cutoff_scan,
    smallx_zero_deviation,
    spectrum as analytic_levels,
)
from dipolewell.errors import (
    AccuracyError,
    ConfigError,
    DegenerateSolutionError,
    DipoleWellError,
    GammaPoleError,
)

SCHEMA_VERSION = 1

CONFIG_KEYS = {
    "m": float,
    "alpha": float,
    "rho0": float,
    "r0": float,
    "ell": int,
    "nmax": int,
    "window_lo": float,
    "window_hi": float,
    "rmax_mult": float,
    "steps": int,
    "x0_threshold": float,
    "out": str,
    "format": str,
}
REQUIRED_KEYS = ("m", "alpha", "rho0", "r0", "ell")
COMMANDS = (
    "potential",
    "field",
    "spectrum",
    "solve",
    "compare",
    "wavefunction",
    "cutoff-scan",
    "selfcheck",
)
PROFILE_INTERVALS = 500
CUTOFF_HALVINGS = 20


@dataclass(frozen=True)
class RunConfig:
    params: model.SystemParams
    n_max: int
    energy_window: tuple[float, float] | None
    rmax_mult: float
    steps: int
    x0_threshold: float
    out: str | None
    fmt: str


def _parse_scalar(key: str, raw: str, lineno: int | None = None):
    where = f" (line {lineno})" if lineno is not None else ""
    typ = CONFIG_KEYS[key]
    if typ is str:
        return raw
    if typ is int:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"key '{key}' needs an integer, got '{raw}'{where}") from None
    try:
        val = float(raw)
    except ValueError:
        raise ConfigError(f"key '{key}' needs a number, got '{raw}'{where}") from None
    if not math.isfinite(val):
        raise ConfigError(f"key '{key}' must be finite, got '{raw}'{where}")
    return val


def parse_config(text: str, overrides: dict | None = None) -> RunConfig:
    """Parse flat 'key = value' configuration text ('#' comments, UTF-8) and
    apply flag overrides on top. Unknown keys are rejected; the keys m,
    alpha, rho0, r0 and ell are required."""
    values: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"malformed line {lineno}: '{raw_line}' (expected key = value)")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown key '{key}' on line {lineno}")
        values[key] = _parse_scalar(key, raw, lineno)
    for key, val in (overrides or {}).items():
        if val is not None:
            values[key] = val
    missing = [k for k in REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    if ("window_lo" in values) != ("window_hi" in values):
        raise ConfigError("window_lo and window_hi must be given together")
    window = None
    if "window_lo" in values:
        window = (values["window_lo"], values["window_hi"])
    n_max = values.get("nmax", 5)
    steps = values.get("steps", 4000)
    fmt = values.get("format", "csv")
    if n_max < 1:
        raise ConfigError(f"nmax must be >= 1, got {n_max}")
    if steps < 1000:
        raise ConfigError(f"steps must be >= 1000, got {steps}")
    if fmt not in ("csv", "tsv"):
        raise ConfigError(f"format must be csv or tsv, got '{fmt}'")
    try:
        params = model.SystemParams(
            m=values["m"],
            alpha=values["alpha"],
            rho0=values["rho0"],
            r0=values["r0"],
            ell=values["ell"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        params=params,
        n_max=n_max,
        energy_window=window,
        rmax_mult=values.get("rmax_mult", 1.0),
        steps=steps,
        x0_threshold=values.get("x0_threshold", X0_THRESHOLD_DEFAULT),
        out=values.get("out"),
        fmt=fmt,
    )


def _f(x) -> str:
    return "" if x is None else f"{x:.17e}"


def _b(x: bool) -> str:
    return "true" if x else "false"


class _Table:
    def __init__(self, schema: str, columns: list[str], sep: str):
        self.lines = [
            f"# dipolewell {schema} v{SCHEMA_VERSION}",
            "# " + sep.join(columns),
        ]
        self.sep = sep

    def row(self, *cells):
        self.lines.append(self.sep.join(str(c) for c in cells))

    def render(self) -> str:
        return "\n".join(self.lines) + "\n"


def _write(cfg: RunConfig, content: str) -> None:
    if cfg.out is None or cfg.out == "-":
        sys.stdout.write(content)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(content)


def _sep(cfg: RunConfig) -> str:
    return "\t" if cfg.fmt == "tsv" else ","


def _window(cfg: RunConfig) -> tuple[float, float]:
    if cfg.energy_window is not None:
        return cfg.energy_window
    return eigensolver.default_window(cfg.params)


def _cmd_profile(cfg: RunConfig, kind: str) -> int:
    fn = model.potential_energy if kind == "potential" else model.electric_field
    r0 = cfg.params.r0
    r_hi = 10.0 * cfg.rmax_mult * r0
    table = _Table(kind, ["r", "value"], _sep(cfg))
    for i in range(PROFILE_INTERVALS + 1):
        r = r0 + (r_hi - r0) * i / PROFILE_INTERVALS
        table.row(_f(r), _f(fn(cfg.params, r)))
    _write(cfg, table.render())
    return 0


def _cmd_spectrum(cfg: RunConfig) -> int:
    levels = analytic_levels(cfg.params, cfg.n_max, cfg.x0_threshold)
    table = _Table(
        "spectrum",
        ["n", "ell", "energy", "bracket", "x0", "tau_positive", "x0_small"],
        _sep(cfg),
    )
    for lv in levels:
        table.row(
            lv.n, lv.ell, _f(lv.energy), _f(lv.bracket), _f(lv.x0),
            _b(lv.tau_positive), _b(lv.x0_small),
        )
    _write(cfg, table.render())
    return 0


def _cmd_solve(cfg: RunConfig) -> int:
    window = _window(cfg)
    wroots = eigensolver.wroot_eigenvalues(cfg.params, window, max_count=cfg.n_max + 8)
    shoots = eigensolver.shooting_eigenvalues(
        cfg.params, window, max_count=cfg.n_max + 8,
        steps=cfg.steps, rmax_mult=cfg.rmax_mult,
    )
    table = _Table("solve", ["k", "e_wroot", "e_shoot", "node_count"], _sep(cfg))
    for k in range(max(len(wroots), len(shoots))):
        e_w = wroots[k] if k < len(wroots) else None
        sol = shoots[k] if k < len(shoots) else None
        table.row(k, _f(e_w), _f(sol.energy if sol else None),
                  sol.node_count if sol else "")
    _write(cfg, table.render())
    if cfg.out and cfg.out != "-":
        stem, dot, ext = cfg.out.rpartition(".")
        for k, sol in enumerate(shoots):
            wf = _Table("wavefunction", ["r", "value"], _sep(cfg))
            for r, v in zip(sol.grid, sol.values):
                wf.row(_f(float(r)), _f(float(v)))
            path = f"{stem}_wf{k}.{ext}" if dot else f"{cfg.out}_wf{k}"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(wf.render())
    if not wroots and not shoots:
        print(f"no bound states found in window ({window[0]:.6g}, {window[1]:.6g})")
    else:
        print(f"found {len(wroots)} wall-condition and {len(shoots)} shooting roots")
    return 0


def _cmd_compare(cfg: RunConfig) -> int:
    window = _window(cfg)
    report = eigensolver.compare(
        cfg.params, cfg.n_max, window, steps=cfg.steps, rmax_mult=cfg.rmax_mult
    )
    table = _Table(
        "compare",
        ["n", "ell", "E_analytic", "E_wroot", "E_shoot", "rel_dev_ws", "rel_dev_aw", "flags"],
        _sep(cfg),
    )
    for row in report.rows:
        table.row(
            "" if row.n is None else row.n, row.ell, _f(row.e_analytic),
            _f(row.e_wroot), _f(row.e_shoot), _f(row.rel_dev_ws),
            _f(row.rel_dev_aw), row.flags,
        )
    _write(cfg, table.render())
    print(report.summary.text())
    return 0


def _cmd_wavefunction(cfg: RunConfig) -> int:
    window = _window(cfg)
    energy = 0.5 * (window[0] + window[1])
    tau = model.energy_tau(cfg.params, energy).tau
    r_max = eigensolver.default_r_max(cfg.params, tau, cfg.rmax_mult)
    steps = eigensolver._scan_steps(cfg.params, r_max, cfg.steps)
    sol = eigensolver.shoot(cfg.params, energy, r_max=r_max, steps=steps)
    table = _Table("wavefunction", ["r", "value"], _sep(cfg))
    for r, v in zip(sol.grid, sol.values):
        table.row(_f(float(r)), _f(float(v)))
    _write(cfg, table.render())
    print(
        f"profile at window midpoint energy {energy:.6g}; "
        f"wall mismatch {sol.mismatch():.6g} (mantissa scale)"
    )
    return 0


def _cmd_cutoff_scan(cfg: RunConfig) -> int:
    frozen = model.derived(cfg.params)
    walls = [cfg.params.r0 * 2.0**-k for k in range(CUTOFF_HALVINGS + 1)]
    points = cutoff_scan(frozen, cfg.params.m, walls)
    table = _Table(
        "cutoff-scan", ["r_wall", "energy", "bracket", "tau_positive"], _sep(cfg)
    )
    for p in points:
        table.row(_f(p.r_wall), _f(p.energy), _f(p.bracket), _b(p.tau_positive))
    _write(cfg, table.render())
    return 0


def _cmd_selfcheck(cfg: RunConfig) -> int:
    report = eigensolver.integrator_selfcheck()
    lines = [f"kernel backend: {backend_name()}", report.text()]
    g_rec = oracles.gamma_recurrence_error()
    g_ref = oracles.gamma_reflection_error()
    k_dev = oracles.bessel_identity_error()
    lines.append(f"gamma recurrence max error: {g_rec:.3e} (threshold 1e-11)")
    lines.append(f"gamma reflection max error: {g_ref:.3e} (threshold 1e-11)")
    lines.append(f"Whittaker/Bessel-K identity max deviation: {k_dev:.3e} (threshold 1e-8)")
    handoffs = oracles.route_consistency()
    worst = max(h.rel_deviation for h in handoffs)
    lines.append(f"evaluation-route hand-off max deviation: {worst:.3e} (threshold 1e-8)")
    lines.append("small-argument zero-location deviation along the physical path:")
    lines.append("  x0_scale      kappa        zero_smallx   zero_whittaker  rel_dev")
    for row in smallx_zero_deviation(cfg.params):
        lines.append(
            f"  {row.x0_scale:<12.6g} {row.kappa:<12.6g} {row.zero_smallx:<13.6g} "
            f"{row.zero_whittaker:<15.6g} {row.rel_deviation:.6g}"
        )
    ok = (
        report.passed
        and g_rec <= 1e-11
        and g_ref <= 1e-11
        and k_dev <= 1e-8
        and worst <= 1e-8
    )
    lines.append("selfcheck: " + ("pass" if ok else "FAIL"))
    print("\n".join(lines))
    return 0 if ok else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--config", help="configuration file (flat key = value lines)")
    shared.add_argument("--m", type=float, help="particle mass (natural units)")
    shared.add_argument("--alpha", type=float, help="atomic polarizability")
    shared.add_argument("--rho0", type=float, help="charge-density scale")
    shared.add_argument("--r0", type=float, help="inner (hard-wall) cylinder radius")
    shared.add_argument("--ell", type=int, help="angular momentum quantum number")
    shared.add_argument("--nmax", type=int, help="number of radial levels (default 5)")
    shared.add_argument("--window-lo", type=float, dest="window_lo",
                        help="energy window lower edge (default derived)")
    shared.add_argument("--window-hi", type=float, dest="window_hi",
                        help="energy window upper edge, must be < -v_inf")
    shared.add_argument("--rmax-mult", type=float, dest="rmax_mult",
                        help="outer-radius multiplier: tau (r_max - r0) = 25 * mult; "
                             "profiles span [r0, 10 mult r0] (default 1.0)")
    shared.add_argument("--steps", type=int, help="ODE integration steps (default 4000)")
    shared.add_argument("--x0-threshold", type=float, dest="x0_threshold",
                        help="wall-argument threshold for the x0_small flag (default 0.1)")
    shared.add_argument("--out", help="output file path (default stdout)")
    shared.add_argument("--format", choices=("csv", "tsv"), help="table format (default csv)")

    parser = _Parser(
        prog="dipolewell",
        description="Bound-state analysis of the induced-dipole inverse-square "
        "well inside a charged cylinder.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "potential": "emit the induced-dipole potential profile (r, value)",
        "field": "emit the electric-field profile (r, value)",
        "spectrum": "emit closed-form levels with validity flags",
        "solve": "run both numerical eigensolvers in the energy window",
        "compare": "closed-form vs numerical levels, with adjudication summary",
        "wavefunction": "emit the radial profile at the window midpoint energy",
        "cutoff-scan": "ground level vs halved wall radius (fall to the center)",
        "selfcheck": "integrator and special-function identity suites",
    }
    for cmd in COMMANDS:
        sub.add_parser(cmd, parents=[shared], help=descriptions[cmd])
    return parser


_DISPATCH = {
    "potential": lambda cfg: _cmd_profile(cfg, "potential"),
    "field": lambda cfg: _cmd_profile(cfg, "field"),
    "spectrum": _cmd_spectrum,
    "solve": _cmd_solve,
    "compare": _cmd_compare,
    "wavefunction": _cmd_wavefunction,
    "cutoff-scan": _cmd_cutoff_scan,
    "selfcheck": _cmd_selfcheck,
}


def main(argv=None) -> int:
    command = "?"
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        text = ""
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}") from None
        overrides = {
            key: getattr(args, key) for key in CONFIG_KEYS if getattr(args, key, None) is not None
        }
        cfg = parse_config(text, overrides)
        return _DISPATCH[command](cfg)
    except (AccuracyError, GammaPoleError, DegenerateSolutionError) as exc:
        print(f"numerical failure [{command}]: {exc}", file=sys.stderr)
        return 2
    except (DipoleWellError, ValueError) as exc:
        print(f"error [{command}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
