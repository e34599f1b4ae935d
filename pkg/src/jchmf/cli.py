"""Command-line interface: spectrum | bath | boundary | evolve | restore | gutzwiller.

Flags take precedence over an optional key=value config file (--config);
config keys mirror the long flag names with underscores. Exit codes:
0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import sys
from pathlib import Path

from . import sweep
from .errors import (BadDiscretization, BracketInvalid,
                     DissipativeNotSupported, NeverCritical, NoConvergence,
                     NonzeroDetuning, NotConverged, NotNormalized,
                     NotSymmetric, OutsideLobe, WindowTooShort, ZeroGamma,
                     ZeroHopping)

SUBCOMMANDS = ("spectrum", "bath", "boundary", "evolve", "restore", "gutzwiller")

_CONFIG_ERRORS = (ValueError, NonzeroDetuning, ZeroHopping, OutsideLobe,
                  ZeroGamma, NeverCritical, BadDiscretization,
                  DissipativeNotSupported, BracketInvalid, OSError)
_NUMERICAL_ERRORS = (NotConverged, NoConvergence, WindowTooShort,
                     NotNormalized, NotSymmetric)

_FIELD_TYPES = {
    "omega_c": float, "delta": float, "gamma_a": float, "gamma_c": float,
    "mu_tilde": float, "zkappa": float, "z": int, "n_max": int, "t": float,
    "t_max": float, "t_steps": int, "mu_points": int, "mu_min": float,
    "mu_max": float, "zkappa_max": float, "zkappa_points": int,
    "n_levels": int, "gamma_target": float, "n_modes": int,
    "half_bandwidth": float, "out": str, "jobs": int, "plot": bool,
    "oracle": bool,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jchmf",
        description="Phase-diagram and decay-validation sweeps for lossy "
                    "coupled-cavity arrays (all rates in units of the "
                    "atom-cavity coupling beta).")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    descriptions = {
        "spectrum": "dressed levels: columns n, e_minus, e_plus, splitting, "
                    "complex level parts, total_decay, commutator_defect",
        "bath": "discretized-bath survival amplitude: columns t, re_ec, "
                "im_ec, abs2_ec; prints the fitted decay rate",
        "boundary": "localized-lobe boundary trace: columns mu_tilde, "
                    "in_lobe, zkappa_c_perturbative[, zkappa_c_numeric]",
        "evolve": "quench time series: columns zkappa, gamma, t, psi, "
                  "dn_total, dn_leak, chi",
        "restore": "psi versus hopping at fixed times: columns gamma, t, "
                   "zkappa, psi",
        "gutzwiller": "numerical self-consistent solves over a hopping "
                      "grid: columns zkappa, psi, energy, n_mean, n_dev, "
                      "iterations, converged",
    }
    for name in SUBCOMMANDS:
        sub = subparsers.add_parser(name, help=descriptions[name],
                                    description=descriptions[name])
        sub.add_argument("--gamma-a", type=float, help="atomic decay rate")
        sub.add_argument("--gamma-c", type=float, help="cavity decay rate")
        sub.add_argument("--mu-tilde", type=float,
                         help="scaled chemical potential (default: lobe tip)")
        sub.add_argument("--zkappa", type=float, help="scaled hopping z*kappa")
        sub.add_argument("--z", type=int, help="nearest-neighbor count")
        sub.add_argument("--delta", type=float, help="detuning omega_c - omega_a")
        sub.add_argument("--omega-c", type=float, help="cavity frequency")
        sub.add_argument("--n-max", type=int, help="photon cutoff of the solver")
        sub.add_argument("--t-max", type=float, help="end of the time grid")
        sub.add_argument("--t-steps", type=int, help="time grid sample count")
        sub.add_argument("--t", type=float, help="evaluation time (boundary)")
        sub.add_argument("--mu-points", type=int, help="mu_tilde grid count")
        sub.add_argument("--mu-min", type=float, help="mu_tilde grid start")
        sub.add_argument("--mu-max", type=float, help="mu_tilde grid end")
        sub.add_argument("--zkappa-max", type=float, help="hopping grid end")
        sub.add_argument("--zkappa-points", type=int, help="hopping grid count")
        sub.add_argument("--n-levels", type=int, help="spectrum level count")
        sub.add_argument("--gamma-target", type=float, help="bath target rate")
        sub.add_argument("--n-modes", type=int, help="bath mode count")
        sub.add_argument("--half-bandwidth", type=float, help="bath half band")
        sub.add_argument("--out", type=str, help="output CSV path")
        sub.add_argument("--config", type=str, help="key=value config file")
        sub.add_argument("--jobs", type=int, help="parallel worker cap")
        sub.add_argument("--plot", action="store_true", default=None,
                         help="emit a sidecar plot script next to the CSV")
        sub.add_argument("--oracle", action="store_true", default=None,
                         help="add the numerical boundary column (forces gamma=0)")
    return parser


def _parse_config_file(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if key not in _FIELD_TYPES:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        caster = _FIELD_TYPES[key]
        if caster is bool:
            if text.lower() in ("1", "true", "yes", "on"):
                values[key] = True
            elif text.lower() in ("0", "false", "no", "off"):
                values[key] = False
            else:
                raise ValueError(f"{path}:{lineno}: bad boolean {text!r}")
        else:
            values[key] = caster(text)
    return values


def _build_config(args: argparse.Namespace) -> sweep.RunConfig:
    effective = {}
    if args.config:
        effective.update(_parse_config_file(args.config))
    for key in _FIELD_TYPES:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            effective[key] = flag_value
    effective.setdefault("plot", False)
    effective.setdefault("oracle", False)
    return sweep.RunConfig(subcommand=args.subcommand, **effective)


_DISPATCH = {
    "spectrum": sweep.cmd_spectrum,
    "bath": sweep.cmd_bath,
    "boundary": sweep.cmd_boundary,
    "evolve": sweep.cmd_evolve,
    "restore": sweep.cmd_restore,
    "gutzwiller": sweep.cmd_gutzwiller,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        table = _DISPATCH[args.subcommand](config)
        out_path = Path(config.out if config.out else f"{args.subcommand}.csv")
        sweep.write_csv(table, out_path)
        print(f"wrote {out_path} ({len(table.rows)} rows)")
        if config.plot:
            script_path = out_path.with_name(out_path.stem + "_plot.py")
            sweep.write_plot_script(table, out_path.name, script_path)
            print(f"wrote {script_path}")
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except _CONFIG_ERRORS as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
