"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 self-check failure, 3 I/O error.
"""

import argparse
import sys

from . import checks
from .experiments import (
    ConfigError,
    average_report,
    load_config,
    surface_csv,
    sweep_csv,
    worst_report,
)

EXIT_OK, EXIT_INPUT, EXIT_SELFCHECK, EXIT_IO = 0, 1, 2, 3

_CONFIG_FLAGS = (
    ("n_antennas", int, "number of antennas"),
    ("spacing", float, "element spacing in wavelengths"),
    ("delta_g", float, "gain span, gains in [1-delta_g, 1]"),
    ("alpha_g", float, "phase half-width in cycles"),
    ("delta_p", float, "x-position half-width in wavelengths"),
    ("theta_start_deg", float, "first angle of the grid"),
    ("theta_stop_deg", float, "last angle of the grid (inclusive)"),
    ("theta_step_deg", float, "grid step"),
    ("mc_samples", int, "Monte Carlo realizations per angle"),
    ("pso_particles", int, "swarm size"),
    ("pso_iterations", int, "iterations per restart"),
    ("pso_restarts", int, "independent swarm restarts"),
)


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--config", help="flat YAML file of experiment keys")
    g.add_argument("--seed", type=_u64, help="master seed (unsigned 64-bit)")
    g.add_argument("--out", help="output file (default: stdout)")
    g.add_argument("--threads", type=_positive_int, default=1, help="worker threads")
    c = common.add_argument_group("experiment keys (override the config file)")
    for key, kind, text in _CONFIG_FLAGS:
        c.add_argument("--" + key.replace("_", "-"), dest=key, type=kind, help=text)

    parser = argparse.ArgumentParser(
        prog="impairloss",
        description="Beamforming SNR loss of a ULA under gain, phase and position impairments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="CSV of worst/average loss vs angle")
    p = sub.add_parser("surface", parents=[common], help="CSV of worst-case |S| vs gain and angle")
    p.add_argument("--rho-points", type=_positive_int, default=11, help="gain grid size over [1-delta_g, 1]")
    p.add_argument("--rho", type=float, nargs="+", help="explicit gain values instead of a grid")
    for name, text in (("worst", "worst-case loss report"), ("average", "average loss: closed form vs Monte Carlo")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--theta-deg", type=float, default=0.0, help="direction of departure in degrees")
    sub.add_parser("selfcheck", parents=[common], help="run the oracle checks")
    return parser


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _check_theta(deg):
    if not 0.0 <= deg <= 90.0:
        raise ConfigError(f"--theta-deg must lie in [0, 90], got {deg}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {key: getattr(args, key) for key, _, _ in _CONFIG_FLAGS}
    try:
        cfg = load_config(args.config, seed=args.seed, **overrides)
        if args.command == "sweep":
            text = sweep_csv(cfg, args.threads)
        elif args.command == "surface":
            text = surface_csv(cfg, args.rho, args.rho_points)
        elif args.command == "worst":
            _check_theta(args.theta_deg)
            text = worst_report(cfg, args.theta_deg)
        elif args.command == "average":
            _check_theta(args.theta_deg)
            text = average_report(cfg, args.theta_deg, args.threads)
        else:
            results = checks.run_all(cfg.seed)
            text = "".join(r.line() + "\n" for r in results)
            _emit(text, args.out)
            return EXIT_OK if all(r.passed for r in results) else EXIT_SELFCHECK
        _emit(text, args.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
