# GDCli.py
"""Command-line entry point: sweeps, thresholds, windows and cross-checks."""

import argparse
import cmath
import configparser
import logging
import math
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from .GDChannels import ChannelFamily
from .GDConfig import Config
from .GDCriticality import (
    asymptotic_esd_limit, bound_entanglement_window, closed_form_critical,
    epsilon_probability, esd_probability_numeric
)
from .GDErrors import DomainError, GHZDecayError, NoESDError, VerificationError
from .GDSeparability import verify_full_separability
from .GDSettings import SweepConfig, get_preset, parse_complex, parse_k
from .GDSettingsManager import SettingsFileManager
from .GDSweepRunner import SweepRunner, oracle_diff

logger = logging.getLogger("GHZDecay.Cli")

METADATA_FILE = os.path.join(os.path.dirname(__file__), "metadata.txt")

SWEEP_FIELDS = ["p", "k", "lambda_min", "negativity"]

_SIMULTANEOUS = (ChannelFamily.AD, ChannelFamily.GAD)


def get_version() -> str:
    parser = configparser.ConfigParser()
    try:
        parser.read(METADATA_FILE)
        return parser.get("general", "version")
    except configparser.Error:
        return "unknown"


def _k_argument(text: str):
    try:
        return parse_k(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e))


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    channel = common.add_argument_group("channel")
    channel.add_argument("--family", choices=[f.value for f in ChannelFamily],
                         help="Noise acting on every qubit. Default: ad.")
    channel.add_argument("--nbar", type=float, help="Mean bath excitation (gad only). Default: 0.")
    channel.add_argument("--rate", type=float,
                         help="gamma for ad/gad, Gamma for diffusive, rate for depolarizing/dephasing.")

    state = common.add_argument_group("state")
    state.add_argument("--n", type=int, nargs="+", help="Qubit count(s). Default: 4.")
    state.add_argument("--alpha-sq", type=float, help="|alpha|^2; beta follows from normalization.")
    state.add_argument("--alpha-phase", type=float, default=0.0, help="Phase of alpha in radians.")
    state.add_argument("--beta-phase", type=float, default=0.0, help="Phase of beta in radians.")
    state.add_argument("--alpha", help="alpha as 're,im' (requires --beta).")
    state.add_argument("--beta", help="beta as 're,im' (requires --alpha).")
    state.add_argument("--renormalize", action="store_true", default=None,
                       help="Rescale alpha, beta onto the unit sphere instead of rejecting them.")

    grid = common.add_argument_group("grid")
    grid.add_argument("--k", type=_k_argument, help="Cuts: 'all', 'balanced' or '1,2'. Default: all.")
    grid.add_argument("--p-start", type=float, help="First grid value. Default: 0.")
    grid.add_argument("--p-stop", type=float, help="Last grid value. Default: 1.")
    grid.add_argument("--p-count", type=int, help="Number of grid points (>= 2). Default: 101.")
    grid.add_argument("--time", dest="time_axis", action="store_true", default=None,
                      help="Read --p-start/--p-stop as times and convert them with --rate.")
    grid.add_argument("--epsilon", type=float, help="Relative decay threshold in (0, 1). Default: 0.01.")

    output = common.add_argument_group("output")
    output.add_argument("--format", dest="output_format", choices=["csv", "json"], help="Default: csv.")
    output.add_argument("--out", help="Output file. Default: stdout.")
    output.add_argument("--jobs", type=int, help="Worker threads for grid points. Default: 1.")
    output.add_argument("--figure", choices=["1", "2"], help="Start from a figure preset.")
    output.add_argument("--config", help="JSON file with SweepConfig fields; flags override it.")
    output.add_argument("--verbose", action="store_true", help="Log at INFO level.")
    output.add_argument("--debug", action="store_true", help="Log at DEBUG level.")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzdecay",
        description=(
            "Exact negativity dynamics of generalized GHZ states under independent "
            "local noise: sweeps, sudden-death thresholds, bound-entanglement windows "
            "and dense cross-checks."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    sub.add_parser("sweep", parents=[common], help="Lambda_k and negativity over a p grid.")
    sub.add_parser("critical", parents=[common], help="Sudden-death probability per cut.")
    sub.add_parser("epsilon", parents=[common], help="p where the balanced cut decays to epsilon.")
    sub.add_parser("window", parents=[common], help="Bound-entanglement window.")
    sub.add_parser("verify-appendix", parents=[common],
                   help="Full-separability certificate for amplitude damping at p_c.")
    sub.add_parser("oracle-diff", parents=[common],
                   help="Closed form against the dense brute-force oracle.")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    if args.debug:
        Config.set_log_level(logging.DEBUG)
    elif args.verbose:
        Config.set_log_level(logging.INFO)
    logging.basicConfig(
        level=Config.LOG_LEVEL,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        stream=sys.stderr,
    )


def _rate_override(family: str, rate: Optional[float]) -> Dict[str, float]:
    if rate is None:
        return {}
    if family in (ChannelFamily.AD.value, ChannelFamily.GAD.value):
        return {"gamma": rate}
    if family == ChannelFamily.DIFFUSIVE.value:
        return {"Gamma": rate}
    return {"rate": rate}


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    """Preset, then JSON file, then explicit flags"""
    config = get_preset(args.figure) if args.figure else SweepConfig()
    if args.config:
        config = SweepConfig.from_dict(SettingsFileManager.load_settings(args.config), config)
    overrides: Dict[str, Any] = {
        "family": args.family,
        "nbar": args.nbar,
        "n": tuple(args.n) if args.n else None,
        "k": args.k,
        "p_start": args.p_start,
        "p_stop": args.p_stop,
        "p_count": args.p_count,
        "time_axis": args.time_axis,
        "epsilon": args.epsilon,
        "output_format": args.output_format,
        "out": args.out,
        "jobs": args.jobs,
        "renormalize": args.renormalize,
    }
    if args.alpha_sq is not None:
        if not 0.0 <= args.alpha_sq <= 1.0:
            raise DomainError(f"--alpha-sq must lie in [0, 1], got {args.alpha_sq}")
        overrides["alpha"] = cmath.rect(math.sqrt(args.alpha_sq), args.alpha_phase)
        overrides["beta"] = cmath.rect(math.sqrt(1.0 - args.alpha_sq), args.beta_phase)
    if (args.alpha is None) != (args.beta is None):
        raise DomainError("--alpha and --beta must be given together")
    if args.alpha is not None:
        overrides["alpha"] = parse_complex(args.alpha)
        overrides["beta"] = parse_complex(args.beta)
    config = config.with_overrides(**overrides)
    return config.with_overrides(**_rate_override(config.family, args.rate))


def _emit(config: SweepConfig, rows: List[Dict[str, Any]], fieldnames: Sequence[str]) -> None:
    SettingsFileManager.write_rows(rows, fieldnames, config.output_format, config.out)


def cmd_sweep(config: SweepConfig) -> int:
    rows = SweepRunner(config.jobs).sweep(config)
    fields = list(SWEEP_FIELDS)
    if config.time_axis:
        fields.insert(1, "t")
    if len(config.n) > 1:
        fields.insert(0, "n")
    _emit(config, rows, fields)
    return 0


def cmd_critical(config: SweepConfig) -> int:
    channel = config.channel()
    try:
        asymptotic = asymptotic_esd_limit(channel)
    except (NoESDError, DomainError) as e:
        logger.info(f"no asymptotic limit: {e}")
        asymptotic = None
    rows = []
    for n in config.n:
        params = config.params(n)
        closed = closed_form_critical(channel, params)
        for k in config.k_values(n):
            numeric = esd_probability_numeric(channel, params, k)
            # amplitude damping kills every cut at once; the other closed forms are balanced-cut only
            closed_value = None
            if closed is not None and (closed.k == k or channel.family in _SIMULTANEOUS):
                closed_value = closed.p_c
            rows.append({
                'n': n, 'k': k, 'p_c': numeric.p_c, 'method': numeric.method.value,
                'closed_form': closed_value, 'asymptotic': asymptotic,
                'status': "esd" if numeric.has_esd else "no ESD",
            })
    _emit(config, rows, ["n", "k", "p_c", "method", "closed_form", "asymptotic", "status"])
    return 0


def cmd_epsilon(config: SweepConfig) -> int:
    channel = config.channel()
    rows = []
    for n in config.n:
        result = epsilon_probability(channel, config.params(n), config.epsilon).to_dict()
        result['n'] = result.pop('N')
        rows.append(result)
    _emit(config, rows, ["n", "k", "epsilon", "p_eps", "p_eps_leading", "p_eps_approx",
                         "N_p_eps", "N_p_eps_approx"])
    return 0


def cmd_window(config: SweepConfig) -> int:
    channel = config.channel()
    rows = []
    for n in config.n:
        window = bound_entanglement_window(channel, config.params(n)).to_dict()
        window['n'] = n
        rows.append(window)
    _emit(config, rows, ["n", "p_start", "p_end", "nonempty", "reason", "warnings"])
    return 0


def cmd_verify_appendix(config: SweepConfig) -> int:
    rows = []
    for n in config.n:
        rows.append(verify_full_separability(config.params(n)).to_dict())
    _emit(config, rows, ["N", "p_c", "scale", "expected_scale", "reconstruction_residual",
                         "sigma_ppt_ok", "delta", "degenerate", "valid"])
    failed = [row['N'] for row in rows if not row['valid']]
    if failed:
        raise VerificationError(f"certificate failed for N={failed}")
    return 0


def cmd_oracle_diff(config: SweepConfig) -> int:
    runner = SweepRunner(config.jobs)
    diffs = [oracle_diff(config, n, runner) for n in config.n]
    _emit(config, [diff.to_dict() for diff in diffs],
          ["n", "max_lambda_diff", "max_negativity_diff", "max_negative_count", "points", "ok"])
    failed = [diff.n for diff in diffs if not diff.ok]
    if failed:
        raise VerificationError(f"oracle disagreement above {Config.ORACLE_DIFF_TOL} for N={failed}")
    return 0


COMMANDS: Dict[str, Callable[[SweepConfig], int]] = {
    "sweep": cmd_sweep,
    "critical": cmd_critical,
    "epsilon": cmd_epsilon,
    "window": cmd_window,
    "verify-appendix": cmd_verify_appendix,
    "oracle-diff": cmd_oracle_diff,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        config = config_from_args(args).validate()
        return COMMANDS[args.command](config)
    except NoESDError as e:
        print(f"no ESD: {e}")
        return e.exit_code
    except GHZDecayError as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
