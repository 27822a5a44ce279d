#!/usr/bin/env python3
"""
BCS Spin Entanglement command line

This script evaluates the spin-partitioned BCS ground-state quantities and
writes them as CSV or JSON tables.

Commands:
- spectrum        entanglement spectrum on a grid, with the canonical overlay
- beta-eff        effective reciprocal temperatures on a grid
- entropy         shell entropy integral against the area law
- fluctuations    number variances, entropy ratio and MEP
- scan            entropy and fluctuation reports over (delta, debye) lists
- oracle-check    exact small-system checks of every closed form

Usage:
  python -m bcs_spin_entanglement.main spectrum --delta 1 --debye 10 --mu 100 --grid -5:5:101
  python -m bcs_spin_entanglement.main scan --deltas 0.5,1,2 --debye-ratios 1e4 --format json

Exit codes: 0 success, 1 oracle check failure, 2 usage error, 3 numerical failure.
"""

import argparse
import logging
import math
import sys
from dataclasses import asdict, dataclass
from multiprocessing import Pool

from .amplitudes import ModelParams, orbital_variance, spectrum_grid
from .dos_models import evaluate
from .errors import (
    CapacityError,
    GridError,
    NumericalError,
    ParameterDomainError,
    QuadratureError,
)
from .grid_utils import build_grid, parse_grid_spec, parse_number_list, resolve_output_path
from .io_operations import FORMATS, parse_dos_selector, render_table, write_table
from .observables import (
    entropy_area_law,
    entropy_integral,
    mep_from_entropy,
    observables_report,
    variance_closed_form,
    variance_integral,
)
from .oracle import run_oracle_checks
from .thermal import beta_eff, canonical_temperatures, fermi_occupation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

COMMAND_NAMES = ("spectrum", "beta-eff", "entropy", "fluctuations", "scan", "oracle-check")

# options whose values may legitimately start with "-"
_SIGNED_OPTIONS = ("--grid",)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one command-line run."""

    command: str
    delta: float
    debye: float
    mu: float
    dos: str
    grid_min: float
    grid_max: float
    grid_points: int
    spacing: str
    format: str
    output: object
    tolerance: float
    seed: int
    deltas: tuple
    debyes: tuple
    debye_ratios: tuple
    workers: int
    max_modes: int
    trials: int
    oracle_tolerance: float

    def echo(self):
        """Configuration block written into JSON output."""
        echoed = asdict(self)
        # neither changes the numbers
        echoed.pop("output")
        echoed.pop("workers")
        return {key: list(value) if isinstance(value, tuple) else value
                for key, value in echoed.items()}


def build_parser():
    """Create the argument parser with one sub-command per report."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--delta", type=float, default=1.0, help="pairing energy (default 1)")
    common.add_argument("--debye", type=float, default=10.0, help="Debye energy (default 10)")
    common.add_argument("--mu", type=float, default=100.0, help="Fermi energy (default 100)")
    common.add_argument("--dos", default="constant:1",
                        help="constant:G0, power-law-3d[:SCALE] or table:PATH")
    common.add_argument("--grid", default="-5:5:101", help="energy grid MIN:MAX:POINTS")
    common.add_argument("--log-symmetric", action="store_true",
                        help="sign-symmetric log grid over |xi| in [MIN, MAX]")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--output", default=None,
                        help="output file (default stdout); relative paths honor "
                             "BCS_SPIN_EE_OUTPUT_DIR")
    common.add_argument("--tolerance", type=float, default=1e-10,
                        help="absolute quadrature tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed of the oracle trials")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="bcs-spin-ee",
        description="Spin entanglement of the BCS ground state")
    commands = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "beta-eff", "entropy", "fluctuations"):
        commands.add_parser(name, parents=[common])

    scan = commands.add_parser("scan", parents=[common])
    scan.add_argument("--deltas", default=None, help="comma-separated pairing energies")
    shell = scan.add_mutually_exclusive_group()
    shell.add_argument("--debyes", default=None, help="comma-separated Debye energies")
    shell.add_argument("--debye-ratios", default=None,
                       help="comma-separated debye/delta ratios")
    scan.add_argument("--workers", type=int, default=1,
                      help="parallel worker processes")

    oracle = commands.add_parser("oracle-check", parents=[common],
                                 help="always writes a JSON verdict")
    oracle.add_argument("--max-modes", type=int, default=6)
    oracle.add_argument("--trials", type=int, default=20)
    oracle.add_argument("--oracle-tolerance", type=float, default=1e-12)
    return parser


def _attach_signed_values(argv):
    """Rewrite ``--grid -5:5:101`` as ``--grid=-5:5:101`` for argparse."""
    joined = []
    items = list(argv)
    index = 0
    while index < len(items):
        item = items[index]
        if item in _SIGNED_OPTIONS and index + 1 < len(items):
            joined.append(f"{item}={items[index + 1]}")
            index += 2
            continue
        joined.append(item)
        index += 1
    return joined


def build_config(args):
    """
    Validate parsed arguments into a RunConfig.

    Args:
        args (argparse.Namespace): Parsed command line

    Returns:
        tuple: (RunConfig, error_message)
    """
    grid, error = parse_grid_spec(args.grid)
    if error:
        return None, error
    lists = {}
    for name in ("deltas", "debyes", "debye_ratios"):
        text = getattr(args, name, None)
        if text is None:
            lists[name] = ()
            continue
        values, error = parse_number_list(text, allow_zero=(name == "deltas"))
        if error:
            return None, error
        lists[name] = tuple(values)
    if not (args.tolerance > 0):
        return None, f"Error: --tolerance must be > 0, got {args.tolerance}"
    oracle_tolerance = getattr(args, "oracle_tolerance", 1e-12)
    if not oracle_tolerance >= 0:
        return None, f"Error: --oracle-tolerance must be >= 0, got {oracle_tolerance}"
    workers = getattr(args, "workers", 1)
    if workers < 1:
        return None, f"Error: --workers must be >= 1, got {workers}"
    config = RunConfig(
        command=args.command,
        delta=args.delta,
        debye=args.debye,
        mu=args.mu,
        dos=args.dos,
        grid_min=grid[0],
        grid_max=grid[1],
        grid_points=grid[2],
        spacing="log-symmetric" if args.log_symmetric else "linear",
        format=args.format,
        output=args.output,
        tolerance=args.tolerance,
        seed=args.seed,
        deltas=lists["deltas"],
        debyes=lists["debyes"],
        debye_ratios=lists["debye_ratios"],
        workers=workers,
        max_modes=getattr(args, "max_modes", 6),
        trials=getattr(args, "trials", 20),
        oracle_tolerance=oracle_tolerance,
    )
    return config, None


def _params(config):
    return ModelParams(config.delta, config.debye, config.mu)


def _grid(config):
    return build_grid(config.grid_min, config.grid_max, config.grid_points, config.spacing)


def cmd_spectrum(config, dos):
    """Spectrum rows with the canonical Fermi overlay (nan when delta = 0)."""
    params = _params(config)
    points = spectrum_grid(_grid(config), params)
    beta0 = canonical_temperatures(params.delta).beta_eff_0 if params.delta > 0 else None
    rows = []
    for point in points:
        fermi = fermi_occupation(point.xi, beta0) if beta0 else math.nan
        rows.append({
            "xi": point.xi,
            "u2": point.u2,
            "v2": point.v2,
            "entropy": point.entropy,
            "beta_eff": point.beta_eff,
            "variance": orbital_variance(point.xi, params),
            "fermi_canonical": fermi,
            "residual": point.v2 - fermi,
        })
    columns = ["xi", "u2", "v2", "entropy", "beta_eff", "variance",
               "fermi_canonical", "residual"]
    return columns, rows, {}


def cmd_beta_eff(config, dos):
    """GGE reciprocal temperature on the grid with the canonical constants."""
    params = _params(config)
    temperatures = canonical_temperatures(params.delta)
    xi = _grid(config)
    beta = beta_eff(xi, params.delta)
    rows = [{
        "xi": float(x),
        "beta_eff": float(b),
        "beta_eff_delta": float(b) * params.delta,
        "beta_eff_0": temperatures.beta_eff_0,
        "beta_c": temperatures.beta_c,
        "relative_gap": temperatures.relative_gap,
    } for x, b in zip(xi, beta)]
    columns = ["xi", "beta_eff", "beta_eff_delta", "beta_eff_0", "beta_c", "relative_gap"]
    return columns, rows, {}


def cmd_entropy(config, dos):
    """Shell entropy integral against pi g(0) delta."""
    params = _params(config)
    result = entropy_integral(dos, params, tolerance=config.tolerance)
    g0 = evaluate(dos, 0.0)
    area_law = entropy_area_law(g0, params.delta)
    row = {
        "delta": params.delta,
        "debye": params.debye,
        "mu": params.mu,
        "g0": g0,
        "S_integral": result.value,
        "S_area_law": area_law,
        "relative_gap": abs(result.value - area_law) / area_law if area_law else math.nan,
        "error_estimate": result.error_estimate,
        "evaluations": result.evaluations,
        "area_law_regime": params.in_area_law_regime,
    }
    return list(row), [row], {}


def cmd_fluctuations(config, dos):
    """Number variances, entropy / variance ratio and MEP."""
    params = _params(config)
    entropy = entropy_integral(dos, params, tolerance=config.tolerance)
    variance = variance_integral(dos, params, tolerance=config.tolerance)
    closed = variance_closed_form(dos.g0, params) if dos.is_constant else math.nan
    row = {
        "delta": params.delta,
        "debye": params.debye,
        "mu": params.mu,
        "sigma_up_sq": variance.sigma_up_sq,
        "sigma_total_sq": variance.sigma_total_sq,
        "sigma_up_sq_closed_form": closed,
        "S_integral": entropy.value,
        "entropy_ratio": (entropy.value / variance.sigma_total_sq
                          if variance.sigma_total_sq else math.nan),
        "mep": mep_from_entropy(entropy.value),
    }
    return list(row), [row], {}


SCAN_COLUMNS = ["delta", "debye", "mu", "S_integral", "S_area_law", "relative_gap",
                "error_estimate", "sigma_up_sq", "sigma_total_sq", "entropy_ratio", "mep"]


def scan_point(task):
    """
    Evaluate one scan row; a top-level function so worker processes can run it.

    Args:
        task (tuple): (delta, debye, mu, dos, tolerance)

    Returns:
        dict: Row keyed by SCAN_COLUMNS
    """
    delta, debye, mu, dos, tolerance = task
    params = ModelParams(delta, debye, mu)
    report = observables_report(dos, params, tolerance=tolerance)
    logger.info("Scanned delta=%g debye=%g", delta, debye)
    return {
        "delta": delta,
        "debye": debye,
        "mu": mu,
        "S_integral": report.entropy_total,
        "S_area_law": report.entropy_area_law,
        "relative_gap": report.relative_gap,
        "error_estimate": report.quadrature_error_estimate,
        "sigma_up_sq": report.variance_up,
        "sigma_total_sq": report.variance_total,
        "entropy_ratio": report.entropy_ratio,
        "mep": report.mep,
    }


def cmd_scan(config, dos):
    """Long-format table over the (delta, debye) lists, delta-major order."""
    deltas = config.deltas or (config.delta,)
    tasks = []
    for delta in deltas:
        if config.debye_ratios:
            debyes = [ratio * delta for ratio in config.debye_ratios]
        else:
            debyes = config.debyes or (config.debye,)
        tasks.extend((delta, debye, config.mu, dos, config.tolerance) for debye in debyes)
    if not tasks:
        raise GridError("Scan grid is empty")
    # validate every point before spending time on any of them
    for delta, debye, mu, _, _ in tasks:
        ModelParams(delta, debye, mu)
        dos.require_domain(-debye, debye)
    if config.workers > 1:
        with Pool(processes=config.workers) as pool:
            rows = pool.map(scan_point, tasks)
    else:
        rows = [scan_point(task) for task in tasks]
    return SCAN_COLUMNS, rows, {}


def cmd_oracle_check(config, dos):
    """Exact-oracle invariants; the verdict goes into the JSON document."""
    verdict = run_oracle_checks(_params(config), seed=config.seed,
                                max_modes=config.max_modes, trials=config.trials,
                                tolerance=config.oracle_tolerance)
    rows = [asdict(check) for check in verdict.checks]
    extra = {
        "passed": verdict.passed,
        "failures": sorted({check.invariant for check in verdict.failures}),
    }
    columns = ["invariant", "n_modes", "worst", "tolerance", "passed"]
    return columns, rows, extra


COMMANDS = {
    "spectrum": cmd_spectrum,
    "beta-eff": cmd_beta_eff,
    "entropy": cmd_entropy,
    "fluctuations": cmd_fluctuations,
    "scan": cmd_scan,
    "oracle-check": cmd_oracle_check,
}


def configure_logging(verbosity):
    """WARNING by default, INFO with -v, DEBUG with -vv; always to stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def run(config):
    """
    Execute a validated configuration.

    Returns:
        int: Process exit code
    """
    output, error = resolve_output_path(config.output)
    if error:
        print(error, file=sys.stderr)
        return EXIT_USAGE
    dos, error = parse_dos_selector(config.dos, config.mu)
    if error:
        print(error, file=sys.stderr)
        return EXIT_USAGE

    columns, rows, extra = COMMANDS[config.command](config, dos)
    fmt = "json" if config.command == "oracle-check" else config.format
    text = render_table(rows, columns, fmt, config=config.echo(), extra=extra)
    write_table(text, output, sys.stdout)
    if output:
        print(f"Done! Wrote {len(rows)} rows to {output}", file=sys.stderr)

    if extra.get("passed") is False:
        print(f"Error: oracle checks failed: {', '.join(extra['failures'])}",
              file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv=None):
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(_attach_signed_values(argv))
    configure_logging(args.verbose)

    config, error = build_config(args)
    if error:
        print(error, file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(config)
    except QuadratureError as exc:
        print(f"Error: {exc} (partial result {exc.partial_result!r}, "
              f"error estimate {exc.error_estimate!r})", file=sys.stderr)
        return EXIT_NUMERICAL
    except NumericalError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParameterDomainError, GridError, CapacityError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
