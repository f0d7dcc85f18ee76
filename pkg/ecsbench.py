#!/usr/bin/env python3
"""
ecs-bench - equivalence class sorting experiments

Runs parallel (cr, er, er-constant) and sequential (round-robin)
equivalence class sorting over seeded random instances or against the
lower-bound adversary, and writes comparisons and rounds per run.

EXAMPLES:
  python ecsbench.py --algo round-robin --dist geometric --param p=1/10
  python ecsbench.py --algo round-robin --dist zeta --param s=2 --n-grid 1000:20000:1000 --trials 10 --seed 7 --out z.csv
  python ecsbench.py --algo er-constant --dist uniform --param k=3 --n-grid 1000,10000,100000 --trials 5
  python ecsbench.py --algo cr --adversary f=4 --n-grid 64,128,256 --trials 1
"""

import argparse
import sys
import traceback
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from bench import (
    ALGORITHMS, ExperimentConfig, fit_groups, round_floor, run_experiment, write_results
)
from bench.results import FORMATS, resolve_format
from distributions import parse_distribution
from utils.config import load_settings
from utils.errors import ConfigError, ECSError
from utils.logger import Logger


# Desk-scale grids: the published grids divided by ten
DEFAULT_GRID = (1000, 20000, 1000)
DEFAULT_ZETA_GRID = (100, 2000, 100)
FULL_SCALE = 10
DEFAULT_TRIALS = 10


def parse_param(text: str) -> Tuple[str, Fraction]:
    """'p=1/10' -> ('p', Fraction(1, 10))"""
    key, sep, value = text.partition("=")
    key = key.strip().lower()
    if not sep or not key or not value.strip():
        raise ConfigError(f"--param expects key=value, got {text!r}")
    try:
        return key, Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--param {key} needs a number or fraction, got {value!r}")


def parse_params(items: Sequence[str]) -> Dict[str, Fraction]:
    params: Dict[str, Fraction] = {}
    for item in items or ():
        key, value = parse_param(item)
        if key in params:
            raise ConfigError(f"--param {key} given twice")
        params[key] = value
    return params


def parse_grid(text: str) -> Tuple[int, ...]:
    """
    'a:b:step' (inclusive) or 'n1,n2,...'; must be strictly increasing

    Examples:
        >>> parse_grid("1000:3000:1000")
        (1000, 2000, 3000)
        >>> parse_grid("64,128")
        (64, 128)
    """
    try:
        if ":" in text:
            parts = [int(part) for part in text.split(":")]
            if len(parts) != 3:
                raise ConfigError(f"--n-grid range needs a:b:step, got {text!r}")
            start, stop, step = parts
            if step < 1:
                raise ConfigError(f"--n-grid step must be >= 1, got {step}")
            grid = tuple(range(start, stop + 1, step))
        else:
            grid = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"--n-grid values must be integers, got {text!r}")
    if not grid:
        raise ConfigError(f"--n-grid {text!r} is empty")
    if any(n < 1 for n in grid):
        raise ConfigError(f"--n-grid values must be >= 1, got {text!r}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError(f"--n-grid must be strictly increasing, got {text!r}")
    return grid


def parse_adversary(text: str) -> Tuple[str, int]:
    key, value = parse_param(text)
    if key not in ("f", "ell") or value.denominator != 1:
        raise ConfigError(f"--adversary expects f=<int> or ell=<int>, got {text!r}")
    return key, int(value)


def default_grid(dist_name: Optional[str], full_scale: bool) -> Tuple[int, ...]:
    start, stop, step = DEFAULT_ZETA_GRID if dist_name == "zeta" else DEFAULT_GRID
    scale = FULL_SCALE if full_scale else 1
    return tuple(range(start * scale, stop * scale + 1, step * scale))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsbench.py",
        description="Equivalence class sorting experiments (comparisons and rounds per run).",
    )
    parser.add_argument("--algo", required=True, choices=ALGORITHMS, help="Sorting algorithm")
    parser.add_argument("--dist", help="Class distribution: uniform, geometric, poisson or zeta")
    parser.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="Distribution parameter (k, p, lambda or s); fractions like 1/10 allowed")
    parser.add_argument("--n-grid", help="Sizes as a:b:step or a comma list (default: desk-scale grid)")
    parser.add_argument("--full-scale", action="store_true", help="Use the full published grid by default")
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="Trials per size")
    parser.add_argument("--seed", type=int, help="Base seed (default: ECS_DEFAULT_SEED)")
    parser.add_argument("--out", help="Output file, written as given (default: ECS_OUTPUT_DIR/<algo>_<dist>.<format>)")
    parser.add_argument("--format", choices=FORMATS, help="Output format (default: from --out suffix, else csv)")
    parser.add_argument("--no-prune", action="store_true", help="Do not skip tests whose answer is already known")
    parser.add_argument("--override-d", type=int, help="Fixed cycle count for er-constant")
    parser.add_argument("--k-hint", type=int, help="Upper bound on the class count for cr / er")
    parser.add_argument("--adversary", metavar="f=INT|ell=INT", help="Answer tests adversarially instead")
    parser.add_argument("--workers", type=int, help="Worker processes (default: ECS_WORKERS)")
    parser.add_argument("--timing", action="store_true", help="Record wall_seconds (breaks byte-identical reruns)")
    parser.add_argument("--quiet", action="store_true", help="Only print warnings and errors")
    return parser


def build_config(args: argparse.Namespace, settings) -> ExperimentConfig:
    adversary = parse_adversary(args.adversary) if args.adversary else None
    distribution = None
    if adversary is None:
        if not args.dist:
            raise ConfigError("--dist is required unless --adversary is given")
        distribution = parse_distribution(args.dist, parse_params(args.param))
    elif args.dist or args.param:
        raise ConfigError("--dist/--param cannot be combined with --adversary")

    if args.n_grid:
        grid = parse_grid(args.n_grid)
    else:
        grid = default_grid(distribution.name if distribution else None, args.full_scale)

    return ExperimentConfig(
        algorithm=args.algo,
        distribution=distribution,
        n_grid=grid,
        trials=args.trials,
        base_seed=settings.default_seed if args.seed is None else args.seed,
        prune=not args.no_prune,
        override_d=args.override_d,
        k_hint=args.k_hint,
        adversary=adversary,
        timing=args.timing,
        workers=settings.workers if args.workers is None else args.workers,
        max_comparisons=settings.max_comparisons,
    )


def output_path(args: argparse.Namespace, config: ExperimentConfig, settings) -> Path:
    if args.out:
        return Path(args.out)
    fmt = args.format or "csv"
    return settings.output_dir / f"{config.algorithm}_{config.distribution_name}.{fmt}"


def report(rows, fits, config: ExperimentConfig, logger: Logger):
    for fit in fits:
        logger.info(
            f"{fit.params}: comparisons ~ {fit.slope:.4g} n + {fit.intercept:.4g} "
            f"(r^2={fit.r_squared:.4f}, spread={fit.relative_spread:.2%})"
        )
    if config.adversary is not None:
        for row in rows:
            logger.info(
                f"n={row.n} trial={row.trial}: {row.comparisons} comparisons, "
                f"round floor {round_floor(row.comparisons, row.n)}, certificate {row.certificate}"
            )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()

    if not argv:
        parser.print_usage(sys.stderr)
        return 2

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage / help
        return int(e.code) if isinstance(e.code, int) else 2

    logger = Logger(quiet=args.quiet)

    try:
        settings = load_settings()
        config = build_config(args, settings)
        path = output_path(args, config, settings)
        fmt = resolve_format(path, args.format)

        logger.header("ECS-BENCH")
        logger.step(1, 3, "Running experiments")
        rows = run_experiment(config, logger)
        logger.success(f"{len(rows)} rows")

        logger.step(2, 3, "Fitting comparisons against n")
        fits = fit_groups(rows)
        report(rows, fits, config, logger)

        logger.step(3, 3, "Writing results")
        written = write_results(rows, fits, path, fmt)
        logger.success(f"Results saved: {written}")
        return 0

    except ConfigError as e:
        logger.error(f"Config Error: {e}")
        return 2

    except ECSError as e:
        logger.error(f"ECS Error: {e}")
        return 1

    except KeyboardInterrupt:
        logger.error("\n⚠️  Operation cancelled by user")
        return 130  # Standard exit code for SIGINT

    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        logger.error("\nTraceback:")
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
