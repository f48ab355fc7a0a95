"""Command-line entry point: asymptotic | sweep | precoders | validate"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from dotenv import load_dotenv

from src.core.errors import ConfigError, ConstructionError, ConvergenceError, InputError
from src.core.validation import LEVELS, ValidationSuite
from src.cli.config_schema import load_config
from src.cli.experiment import emit_precoders, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4
EXIT_VALIDATION = 5

DEFAULT_CONFIG = "config/experiment_config.yaml"
DEFAULT_VALIDATION_CONFIG = "config/validation_config.yaml"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfrelay",
        description="Asymptotic mutual information of multi-hop precode-and-forward MIMO relay chains"
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (env: PFRELAY_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("asymptotic", "Asymptotic formula over the SNR grid"),
        ("sweep", "Asymptotic formula plus Monte Carlo averages"),
        ("precoders", "Report optimal-direction precoders and power slacks")
    ):
        sub = commands.add_parser(name, help=text)
        sub.add_argument("--config", default=None, help="Experiment YAML (env: PFRELAY_CONFIG)")
        sub.add_argument("--output", default=None, help="Output file (overrides config)")
        sub.add_argument("--seed", type=int, default=None, help="Master seed (overrides config)")
        if name != "precoders":
            sub.add_argument("--format", choices=("csv", "json"), default=None, help="Output format")

    validate = commands.add_parser("validate", help="Run the transform-identity validation suite")
    validate.add_argument("--level", choices=LEVELS, default="quick")
    validate.add_argument("--config", default=DEFAULT_VALIDATION_CONFIG)
    validate.add_argument("--output", default=None, help="Write the JSON report here")
    return parser


def _configure_logging(level: Optional[str]) -> None:
    level = (level or os.getenv("PFRELAY_LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _experiment(args) -> int:
    config_path = args.config or os.getenv("PFRELAY_CONFIG", DEFAULT_CONFIG)
    config = load_config(config_path, overrides={'master_seed': args.seed})

    if args.command == "precoders":
        report = emit_precoders(config, output=args.output)
        if not (args.output or config.output):
            print(json.dumps(report, indent=2))
        slack = max(abs(s) for s in report['power']['slacks'])
        print(f"Precoders for dims {list(config.dimensions())}: max |power slack| = {slack:.3e}")
        return EXIT_OK

    monte_carlo = args.command == "sweep"
    result = run_experiment(config, monte_carlo=monte_carlo, output=args.output, fmt=args.format)

    print("=" * 60)
    print(f"{args.command}: {config.hops} hop(s), dims {list(config.dimensions())}, {config.precoder}")
    print("=" * 60)
    for r in result.records:
        line = f"{r.snr_db:7.2f} dB  asymptotic {r.mi_asymptotic:.6f}"
        if monte_carlo:
            line += f"  MC {r.mi_mc_mean:.6f} ± {r.mi_mc_std:.6f}"
        if r.error:
            line += f"  [solver failed: {r.error}]"
        print(line)

    if result.failed:
        print(f"\n{len(result.failed)} SNR point(s) failed to converge")
        return EXIT_SOLVER
    return EXIT_OK


def _validate(args) -> int:
    suite = ValidationSuite(config_path=args.config)
    report = suite.run(args.level)

    print("=" * 60)
    print(f"Validation ({report.level})")
    print("=" * 60)
    for check in report.checks:
        print(check.summary())

    if args.output:
        target = Path(args.output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(report.to_dict(), indent=2, default=str) + '\n')

    if not report.passed:
        print(f"\nFailed checks: {', '.join(report.failed)}")
        return EXIT_VALIDATION
    print("\nAll checks passed")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level)

    try:
        if args.command == "validate":
            return _validate(args)
        return _experiment(args)
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (InputError, ConstructionError) as e:
        print(f"Invalid experiment: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as e:
        print(f"Solver did not converge: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
