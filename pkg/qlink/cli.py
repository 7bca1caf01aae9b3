"""
Command-line entry point.

    qlink link-budget|repeater|maqkd [--preset NAME] [--scenario PATH] [--set KEY=VALUE ...]
    qlink reproduce FIGURE
    qlink validate [--preset NAME] [--scenario PATH] [--set KEY=VALUE ...]

Exit codes: 0 success, 2 validation error, 3 parse error, 4 unknown preset or figure.
"""

import argparse
import logging
import sys
from pathlib import Path

from .exceptions import ParseError, QLinkError, UnknownFigureError, ValidationError
from .presets import FIGURES, PRESETS
from .scenario import COMMANDS, ResultTable, load_scenario, reproduce, run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_UNKNOWN = 4


def _add_scenario_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", type=Path, help="scenario file of key = value lines")
    parser.add_argument("--preset", help=f"bundled preset: {', '.join(PRESETS)}")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one scenario key, may be repeated",
    )


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, help="write the table here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlink",
        description="Link budgets, repeater times and MA-QKD key rates of satellite links.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        sub = commands.add_parser(command, help=f"run a {command} sweep")
        _add_scenario_options(sub)
        _add_output_options(sub)

    sub = commands.add_parser("reproduce", help="run the preset of a figure")
    sub.add_argument("figure", help=f"one of {', '.join(FIGURES)}")
    _add_output_options(sub)

    sub = commands.add_parser("validate", help="load and validate a scenario without running")
    _add_scenario_options(sub)

    return parser


def _write(table: ResultTable, out: Path | None, fmt: str) -> None:
    text = table.to_json() if fmt == "json" else table.to_csv()

    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")
        logger.info("Wrote %d rows to %s", len(table.rows), out)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG

    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        if args.command == "reproduce":
            _write(reproduce(args.figure, args.jobs), args.out, args.format)

        elif args.command == "validate":
            scenario = load_scenario(args.scenario, args.preset, args.overrides)
            print(f"ok: {scenario.name} ({scenario.command}, {scenario.scenario_hash[:12]})")

        else:
            scenario = load_scenario(args.scenario, args.preset, args.overrides, args.command)
            _write(run(scenario, args.jobs), args.out, args.format)

    except UnknownFigureError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_UNKNOWN
    except ParseError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_VALIDATION
    except QLinkError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_VALIDATION

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
