# railfares/cli/main.py
"""
Command-line entry point.

Exit codes: 0 success, 1 data or validation failure, 2 usage error.
Diagnostics go to stderr (JSON log lines plus one plain `error:` line);
data goes to files or stdout.
"""

from __future__ import annotations

import argparse
import logging
import sys
import uuid
from collections.abc import Sequence

from pydantic import ValidationError

from railfares import __version__
from railfares.cli import access, download, fares, stats, synth, validate
from railfares.cli.common import RunConfig
from railfares.config import Settings, get_settings
from railfares.errors import EXIT_DATA, EXIT_USAGE, RailFaresError, exit_code_for
from railfares.metrics import time_command, write_metrics
from railfares.observability import log_duration, setup_json_logging

log = logging.getLogger("railfares.cli")

_COMMANDS = (validate, download, fares, access, stats, synth)


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="railfares",
        description="Minimum rail fares, OD matrices and budget accessibility metrics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=settings.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="log level (default: $RAILFARES_LOG_LEVEL or INFO)",
    )
    parser.add_argument(
        "--metrics-file",
        default=settings.METRICS_FILE,
        help="write Prometheus text metrics here on exit (default: $RAILFARES_METRICS_FILE)",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for module in _COMMANDS:
        module.add_subparser(sub, settings)
    return parser


def _fail(command: str, message: str) -> None:
    print(f"railfares {command}: error: {message}", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    settings = get_settings()
    parser = build_parser(settings)
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if getattr(args, "needs_feed", False) and not args.feed:
        parser.print_usage(sys.stderr)
        _fail(args.command, "--feed is required (or set RAILFARES_FEED_DIR)")
        return EXIT_USAGE

    setup_json_logging(level=args.log_level, run_id=uuid.uuid4().hex)
    try:
        try:
            cfg = RunConfig.from_args(args, settings)
        except ValidationError as e:
            reasons = "; ".join(
                f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()
            )
            _fail(args.command, reasons)
            return EXIT_USAGE
        with time_command(args.command), log_duration(log, "command", command=args.command):
            return args.func(args, cfg)
    except RailFaresError as e:
        log.error("command_failed command=%s kind=%s", args.command, e.kind.value)
        _fail(args.command, e.message)
        return exit_code_for(e.kind)
    except Exception as e:
        log.exception("command_crashed command=%s", args.command)
        _fail(args.command, f"unexpected {type(e).__name__}: {e}")
        return EXIT_DATA
    finally:
        write_metrics(args.metrics_file)


def main() -> None:
    sys.exit(run())
