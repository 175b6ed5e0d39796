"""
Command-line frontend.

Reads a JSON input document (from --input or standard input), dispatches it to the subcommand
and writes the result to standard output, as text or as a single JSON object. Exit codes: 0 when
a result or verdict was computed (declined verdicts included), 1 on an unexpected internal error,
2 on a usage error and 3 on invalid input.
"""
import argparse
import json
import logging
import pathlib
import sys
import traceback

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Sequence, TextIO

import commands
from commands import CommandName, CommandOptions
from converters import document_converter
from errors import ChowError, InputDocumentError, UsageError
from schemas import OutputDocument

CONFIG_PATH = pathlib.Path(__file__).parent / "config.toml"


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = _ArgumentParser(prog="chowtower", description="Please refer to the README.")
    parser.add_argument(
        "command",
        choices=[c.value for c in CommandName],
        help="The subcommand to run on the input document.",
    )
    parser.add_argument(
        "--input", default=None, help="Path of the JSON input document. Default: standard input."
    )
    parser.add_argument(
        "--format",
        default=None,
        choices=["json", "text"],
        help="Output format. Default: as configured in config.toml.",
    )
    parser.add_argument(
        "--bound",
        type=int,
        default=None,
        help="Largest absolute value of the matrix entries tried by the oracle.",
    )
    parser.add_argument(
        "--fidelity-note",
        action="store_true",
        help="Explain what the fidelity (SPLIT_EXACT or CHERN_LEVEL) of a verdict certifies.",
    )
    args = parser.parse_args(argv)
    if args.bound is not None:
        if args.command != CommandName.oracle.value:
            raise UsageError("--bound is only accepted by the oracle subcommand.")
        if args.bound < 1:
            raise UsageError(f"--bound must be at least 1, got {args.bound}.")
    return args


def _config(path: pathlib.Path = CONFIG_PATH) -> dict:
    if not path.exists():
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _setup_logging(config: dict):
    level = config.get("logging", {}).get("level", "WARNING")
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    logging.getLogger().setLevel(level)


def _read_document(path: str | None, stdin: TextIO):
    if path is None:
        text = stdin.read()
    else:
        try:
            with open(path, "r") as f:
                text = f.read()
        except OSError as e:
            raise UsageError(f"Cannot read input file '{path}': {e.strerror}.")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputDocumentError(f"line {e.lineno}, column {e.colno}: {e.msg}")


def _wrap_as_chow_error(exception: Exception) -> ChowError:
    if isinstance(exception, ChowError):
        return exception

    # This is an unexpected error. A mistake on our part. End users should not be informed about
    # details of problems they are not expected to fix, so we give a generic message and log the
    # error.
    traceback.print_exc()
    return ChowError(
        "Unexpected exception while processing your request. Please contact the maintainers."
    )


def run(
    argv: Sequence[str], stdin: TextIO | None = None, stdout: TextIO | None = None
) -> int:
    """Run one subcommand and return the process exit code."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    config = _config()
    _setup_logging(config)
    output_format = config.get("output", {}).get("default_format", "text")
    try:
        args = _parse_args(argv)
        output_format = args.format or output_format
        command = commands.commands[CommandName(args.command)]
        oracle_config = config.get("oracle", {})
        options = CommandOptions(
            bound=args.bound,
            default_bound=oracle_config.get("default_bound", 3),
            workers=oracle_config.get("workers", 1),
            fidelity_note=args.fidelity_note,
        )
        document = _read_document(args.input, stdin)
        output = command.execute(document, options)
    except Exception as e:
        error = _wrap_as_chow_error(e)
        if isinstance(error, InputDocumentError):
            logging.error(f"Invalid input document: {error.detail}")
        print(f"error: {error.detail}", file=sys.stderr)
        if output_format == "json":
            command_name = argv[0] if argv else ""
            output = OutputDocument(
                command=command_name, error=error.detail, exit_code=error.exit_code
            )
            stdout.write(document_converter.output_to_json(output) + "\n")
        return error.exit_code

    if output_format == "json":
        stdout.write(document_converter.output_to_json(output) + "\n")
    else:
        stdout.write(document_converter.output_to_text(output) + "\n")
    return 0


def main():
    """Run the command line. Placed in a separate function, to avoid having global variables"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
