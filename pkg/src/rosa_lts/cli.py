"""Command line front end: read a process file, build the transition
system, write one of the three output formats.

Exit codes: 0 success (truncated builds included, with a warning on
stderr); 2 parse or validation errors; 3 unbound variables or unguarded
recursion. Diagnostics go to stderr only, so the selected format is the
only thing on stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .builder import BuildConfig, build_lts
from .errors import (
    DuplicateDefinition,
    ParseError,
    UnboundVariable,
    UnguardedRecursion,
    ValidationError,
)
from .export import ExportOptions, to_dot, to_json, to_text
from .parser import parse_program
from .process import DefinitionEnv


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rosa-lts",
        description=(
            "Build the labelled transition system of a process term and "
            "print it as text, Graphviz DOT or JSON."
        ),
        epilog=(
            "Exit codes: 0 success (also truncated builds, which warn on "
            "stderr); 2 parse/validation error; 3 unbound variable or "
            "unguarded recursion."
        ),
    )
    parser.add_argument(
        "input",
        help="process definition file, or '-' to read stdin",
    )
    parser.add_argument(
        "--format",
        choices=("text", "dot", "json"),
        default="text",
        help="output format (default: text)",
    )
    parser.add_argument(
        "--out",
        metavar="PATH",
        help="write the output here instead of stdout",
    )
    parser.add_argument(
        "--root",
        metavar="NAME",
        help="analyse this definition instead of the default root",
    )
    parser.add_argument(
        "--max-states",
        type=_positive_int,
        default=BuildConfig.max_states,
        metavar="N",
        help=f"state limit before truncation (default: {BuildConfig.max_states})",
    )
    parser.add_argument(
        "--labels",
        choices=("id", "expr", "both"),
        default="both",
        help="node labelling in text/DOT output (default: both)",
    )
    parser.add_argument(
        "--check",
        action="store_true",
        help="parse and validate only; print nothing on success",
    )
    return parser


def run(args: argparse.Namespace) -> int:
    try:
        if args.input == "-":
            source = sys.stdin.read()
        else:
            source = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1

    try:
        env = parse_program(source)
    except (ParseError, ValidationError, DuplicateDefinition) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.check:
        return 0

    if args.root is not None:
        env = DefinitionEnv(bindings=env.bindings, root=args.root)

    try:
        lts = build_lts(env, BuildConfig(max_states=args.max_states))
    except (UnboundVariable, UnguardedRecursion) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if lts.truncated:
        print(
            f"warning: stopped at {args.max_states} states; "
            "output is a truncated prefix of the full system",
            file=sys.stderr,
        )

    opts = ExportOptions(node_labels=args.labels)
    if args.format == "dot":
        output = to_dot(lts, opts)
    elif args.format == "json":
        output = to_json(lts)
    else:
        output = to_text(lts, opts)
    if not output.endswith("\n"):
        output += "\n"

    if args.out:
        try:
            Path(args.out).write_text(output, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(output)
    return 0


def main(argv: list[str] | None = None) -> int:
    return run(build_arg_parser().parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
