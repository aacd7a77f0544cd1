"""
Command-line interface for antimagic orientations.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from . import __version__
from .bipartite import antimagic_orientation_bipartite
from .exceptions import AntimagicError, CounterexampleError, MalformedInputError
from .generators import Family, generate
from .io import (
    certificate_to_json,
    format_edge_list,
    read_edge_list,
    verify_certificate_document,
    write_edge_list,
)
from .mindegree import antimagic_orientation_mindegree
from .oracle import DEFAULT_ORACLE_BUDGET, brute_force_antimagic
from .selftest import run_selftest

logger = logging.getLogger(__name__)

# Parameters each generator family reads from the command line
FAMILY_PARAMS = {
    Family.COMPLETE: ("n",),
    Family.COMPLETE_BIPARTITE: ("a", "b"),
    Family.STAR: ("t",),
    Family.RANDOM_BIPARTITE: ("nx", "ny", "dmax"),
    Family.NEAR_REGULAR: ("n", "d"),
    Family.HYPERCUBE: ("k",),
    Family.TREE_OF_STARS: ("stars", "leaves"),
}

TRUTHY = ("1", "true", "yes", "on")


def _env_int(name: str) -> Optional[int]:
    value = os.environ.get(name)
    if value is None or value == "":
        return None
    try:
        return int(value)
    except ValueError as e:
        raise MalformedInputError(f"{name} must be an integer, got {value!r}") from e


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def orient_command(args: argparse.Namespace) -> int:
    """Handle orient command."""
    graph = read_edge_list(args.input)
    seed = args.seed if args.seed is not None else _env_int("ANTIMAGIC_SEED")
    if args.mode == "bipartite":
        cert = antimagic_orientation_bipartite(graph)
    else:
        unsafe = args.unsafe or os.environ.get("ANTIMAGIC_UNSAFE", "").lower() in TRUTHY
        try:
            cert = antimagic_orientation_mindegree(
                graph, unsafe=unsafe, seed=seed, restarts=args.restarts
            )
        except CounterexampleError as e:
            print(f"Counterexample: {e.verdict}", file=sys.stderr)
            if args.output:
                _emit(certificate_to_json(e.certificate), args.output)
            return e.exit_code
    cert = dataclasses.replace(cert, meta={**cert.meta, "seed": seed})
    _emit(certificate_to_json(cert), args.output)
    return 0


def verify_command(args: argparse.Namespace) -> int:
    """Handle verify command."""
    try:
        with open(args.certificate) as handle:
            data = json.load(handle)
    except OSError as e:
        raise MalformedInputError(f"Cannot read certificate {args.certificate}: {e}") from e
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Certificate is not valid JSON: {e}") from e
    verdict = verify_certificate_document(data)
    if args.json:
        print(json.dumps(verdict.to_dict(), indent=2))
    else:
        print(verdict)
    return 0 if verdict else 1


def gen_command(args: argparse.Namespace) -> int:
    """Handle gen command."""
    family = Family(args.family)
    params: Dict[str, Any] = {}
    for name in FAMILY_PARAMS[family]:
        value = getattr(args, name)
        if value is None:
            print(f"Error: --{name} is required for family {family.value}", file=sys.stderr)
            return 2
        params[name] = value
    seed = args.seed if args.seed is not None else _env_int("ANTIMAGIC_SEED")
    graph = generate(family, params, seed=seed)
    if args.out:
        write_edge_list(args.out, graph)
    else:
        sys.stdout.write(format_edge_list(graph))
    return 0


def oracle_command(args: argparse.Namespace) -> int:
    """Handle oracle command."""
    graph = read_edge_list(args.input)
    result = brute_force_antimagic(graph, budget=args.budget)
    print(result)
    if result.witness is not None:
        for tail, head, label in result.witness.arcs():
            print(f"  {tail} -> {head}: {label}")
    return 0


def selftest_command(args: argparse.Namespace) -> int:
    """Handle selftest command."""
    seed = args.seed if args.seed is not None else _env_int("ANTIMAGIC_SEED")
    results = run_selftest(seed=seed if seed is not None else 0)
    for result in results:
        print(result)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    parser = argparse.ArgumentParser(
        prog="antimagic",
        description="Construct and verify antimagic orientations of graphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=os.environ.get("ANTIMAGIC_LOG_LEVEL", "WARNING"),
        help="Logging level (can also be set via ANTIMAGIC_LOG_LEVEL, default: WARNING)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Orient command
    orient_parser = subparsers.add_parser("orient", help="Construct an antimagic orientation")
    orient_parser.add_argument("--mode", choices=["bipartite", "mindegree"], required=True)
    orient_parser.add_argument("--input", required=True, help="Edge-list file")
    orient_parser.add_argument("--output", help="Certificate file (default: stdout)")
    orient_parser.add_argument("--seed", type=int, help="Seed (falls back to ANTIMAGIC_SEED)")
    orient_parser.add_argument(
        "--unsafe", action="store_true", help="Allow minimum degree below 33 (mindegree mode)"
    )
    orient_parser.add_argument(
        "--restarts", type=int, default=0, help="Random restarts of the cut search"
    )
    orient_parser.set_defaults(func=orient_command)

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Verify a certificate")
    verify_parser.add_argument("certificate", help="Certificate file")
    verify_parser.add_argument("--json", action="store_true", help="Print the verdict as JSON")
    verify_parser.set_defaults(func=verify_command)

    # Gen command
    gen_parser = subparsers.add_parser("gen", help="Generate a graph")
    gen_parser.add_argument("--family", choices=[f.value for f in Family], required=True)
    gen_parser.add_argument("--out", help="Edge-list file (default: stdout)")
    gen_parser.add_argument("--seed", type=int, help="Seed (falls back to ANTIMAGIC_SEED)")
    for name in sorted({p for params in FAMILY_PARAMS.values() for p in params}):
        gen_parser.add_argument(f"--{name}", type=int)
    gen_parser.set_defaults(func=gen_command)

    # Oracle command
    oracle_parser = subparsers.add_parser("oracle", help="Exhaustive search on a tiny graph")
    oracle_parser.add_argument("--input", required=True, help="Edge-list file")
    oracle_parser.add_argument(
        "--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="Search nodes to visit"
    )
    oracle_parser.set_defaults(func=oracle_command)

    # Selftest command
    selftest_parser = subparsers.add_parser("selftest", help="Run the built-in acceptance sweep")
    selftest_parser.add_argument("--seed", type=int, help="Seed (falls back to ANTIMAGIC_SEED)")
    selftest_parser.set_defaults(func=selftest_command)

    return parser


def _configure_logging(name: str) -> None:
    level = logging.getLevelName(str(name).upper())
    if not isinstance(level, int):
        raise MalformedInputError(f"Unknown log level: {name}")
    logging.basicConfig(level=level)


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and return the exit status.

    Exit statuses: 0 success, 1 rejected certificate or counterexample,
    2 precondition error, 3 malformed input, 4 internal error.
    """
    # Load environment variables from .env file
    load_dotenv()

    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        _configure_logging(args.log_level)
        if not hasattr(args, "func"):
            parser.print_help()
            return 0
        return args.func(args)
    except AntimagicError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code


def main() -> None:
    """Main entry point for the CLI."""
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
