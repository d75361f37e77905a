"""
CLI entry point.

Usage:
    python -m src.cli solve --example 1 --epsilon 1e-6
    python -m src.cli solve --f "exp(-x)+2*sin(2*pi*(x+1))" --oracle
    python -m src.cli table --example 3 --epsilon 1e-4 1e-6 1e-8
    python -m src.cli sweep --example 1 --n 8 16 32 64

Exit codes: 0 success, 1 not converged at n_max, 2 usage or configuration
error, 3 solver failure.
"""

import argparse
import logging
import sys

from src.cli.common import EXIT_OK, EXIT_USAGE
from src.cli.solve import solve_command
from src.cli.sweep import sweep_command
from src.cli.table import table_command
from src.core.config import app_config
from src.utils.error_handler import ErrorHandler


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument('--n-max', dest='n_max', type=int, default=None,
                     help='Largest n the adaptive loop may reach (even)')
    sub.add_argument('--rule', type=str, default=None, choices=['left', 'trapezoid'],
                     help='Quadrature weights of the discrete H1 norm')
    sub.add_argument('--M', dest='M', type=int, default=None,
                     help='Number of points of the error-evaluation grid')
    sub.add_argument('--out', '-o', type=str, default=None,
                     help='Output file')
    sub.add_argument('--format', type=str, default=None, choices=['csv', 'json'],
                     help='Output file format')
    sub.add_argument('--workers', '-w', type=int, default=None,
                     help='Concurrent solves for table and sweep rows')
    sub.add_argument('--verbose', '-v', action='store_true',
                     help='Log every iteration')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='colloc-r',
        description='Collocation solver for int_{-1}^{1} exp(-|x-y|) h(y) dy = f(x)'
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # ─────────────────────────────────────────────────────────────
    # solve command
    # ─────────────────────────────────────────────────────────────
    solve_parser = subparsers.add_parser('solve', help='Adaptive solve of one problem')
    source = solve_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--example', '-e', type=int,
                        help='Built-in example 1..4')
    source.add_argument('--f', type=str,
                        help='Right-hand side f(x) as an expression')
    solve_parser.add_argument('--epsilon', type=float, default=None,
                              help='Stop once DP <= epsilon')
    solve_parser.add_argument('--oracle', action='store_true',
                              help='Derive the exact solution of --f for error columns')
    _add_common(solve_parser)

    # ─────────────────────────────────────────────────────────────
    # table command
    # ─────────────────────────────────────────────────────────────
    table_parser = subparsers.add_parser('table', help='One adaptive run per epsilon')
    table_parser.add_argument('--example', '-e', type=int, required=True,
                              help='Built-in example 1..4')
    table_parser.add_argument('--epsilon', dest='epsilons', type=float, nargs='*', default=None,
                              help='Tolerances (default: table_epsilons from config)')
    _add_common(table_parser)

    # ─────────────────────────────────────────────────────────────
    # sweep command
    # ─────────────────────────────────────────────────────────────
    sweep_parser = subparsers.add_parser('sweep', help='Fixed-n solves for a convergence study')
    sweep_parser.add_argument('--example', '-e', type=int, required=True,
                              help='Built-in example 1..4')
    sweep_parser.add_argument('--n', type=str, nargs='+', required=True,
                              help='Even n values or lo:hi[:step] ranges')
    _add_common(sweep_parser)

    return parser


def main(argv=None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    ErrorHandler.initialize(app_config.log_file)

    # Dispatch to command handlers
    if args.command == 'solve':
        return solve_command(args)
    elif args.command == 'table':
        return table_command(args)
    elif args.command == 'sweep':
        return sweep_command(args)
    parser.print_help()
    return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
