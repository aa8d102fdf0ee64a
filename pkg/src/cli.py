"""
Command-line interface for partdist.

Exit status: 0 on success, 1 on a usage or parameter error, 2 when a
verification finds an exact mismatch.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence, TextIO

from .core.verification_controller import InvalidParametersError, VerificationController
from .partition_distributions.errors import PartitionDistributionError
from .partition_distributions.serialization import render
from .utils.config_loader import ConfigLoader
from .utils.env_config import config
from .utils.validation import OUTPUT_FORMATS, ParameterValidator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    """Invalid command line."""


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting with 2."""

    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.replace(' ', '').split(',') if token]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=argparse.SUPPRESS,
                        help='output format (default pretty)')
    common.add_argument('--workers', type=int, default=argparse.SUPPRESS,
                        help='worker threads (default 1)')
    common.add_argument('--config', default=argparse.SUPPRESS, help='YAML file with default options')

    parser = _ArgumentParser(
        prog='partdist',
        description='Exact cycle-type distributions of uniform random permutations.',
        parents=[common],
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {config.APP_VERSION}')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, help=help_text, parents=[common])

    sub = command('enumerate', 'list the partitions of n with m and Lambda')
    sub.add_argument('--n', type=int, required=True)

    sub = command('pmf', 'probability of every cycle type of S_n')
    sub.add_argument('--n', type=int, required=True)

    for name, help_text in (('ymoments', 'E(Y) and E(YY\')'), ('cov', 'covariance matrix of Y')):
        sub = command(name, help_text)
        sub.add_argument('--n', type=int, required=True)
        sub.add_argument('--verify', action='store_true', help='check against full enumeration')

    sub = command('verify-fine', 'check that the pmf sums to 1 for n = 0..max-n')
    sub.add_argument('--max-n', type=int, required=True)

    sub = command('verify-mgf', 'check the MGF derivative recursion for 1 <= i <= n <= max-n')
    sub.add_argument('--max-n', type=int, required=True)

    sub = command('xseq', 'n! E(X_j) for n up to max-n')
    sub.add_argument('--component', type=int, required=True)
    sub.add_argument('--max-n', type=int, required=True)
    sub.add_argument('--from-end', action='store_true',
                     help='use X_(n-j) and compare with the conjectured closed forms')

    sub = command('xtable', 'triangle of n! E(X_k), k = 1..n')
    sub.add_argument('--max-n', type=int, required=True)

    sub = command('fit', 'fit the binomial-basis form of n! E(X_(n-j))')
    sub.add_argument('--j', type=int, required=True)
    sub.add_argument('--samples', type=_int_list, default=None,
                     help='comma-separated n values (default 2j+1 .. 4j-1)')

    sub = command('asymptotics', 'leading terms of the fitted polynomial')
    sub.add_argument('--j', type=int, required=True)

    sub = command('sample', 'Monte Carlo check against the exact pmf and moments')
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('--trials', type=int, default=None)
    sub.add_argument('--seed', type=int, default=None)

    return parser


_PARAMETERS: Dict[str, Sequence[str]] = {
    'enumerate': ('n',),
    'pmf': ('n',),
    'ymoments': ('n', 'verify'),
    'cov': ('n', 'verify'),
    'verify-fine': ('max_n',),
    'verify-mgf': ('max_n',),
    'xseq': ('component', 'max_n', 'from_end'),
    'xtable': ('max_n',),
    'fit': ('j', 'samples'),
    'asymptotics': ('j',),
    'sample': ('n', 'trials', 'seed'),
}


def _resolve_options(args: argparse.Namespace) -> None:
    """Fill unset options: command line, then YAML defaults, then environment."""
    for option in ("format", "workers", "config"):
        if not hasattr(args, option):
            setattr(args, option, None)
    defaults = ConfigLoader(args.config).load_defaults()
    if args.format is None:
        args.format = defaults.get('format', 'pretty')
        checked = ParameterValidator.validate_format(args.format)
        if not checked.is_valid():
            raise UsageError(f"config format: {checked.errors[0].message}")
    if args.workers is None:
        args.workers = defaults.get('workers', config.DEFAULT_WORKERS)
    if args.command == 'sample':
        for option in ('trials', 'seed'):
            if getattr(args, option) is None:
                if option not in defaults:
                    raise UsageError(f"the following arguments are required: --{option}")
                setattr(args, option, defaults[option])


def run(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """
    Parse ``argv``, run one command and write its output.

    Returns:
        The exit status.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        _resolve_options(args)
        controller = VerificationController(workers=args.workers)
        params = {name: getattr(args, name) for name in _PARAMETERS[args.command]}
        result = controller.execute(args.command, **params)
    except SystemExit as e:
        # --help, --version
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE
    except UsageError as e:
        stderr.write(f"partdist: error: {e}\n")
        return EXIT_USAGE
    except InvalidParametersError as e:
        stderr.write(f"partdist: error: {e}\n")
        return EXIT_USAGE
    except PartitionDistributionError as e:
        logger.error(f"{type(e).__name__}: {e}")
        stderr.write(f"partdist: error: {e}\n")
        return EXIT_USAGE

    stdout.write(render(result, args.format))
    if not result.ok:
        stderr.write(f"partdist: {args.command}: verification mismatch\n")
        return EXIT_MISMATCH
    return EXIT_OK
