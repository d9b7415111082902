#!/usr/bin/env python3
# Copyright 2021 The repeaterlab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""repeaterlab command-line utility.

Exit codes: 0 success, 1 numerical failure, 2 usage or configuration
error, 3 I/O error, 4 bound not applicable to the parameters.
"""


import sys
import argparse
import logging
from repeaterlab.bounds import BoundInapplicableError
from repeaterlab.config import ConfigError
from repeaterlab.rootfind import RootNotFoundError
from repeaterlab.simulation import EmptyStatisticsError
from repeaterlab.command import bounds, envelope, optimal_params, rate, resources, simulate


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BOUND_INAPPLICABLE = 4


commands = [rate, envelope, optimal_params, resources, simulate, bounds]
"""This list of available command modules.  Each module must contain a
parser_config(subparser) function.  The function must return the callable(args)
that will be executed for the command."""


log = logging.getLogger(__name__)


def get_parser():
    parser = argparse.ArgumentParser(description='Time-multiplexed quantum repeater rate tools.')
    parser.add_argument('--verbose', '-v',
                        action='store_true',
                        help='Display debug log messages.')
    subparsers = parser.add_subparsers(
        dest='subparser_name',
        help='The command to execute')

    for command in commands:
        default_name = command.__name__.split('.')[-1]
        name = getattr(command, 'NAME', default_name)
        cfg_fn = command.parser_config
        p = subparsers.add_parser(name, help=cfg_fn.__doc__)
        cmd_fn = cfg_fn(p)
        if not callable(cmd_fn):
            raise ValueError(f'Invalid command function for {name}')
        p.set_defaults(func=cmd_fn)

    subparsers.add_parser('help', help='Display the command help. Use [command] --help to display help for a specific command.')

    return parser


def run(argv=None):
    """Run the command line.

    :param argv: The argument list, None for sys.argv[1:].
    :return: The process exit code.
    """
    logging.basicConfig(level=logging.INFO)
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return ex.code
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if args.subparser_name is None:
        print('No command provided.  Please specify a command.')
        parser.print_help()
        return EXIT_USAGE
    elif args.subparser_name.lower() in ['help']:
        parser.print_help()
        return EXIT_OK
    name = args.subparser_name
    try:
        return args.func(args)
    except ConfigError as ex:
        print(f'{name}: {ex}', file=sys.stderr)
        return EXIT_USAGE
    except BoundInapplicableError as ex:
        print(f'{name}: bound not applicable: {ex}', file=sys.stderr)
        return EXIT_BOUND_INAPPLICABLE
    except OSError as ex:
        print(f'{name}: {ex}', file=sys.stderr)
        return EXIT_IO
    except (RootNotFoundError, EmptyStatisticsError) as ex:
        print(f'{name}: {ex}', file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as ex:
        print(f'{name}: {ex}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
