"""
Command-line surface: boots every plugin, raises the `command_<name>` event
of the parsed subcommand and serialises whatever the serving plugin returns.
"""
import argparse
import logging
import sys
from collections import namedtuple
log = logging.getLogger(__name__)

from core import jsonio
from core.errors import TropError, SchemaError, BadConfig
from core.module_driver import modules
from core.events import events

# Row-oriented result, written as CSV unless JSON is requested.
Table = namedtuple('Table', 'header rows')

def _common(parser):
    parser.add_argument('--out', help='write the result to this file instead of stdout')
    parser.add_argument('--format', choices=('json', 'csv'), help='output format')

def build_parser():
    parser = argparse.ArgumentParser(prog='tropkit', description='Tropical and idempotent mathematics toolkit.')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def command(name, help, into=commands, event=None):
        sub = into.add_parser(name, help=help)
        _common(sub)
        sub.set_defaults(event=event or name)
        return sub

    sub = command('star', 'Kleene star of a matrix')
    sub.add_argument('--matrix', required=True)
    sub.add_argument('--plus', action='store_true', help='A (x) A* instead of A*')

    sub = command('eig', 'eigenvalue, critical graph and eigenvectors')
    sub.add_argument('--matrix', required=True)

    sub = command('project', 'projection onto semimodules, or the cyclic spectral radius')
    sub.add_argument('--modules', action='append', required=True, metavar='MATRIX')
    sub.add_argument('--vector')
    sub.add_argument('--sweeps', type=int, default=1)

    sub = command('separate', 'separating halfspaces of several semimodules')
    sub.add_argument('--modules', action='append', required=True, metavar='MATRIX')

    sub = command('twosided', 'generators of A (x) x <= B (x) x')
    sub.add_argument('--A', dest='A', required=True)
    sub.add_argument('--B', dest='B', required=True)

    sub = command('invariants', 'bideterminant, permanent, rook coefficients and singularity')
    sub.add_argument('--matrix', required=True)
    sub.add_argument('--exhaustive', action='store_true')

    plucker = commands.add_parser('plucker', help='tropical Pluecker functions')
    actions = plucker.add_subparsers(dest='action', metavar='action')
    actions.required = True
    sub = command('check', 'test TP, DMTP, Pluecker and submodularity', actions, 'plucker_check')
    sub.add_argument('--function', required=True)
    sub = command('build', 'subset function of maximal flows in a grid', actions, 'plucker_build')
    sub.add_argument('--config', required=True)
    sub = command('reconstruct', 'extend interval values to a TP function', actions, 'plucker_reconstruct')
    sub.add_argument('--function', required=True)

    sub = command('assign', 'strong regularity, normal form, distances and potentials')
    sub.add_argument('--matrix', required=True)

    traffic = commands.add_parser('traffic', help='min-plus traffic dynamics')
    actions = traffic.add_subparsers(dest='action', metavar='action')
    actions.required = True
    sub = command('diagram', 'fundamental diagram of a network', actions, 'traffic_diagram')
    sub.add_argument('--config', required=True)
    sub.add_argument('--densities', required=True, help='lo:hi:step')
    sub.add_argument('--steps', type=int, default=4000)
    sub = command('tent', 'tent-map orbit histogram', actions, 'traffic_tent')
    sub.add_argument('--y0', action='append', required=True)
    sub.add_argument('--steps', type=int, default=10000)
    sub.add_argument('--bins', type=int, default=100)
    sub = command('exclusion', '10 -> 01 exclusion trajectory', actions, 'traffic_exclusion')
    sub.add_argument('--word', required=True)
    sub.add_argument('--steps', type=int, default=10)
    sub = command('light', 'two roads behind a traffic light', actions, 'traffic_light')
    sub.add_argument('--config', required=True)
    sub.add_argument('--steps', type=int, default=4000)

    interval = commands.add_parser('interval', help='exact interval versions')
    actions = interval.add_subparsers(dest='action', metavar='action')
    actions.required = True
    for op in ('add', 'mul', 'residual'):
        sub = command(op, 'interval %s' % op, actions, 'interval_%s' % op)
        sub.add_argument('--A', dest='A', required=True)
        sub.add_argument('--B', dest='B', required=True)
    sub = command('star', 'Kleene star of an interval matrix', actions, 'interval_star')
    sub.add_argument('--matrix', required=True)

    return parser

def render(result, format=None):
    if isinstance(result, Table):
        if format == 'json':
            return jsonio.dumps({'header': list(result.header), 'rows': jsonio.encode(result.rows)})
        return jsonio.csv_text(result.header, result.rows)
    if format == 'csv':
        raise ValueError('this command has no CSV output')
    return jsonio.dumps(jsonio.encode(result))

def error_body(e):
    body = {'error': e.__class__.__name__, 'message': str(e)}
    if e.witness is not None:
        body['witness'] = jsonio.encode(e.witness)
    return body

def run(args, out=None, err=None):
    """
    Execute one parsed command. Returns the exit status: 0 on success, 1 on
    domain errors (JSON body on out), 2 on input, schema or configuration
    errors.
    """
    out = out or sys.stdout
    err = err or sys.stderr

    try:
        modules.load_all()
        event = 'command_%s' % args.event
        if not events.registered(event):
            raise ValueError('no plugin serves %r' % args.event)

        result = events.trigger(event, args)
        text = render(result, args.format)
        if args.out:
            with open(args.out, 'w') as stream:
                stream.write(text)
        else:
            out.write(text)
    except BadConfig as e:
        log.error('%s' % e)
        err.write('tropkit: invalid configuration: %s\n' % e)
        return 2
    except TropError as e:
        log.info('%s: %s' % (e.__class__.__name__, e))
        out.write(jsonio.dumps(error_body(e)))
        return 1
    except (SchemaError, OSError, ValueError) as e:
        log.error('%s' % e)
        err.write('tropkit: %s\n' % e)
        return 2

    return 0

def main(argv=None, out=None, err=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        for name in ('core', 'modules'):
            logging.getLogger(name).setLevel(logging.DEBUG)
    return run(args, out, err)
