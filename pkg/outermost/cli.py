"""
Command line front end
"""
import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import api
from . import bounds
from . import errors
from . import formats
from . import lattice as lat
from . import local
from . import pipeline
from . import vinberg
from .config import DEFAULT_BUDGET, DEFAULT_HEIGHT, VERSION, Budget, configure_logging

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _budget(args):
    return Budget(args.max_roots, args.max_priority)


def _place(p):
    return 'real' if p == local.REAL else p


def _emit(args, command, body, path=None, fmt='json', **parameters):
    head = formats.header(command, **parameters)
    text = formats.render(fmt, body, head)
    path = path or getattr(args, 'output', None)
    if path:
        formats.write_atomic(path, text if text.endswith('\n') else text + '\n')
        log.info('wrote %s', path)
    else:
        sys.stdout.write(text if text.endswith('\n') else text + '\n')


#
# commands
#
def cmd_info(args):
    L = api.load(args.lattice)
    body = {
        'gram': L.gram,
        'rank': L.rank,
        'signature': L.signature,
        'discriminant': L.discriminant,
        'invariant_factors': L.invariant_factors,
        'even': L.is_even,
        'hyperbolic': L.is_hyperbolic,
    }
    if L.is_hyperbolic:
        body['basic_point'] = vinberg.choose_basic_point(L)
        body['root_norms'] = vinberg.root_norms(L)
    _emit(args, 'info', body)


BOUNDS_COLUMNS = ('angle_set', 't_raw', 't_display', 't_published')


def cmd_bounds(args):
    both = not args.published
    table = bounds.bounds_table(both, args.flag_illposed)
    parameters = {'both_labelings': both, 'flag_illposed': args.flag_illposed,
                  'dps': bounds.DPS, 'interval_dps': bounds.INTERVAL_DPS}
    if args.format == 'csv':
        rows = [{k: row.as_dict()[k] for k in BOUNDS_COLUMNS} for row in table]
        _emit(args, 'bounds', rows, fmt='csv', **parameters)
    else:
        _emit(args, 'bounds', list(table), **parameters)


def cmd_aniso(args):
    L = api.load(args.lattice)
    places = local.witness_places(L)
    body = {'anisotropic': bool(places), 'witness_places': [_place(p) for p in places]}
    _emit(args, 'aniso', body)


def cmd_isom(args):
    a, b = api.load(args.first), api.load(args.second)
    _emit(args, 'isom', local.z_isomorphic(a, b, args.height), height=args.height)


def cmd_vinberg(args):
    L = api.load(args.lattice)
    policy = vinberg.NormPolicy.parse(args.norms)
    budget = _budget(args)
    report = vinberg.run(L, policy, budget, stop_on_bad_pair=not args.complete)
    if args.dot:
        formats.write_atomic(args.dot, formats.render('dot', report.diagram))
    _emit(args, 'vinberg', report, path=args.json, norms=str(policy), budget=budget.as_dict())


def _read_roots(path):
    with open(path, 'rt') as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise api.ParseError(f'invalid JSON in {path}: {e}') from None
    try:
        return [(tuple(int(x) for x in r['vector']), int(r['norm'])) for r in doc['roots']]
    except (KeyError, TypeError, ValueError) as e:
        raise api.ParseError(f'roots: expected [{{"vector": [...], "norm": k}}, ...] ({e})') from None


def cmd_extensions(args):
    L = api.load(args.lattice)
    roots = _read_roots(args.roots) if args.roots else ()
    if args.all:
        found = lat.overlattices(L, roots)
    else:
        found = pipeline.extension_classes(L, roots, args.height)
    _emit(args, 'extensions', found, all=args.all, height=args.height)


def cmd_classify(args):
    budget = _budget(args)
    threads = args.threads or os.cpu_count() or 1
    both = not args.published
    report = pipeline.classify(budget, threads=threads, height=args.height, both_labelings=both)
    _emit(args, 'classify', report, path=args.report, budget=budget.as_dict(), height=args.height,
          both_labelings=both)


def cmd_enumerate(args):
    configs = pipeline.enumerate_configurations(not args.published)
    _emit(args, 'enumerate', configs, both_labelings=not args.published)


#
#
#
def build_parser():
    p = argparse.ArgumentParser(
        prog='outermost',
        description='(1,2)-reflective anisotropic hyperbolic lattices of rank 4',
    )
    p.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    p.add_argument('--log-level', type=str.upper, default='WARNING',
                   choices=('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'))
    p.add_argument('-v', '--verbose', action='count', default=0, help='INFO, or DEBUG when given twice')
    p.add_argument('--threads', type=int, default=1, help='worker threads for classify (0 = auto)')
    p.add_argument('--seed', type=int, default=None, help='accepted for reproducibility; every algorithm is deterministic')
    sub = p.add_subparsers(dest='command', required=True)

    def command(name, fn, help, output=True):
        c = sub.add_parser(name, help=help)
        c.set_defaults(func=fn)
        if output:
            c.add_argument('-o', '--output', help='write to FILE instead of stdout')
        return c

    def published(c):
        c.add_argument('--published', action='store_true',
                       help='published face labeling only, instead of the maximum over both')

    def budgeted(c):
        c.add_argument('--max-roots', type=int, default=DEFAULT_BUDGET.max_roots)
        c.add_argument('--max-priority', type=Fraction, default=DEFAULT_BUDGET.max_priority)

    c = command('info', cmd_info, 'lattice invariants')
    c.add_argument('lattice', help='JSON file or notation such as "[-7]+[1]+[1]+[1]"')

    c = command('bounds', cmd_bounds, 'table of width bounds')
    c.add_argument('--format', choices=('json', 'csv'), default='json')
    published(c)
    c.add_argument('--flag-illposed', action='store_true', help='list orbits without a bound as flagged rows')

    c = command('aniso', cmd_aniso, 'anisotropy over Q')
    c.add_argument('lattice')

    c = command('isom', cmd_isom, 'isometry test')
    c.add_argument('first')
    c.add_argument('second')
    c.add_argument('--height', type=int, default=DEFAULT_HEIGHT)

    c = command('vinberg', cmd_vinberg, "Vinberg's algorithm", output=False)
    c.add_argument('lattice')
    c.add_argument('--norms', default='all', help='"all" or a list such as 1,2')
    budgeted(c)
    c.add_argument('--complete', action='store_true', help='do not stop at the first bad pair')
    c.add_argument('--dot', help='write the Coxeter diagram to FILE')
    c.add_argument('--json', help='write the report to FILE')

    c = command('extensions', cmd_extensions, 'root-preserving overlattices')
    c.add_argument('lattice')
    c.add_argument('--roots', help='JSON file {"roots": [{"vector": [...], "norm": k}, ...]}')
    c.add_argument('--all', action='store_true', help='every subgroup, not one overlattice per isometry class')
    c.add_argument('--height', type=int, default=DEFAULT_HEIGHT)

    c = command('classify', cmd_classify, 'full classification', output=False)
    budgeted(c)
    c.add_argument('--height', type=int, default=DEFAULT_HEIGHT)
    c.add_argument('--report', help='write the report to FILE')
    published(c)

    c = command('enumerate', cmd_enumerate, 'raw edge configurations')
    published(c)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    level = {0: args.log_level, 1: 'INFO'}.get(args.verbose, 'DEBUG')
    configure_logging(level)
    try:
        args.func(args)
    except (api.ParseError, OSError) as e:
        print(f'outermost: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except (errors.OutermostError, ValueError) as e:
        print(f'outermost: error: {e}', file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
