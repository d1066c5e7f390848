"""
Main api
"""
import functools
import json
import operator
import os

import pyparsing as pp

from . import bounds
from . import errors
from . import grammar
from . import lattice as lat
from . import local
from . import vinberg
from .config import CACHE_SIZE, DEFAULT_BUDGET, DEFAULT_HEIGHT
from .formats import write_atomic


class ParseError(errors.InvalidArgument):
    pass


@functools.lru_cache(CACHE_SIZE)
def _parse(text):
    try:
        node = grammar.lattice.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ParseError(f'{e.msg} at pos {e.loc}: {repr(e.pstr)}') from None
    return node.lattice(text.strip())


def parse(text):
    """
    Parse lattice notation
    >>> parse('[-7] + [1] + [1] + [1]').gram
    ((-7, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    >>> parse('U + [2]A2').invariant_factors
    (1, 1, 2, 6)
    """
    if isinstance(text, lat.QuadLattice):
        return text
    return _parse(text)


@functools.lru_cache(CACHE_SIZE)
def parse_angles(text):
    """
    Parse an angle set
    >>> parse_angles('(pi/4, pi/2, pi/3, pi/3, pi/2)') == parse_angles('4 2 3 3 2')
    True
    """
    try:
        return grammar.angles.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ParseError(f'{e.msg} at pos {e.loc}: {repr(e.pstr)}') from None


def _gram_from_json(rows):
    if not isinstance(rows, list) or not rows:
        raise ParseError('gram: expected a non-empty list of rows')
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise ParseError(f'gram[{i}]: expected a row of length {len(rows)}')
        row = list(row)
        for j, x in enumerate(row):
            if isinstance(x, bool):
                raise ParseError(f'gram[{i}][{j}]: not an integer: {x!r}')
            if isinstance(x, str):
                try:
                    x = int(x)
                except ValueError:
                    raise ParseError(f'gram[{i}][{j}]: not an integer: {x!r}') from None
            try:
                row[j] = operator.index(x)
            except TypeError:
                raise ParseError(f'gram[{i}][{j}]: not an integer: {x!r}') from None
        out.append(tuple(row))
    for i in range(len(out)):
        for j in range(i):
            if out[i][j] != out[j][i]:
                raise ParseError(f'gram[{i}][{j}]: asymmetric ({out[i][j]} != {out[j][i]})')
    return tuple(out)


def loads(text):
    """
    Lattice from its JSON form
    >>> loads('{"gram": [[-7, 0], [0, 1]], "name": "L"}')
    QuadLattice([[-7, 0], [0, 1]])
    >>> loads('{"gram": [[1, 2], [0, 1]]}')
    Traceback (most recent call last):
    ...
    outermost.api.ParseError: gram[1][0]: asymmetric (0 != 2)
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f'invalid JSON: {e}') from None
    if not isinstance(doc, dict):
        raise ParseError('expected a JSON object')
    name = doc.get('name')
    if 'gram' in doc:
        return lat.QuadLattice(_gram_from_json(doc['gram']), name)
    if 'notation' in doc:
        return parse(doc['notation']).named(name)
    raise ParseError('expected a "gram" or "notation" entry')


def load(source):
    """
    Lattice from a JSON file, JSON text or notation
    """
    if isinstance(source, lat.QuadLattice):
        return source
    if os.path.exists(source):
        with open(source, 'rt') as f:
            return loads(f.read())
    if source.lstrip().startswith('{'):
        return loads(source)
    return parse(source)


def dumps(lattice):
    """
    >>> dumps(parse('diag(-3, 5)'))
    '{"gram": [[-3, 0], [0, 5]], "name": "diag(-3, 5)"}'
    """
    doc = {'gram': [list(row) for row in lattice.gram]}
    if lattice.name:
        doc['name'] = lattice.name
    return json.dumps(doc)


def dump(lattice, path):
    write_atomic(path, dumps(lattice) + '\n')


#
# operations on anything load() accepts
#
def anisotropic(lattice):
    """
    >>> anisotropic('[-7] + [1] + [1] + [1]')
    True
    >>> anisotropic('U + [1] + [1]')
    False
    """
    return local.is_anisotropic_over_Q(load(lattice))


def isomorphic(a, b, height=DEFAULT_HEIGHT):
    return local.z_isomorphic(load(a), load(b), height)


def run_vinberg(lattice, norms='all', budget=DEFAULT_BUDGET, stop_on_bad_pair=True):
    if not isinstance(norms, vinberg.NormPolicy):
        norms = vinberg.NormPolicy.parse(norms) if isinstance(norms, str) else vinberg.NormPolicy.explicit(norms)
    return vinberg.run(load(lattice), norms, budget, stop_on_bad_pair=stop_on_bad_pair)


def reflective12(lattice, budget=DEFAULT_BUDGET):
    return vinberg.one_two_reflectivity(load(lattice), budget)


def extensions(lattice, keep_roots=()):
    return lat.overlattices(load(lattice), keep_roots)


def width_bound(angles, both_labelings=True):
    """
    >>> width_bound('6 2 2 2 2', both_labelings=False).display
    Fraction(287, 100)
    """
    if isinstance(angles, str):
        angles = parse_angles(angles)
    return bounds.width_bound(angles, both_labelings)
