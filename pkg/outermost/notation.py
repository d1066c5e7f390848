"""
Parse-action elements of the lattice notation
"""
import pyparsing as pp

from . import bounds
from . import errors
from . import lattice as lat


class Node:
    def __init__(self, *args):
        if len(args) == 3 and isinstance(args[2], pp.ParseResults):
            self.args = tuple(args[2].as_list())
        else:
            self.args = tuple(args)
    def __repr__(self):
        return f'{self.__class__.__name__}{self.args}'
    def __eq__(self, other):
        return self.__class__ == other.__class__ and self.args == other.args
    def __hash__(self):
        return hash(self.args)
    def gram(self):
        raise NotImplementedError
    def lattice(self, name=None):
        return lat.QuadLattice(self.gram(), name)


class Rank1(Node):
    """
    [a]
    """
    def gram(self):
        return ((self.args[0],),)


class GramLiteral(Node):
    """
    [[a, b], [b, c]]
    """
    def gram(self):
        rows = [tuple(r) for r in self.args]
        if any(len(r) != len(rows) for r in rows):
            raise errors.InvalidArgument(f'Gram literal is not square: {rows}')
        return tuple(rows)


class Diag(Node):
    """
    diag(a, b, ...)
    """
    def gram(self):
        n = len(self.args)
        return tuple(tuple(self.args[i] if i == j else 0 for j in range(n)) for i in range(n))


class Hyperbolic(Node):
    """
    U, the even unimodular plane of signature (1,1)
    """
    def gram(self):
        return ((0, 1), (1, 0))


def _chain(n):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


class RootLattice(Node):
    """
    A<n>, D<n>, E6, E7, E8 with their Cartan matrices
    """
    def gram(self):
        family, n = self.args[0][0], int(self.args[0][1:])
        if family == 'A' and n >= 1:
            g = _chain(n)
        elif family == 'D' and n >= 4:
            g = _chain(n)
            g[n - 1][n - 2] = g[n - 2][n - 1] = 0
            g[n - 1][n - 3] = g[n - 3][n - 1] = -1
        elif family == 'E' and n in (6, 7, 8):
            g = _chain(n)
            g[n - 1][n - 2] = g[n - 2][n - 1] = 0
            g[n - 1][2] = g[2][n - 1] = -1
        else:
            raise errors.InvalidArgument(f'no root lattice {self.args[0]}')
        return tuple(tuple(row) for row in g)


class Scaled(Node):
    """
    [k]X
    """
    def gram(self):
        k, node = self.args
        return tuple(tuple(k * x for x in row) for row in node.gram())


class Sum(Node):
    """
    X + Y + ...
    """
    def gram(self):
        return lat.direct_sum(*(lat.QuadLattice(node.gram()) for node in self.args)).gram


def angle_set(s, loc, toks):
    try:
        return bounds.AngleSet(*toks.as_list())
    except TypeError:
        raise pp.ParseFatalException(s, loc, f'an angle set has 5 angles, got {len(toks)}') from None
    except errors.InvalidArgument as e:
        raise pp.ParseFatalException(s, loc, str(e)) from None
