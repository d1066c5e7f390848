"""
Integral quadratic lattices
"""
import dataclasses
import functools
import logging
import math
import operator
from fractions import Fraction

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices import normalforms

from . import errors

log = logging.getLogger(__name__)


def as_matrix(rows):
    """
    Square integer matrix as a tuple of tuples
    >>> as_matrix([[1, 0], [0, -3]])
    ((1, 0), (0, -3))
    """
    try:
        m = tuple(tuple(operator.index(x) for x in row) for row in rows)
    except TypeError as e:
        raise errors.InvalidArgument(f'Gram entries must be integers: {e}') from None
    if not m or any(len(row) != len(m) for row in m):
        raise errors.InvalidArgument('Gram matrix must be square and non-empty')
    return m


def _domain(rows):
    return DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ)


def determinant(g):
    """
    >>> determinant([[2, -1], [-1, 2]])
    3
    """
    return int(_domain(g).det())


def inverse(g):
    """
    Exact rational inverse
    >>> inverse([[2, 0], [0, -3]])
    ((Fraction(1, 2), Fraction(0, 1)), (Fraction(0, 1), Fraction(-1, 3)))
    """
    m = sympy.Matrix(g)
    if m.det() == 0:
        raise errors.DegenerateLattice('singular matrix has no inverse')
    m = m.inv()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in m.row(i)) for i in range(m.rows))


def bilinear(g, x, y):
    return sum(xi * sum(gij * yj for gij, yj in zip(row, y)) for xi, row in zip(x, g))


def apply(g, x):
    return tuple(sum(gij * xj for gij, xj in zip(row, x)) for row in g)


def gram_of(g, vectors):
    """
    Gram matrix of a family of vectors
    >>> gram_of([[1, 0], [0, 1]], [(1, 1), (1, -1)])
    ((2, 0), (0, 2))
    """
    images = [apply(g, v) for v in vectors]
    return tuple(tuple(sum(a * b for a, b in zip(x, gy)) for gy in images) for x in vectors)


def congruent(g, u):
    """
    U^T g U for a basis change U whose columns are the new basis vectors
    """
    columns = [tuple(row[j] for row in u) for j in range(len(u[0]))]
    return gram_of(g, columns)


def integral(m):
    """
    Matrix of rationals as integers, if it is one
    """
    if any(Fraction(x).denominator != 1 for row in m for x in row):
        raise errors.InvalidArgument(f'matrix is not integral: {m}')
    return tuple(tuple(int(x) for x in row) for row in m)


def content(x):
    return functools.reduce(math.gcd, x, 0)


def hermite_columns(columns):
    """
    Basis (as column vectors) of the integer span of integer column vectors
    >>> hermite_columns([(2, 0), (0, 2), (1, 1)])
    [(2, 0), (1, 1)]
    """
    n = len(columns[0])
    rows = [[col[i] for col in columns] for i in range(n)]
    w = normalforms.hermite_normal_form(_domain(rows)).to_Matrix()
    return [tuple(int(w[i, j]) for i in range(w.rows)) for j in range(w.cols)]


def diagonalize(g):
    """
    Rational congruence diagonalization
    >>> diagonalize([[2, -1], [-1, 2]])
    (Fraction(2, 1), Fraction(3, 2))
    >>> diagonalize([[0, 1], [1, 0]])
    (Fraction(2, 1), Fraction(-1, 2))
    """
    a = [[Fraction(x) for x in row] for row in g]
    n = len(a)
    out = []
    for k in range(n):
        if not a[k][k]:
            j = next((j for j in range(k + 1, n) if a[j][j]), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j]), None)
                if j is None:
                    raise errors.DegenerateLattice('singular Gram matrix')
                # pivot becomes 2 a[k][j]
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] += row[j]
        pivot = a[k][k]
        out.append(pivot)
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if not f:
                continue
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
            for j in range(k, n):
                a[j][i] -= f * a[j][k]
    return tuple(out)


def signature(g):
    """
    >>> signature([[2, 0], [0, 3]])
    (2, 0)
    """
    d = diagonalize(as_matrix(g))
    pos = sum(1 for x in d if x > 0)
    return pos, len(d) - pos


def invariant_factors(g):
    """
    Smith normal form diagonal, ascending
    >>> invariant_factors([[-3, 0, 0, 0], [0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    (1, 1, 1, 15)
    """
    g = as_matrix(g)
    if not determinant(g):
        raise errors.DegenerateLattice(f'degenerate Gram matrix {g}')
    return tuple(sorted(abs(int(f)) for f in normalforms.invariant_factors(_domain(g))))


@dataclasses.dataclass(frozen=True, order=True)
class Root:
    """
    Lattice vector admitted as a mirror normal, with its norm
    """
    vector: tuple
    norm: int

    def as_dict(self):
        return {'vector': list(self.vector), 'norm': self.norm}


class QuadLattice:
    """
    Integral lattice given by a non-degenerate symmetric Gram matrix
    >>> L = QuadLattice([[-7, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> L.signature, L.discriminant, L.invariant_factors
    ((3, 1), -7, (1, 1, 1, 7))
    >>> L.is_hyperbolic, L.is_even
    (True, False)
    """
    __slots__ = ('gram', 'name', 'rank', 'signature', 'discriminant', 'invariant_factors')

    def __init__(self, gram, name=None):
        gram = as_matrix(gram)
        n = len(gram)
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise errors.InvalidArgument(f'Gram matrix is not symmetric at ({i}, {j})')
        det = determinant(gram)
        if not det:
            raise errors.DegenerateLattice(f'degenerate Gram matrix {[list(r) for r in gram]}')
        object.__setattr__(self, 'gram', gram)
        object.__setattr__(self, 'name', name)
        object.__setattr__(self, 'rank', n)
        object.__setattr__(self, 'signature', signature(gram))
        object.__setattr__(self, 'discriminant', det)
        object.__setattr__(self, 'invariant_factors', invariant_factors(gram))

    def __setattr__(self, name, value):
        raise AttributeError(f'{self.__class__.__name__} is immutable')
    def __repr__(self):
        return f'{self.__class__.__name__}({[list(r) for r in self.gram]})'
    def __eq__(self, other):
        return isinstance(other, QuadLattice) and self.gram == other.gram
    def __hash__(self):
        return hash(self.gram)

    @property
    def is_hyperbolic(self):
        return self.signature == (self.rank - 1, 1)
    @property
    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))
    @property
    def dimension(self):
        return self.rank - 1
    @property
    def sort_key(self):
        return abs(self.discriminant), self.invariant_factors, self.gram

    def inner(self, x, y):
        return bilinear(self.gram, x, y)
    def norm(self, x):
        return bilinear(self.gram, x, x)
    def apply(self, x):
        return apply(self.gram, x)
    def named(self, name):
        return QuadLattice(self.gram, name)


def discriminant(lattice):
    """
    >>> discriminant(scaled(QuadLattice([[1, 0], [0, 1]]), 2))
    4
    """
    return lattice.discriminant


def scaled(lattice, k):
    """
    The lattice [k]L: all inner products multiplied by k
    """
    return QuadLattice(tuple(tuple(k * x for x in row) for row in lattice.gram))


def direct_sum(*lattices):
    """
    Orthogonal direct sum
    >>> direct_sum(QuadLattice([[-7]]), QuadLattice([[1, 0], [0, 1]])).gram
    ((-7, 0, 0), (0, 1, 0), (0, 0, 1))
    """
    n = sum(L.rank for L in lattices)
    rows = []
    offset = 0
    for L in lattices:
        for row in L.gram:
            rows.append((0,) * offset + row + (0,) * (n - offset - L.rank))
        offset += L.rank
    return QuadLattice(rows)


@dataclasses.dataclass(frozen=True)
class Overlattice:
    """
    Lattice between L and L*, given by its basis in the coordinates of L
    """
    basis_change: tuple
    index: int
    gram: tuple

    @property
    def is_integral(self):
        return all(Fraction(x).denominator == 1 for row in self.gram for x in row)

    @property
    def lattice(self):
        return QuadLattice(integral(self.gram))

    def as_dict(self):
        return {
            'index': self.index,
            'basis_change': [[str(x) for x in row] for row in self.basis_change],
            'gram': [[str(x) for x in row] for row in self.gram],
        }


def dual_lattice(lattice):
    """
    >>> dual_lattice(QuadLattice([[-7, 0], [0, 1]])).index
    7
    """
    ginv = inverse(lattice.gram)
    return Overlattice(ginv, abs(lattice.discriminant), ginv)


def even_sublattice(lattice):
    """
    The even sublattice and its index
    >>> even_sublattice(QuadLattice([[1, 0], [0, 1]]))
    (QuadLattice([[4, -2], [-2, 2]]), 2)
    """
    g = lattice.gram
    n = lattice.rank
    odd = [i for i in range(n) if g[i][i] % 2]
    if not odd:
        return lattice, 1
    p = odd[0]
    # columns: 2 e_p, e_i - e_p for odd i, e_i otherwise
    basis = [[int(i == j) for j in range(n)] for i in range(n)]
    basis[p][p] = 2
    for i in odd[1:]:
        basis[p][i] = -1
    return QuadLattice(congruent(g, basis)), 2


def _mod1(x):
    return tuple(c - math.floor(c) for c in x)


def _span(elements, generators):
    out = set(elements)
    frontier = list(out)
    while frontier:
        grown = []
        for a in frontier:
            for b in generators:
                c = _mod1(tuple(x + y for x, y in zip(a, b)))
                if c not in out:
                    out.add(c)
                    grown.append(c)
        frontier = grown
    return frozenset(out)


def discriminant_group(lattice):
    """
    Elements of L*/L as coordinate vectors reduced mod 1
    >>> len(discriminant_group(QuadLattice([[2, 1], [1, 2]])))
    3
    """
    n = lattice.rank
    ginv = inverse(lattice.gram)
    generators = [_mod1(tuple(ginv[i][j] for i in range(n))) for j in range(n)]
    return _span([(Fraction(0),) * n], generators)


def _overlattice(lattice, subgroup):
    n = lattice.rank
    d = abs(lattice.discriminant)
    columns = [tuple(d * int(i == j) for i in range(n)) for j in range(n)]
    columns += [tuple(int(d * c) for c in x) for x in sorted(subgroup) if any(x)]
    basis = hermite_columns(columns)
    change = tuple(tuple(Fraction(basis[j][i], d) for j in range(n)) for i in range(n))
    gram = integral(congruent(lattice.gram, change))
    return Overlattice(change, len(subgroup), gram)


def overlattices(lattice, keep_roots=()):
    """
    Integral overlattices of L inside L* keeping every given (vector, norm) a root,
    L itself first
    >>> [m.index for m in overlattices(QuadLattice([[4, 0], [0, 1]]))]
    [1, 2]
    >>> overlattices(QuadLattice([[4, 0], [0, 1]]))[1].gram
    ((1, 0), (0, 1))
    """
    g = lattice.gram
    n = lattice.rank
    roots = [(tuple(Fraction(c) for c in u), k) for u, k in keep_roots]

    def admissible(x):
        if bilinear(g, x, x).denominator != 1:
            return False
        return all((2 * bilinear(g, u, x) / k).denominator == 1 for u, k in roots)

    zero = (Fraction(0),) * n
    candidates = sorted(x for x in discriminant_group(lattice) if any(x) and admissible(x))
    trivial = frozenset([zero])
    seen = {trivial}
    queue = [trivial]
    found = []
    while queue:
        h = queue.pop(0)
        found.append(h)
        for x in candidates:
            if x in h or any(bilinear(g, x, y).denominator != 1 for y in h):
                continue
            bigger = _span(h, [x])
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)
    found.sort(key=lambda h: (len(h), sorted(h)))
    log.debug('%d admissible subgroups of a discriminant group of order %d',
              len(found), abs(lattice.discriminant))
    return [_overlattice(lattice, h) for h in found]


def is_root(lattice, e, k):
    """
    Crystallographic condition for a primitive vector of norm k
    >>> L = QuadLattice([[-3, 0, 0, 0], [0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> is_root(L, (1, 0, 3, 0), 6), is_root(L, (1, 0, 3, 0), 2)
    (True, False)
    """
    e = tuple(operator.index(x) for x in e)
    if len(e) != lattice.rank:
        raise errors.RankMismatch(f'vector of length {len(e)} in a lattice of rank {lattice.rank}')
    if content(e) != 1:
        raise errors.NotPrimitive(f'{e} is not primitive')
    if k <= 0 or lattice.norm(e) != k:
        return False
    return all(2 * x % k == 0 for x in lattice.apply(e))
