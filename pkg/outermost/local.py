"""
Local-global arithmetic of rational quadratic forms
"""
import dataclasses
import logging
import math
from fractions import Fraction

import numpy as np
from sympy import factorint, isprime, primefactors
from sympy.functions.combinatorial.numbers import legendre_symbol
from sympy.ntheory import multiplicity

from . import errors
from . import lattice as lat
from . import search
from .config import DEFAULT_HEIGHT

log = logging.getLogger(__name__)

REAL = math.inf


def _integral(q):
    q = Fraction(q)
    if not q:
        raise errors.InvalidArgument('quadratic form entries must be nonzero')
    return q.numerator * q.denominator


def _place(p):
    if p == REAL:
        return p
    if not isinstance(p, int) or not isprime(p):
        raise errors.InvalidArgument(f'not a place: {p!r}')
    return p


def _split(n, p):
    alpha = multiplicity(p, abs(n))
    return alpha, n // p**alpha


def _eps(u):
    return (u % 8 - 1) // 2 % 2


def _omega(u):
    u = u % 8
    return (u * u - 1) // 8 % 2


def hilbert_symbol(a, b, p):
    """
    +1 iff ax^2 + by^2 = 1 is solvable over Q_p (p = REAL for the reals)
    >>> hilbert_symbol(-1, -1, REAL), hilbert_symbol(-1, -1, 2), hilbert_symbol(2, 5, 5)
    (-1, -1, -1)
    >>> hilbert_symbol(3, -3, 7), hilbert_symbol(Fraction(1, 3), 2, 3)
    (1, -1)
    """
    a, b = _integral(a), _integral(b)
    p = _place(p)
    if p == REAL:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        e = _eps(u) * _eps(v) + alpha * _omega(v) + beta * _omega(u)
        return -1 if e % 2 else 1
    sign = -1 if alpha * beta * (p - 1) // 2 % 2 else 1
    return sign * legendre_symbol(u % p, p) ** beta * legendre_symbol(v % p, p) ** alpha


def hasse_invariant(form, p):
    """
    Product of the pairwise Hilbert symbols of a diagonal form
    >>> hasse_invariant((-7, 1, 1, 1), 2), hasse_invariant((-3, 5, 1, 1), 3)
    (1, -1)
    """
    out = 1
    for i, a in enumerate(form):
        for b in form[i + 1:]:
            out *= hilbert_symbol(a, b, p)
    return out


def square_class(q):
    """
    Squarefree integer representative of q modulo rational squares
    >>> square_class(Fraction(-28, 9)), square_class(50)
    (-7, 2)
    """
    n = _integral(q)
    out = -1 if n < 0 else 1
    for prime, e in factorint(abs(n)).items():
        if e % 2:
            out *= prime
    return out


def is_local_square(q, p):
    """
    >>> is_local_square(-7, 2), is_local_square(-7, 3), is_local_square(2, 7)
    (True, False, True)
    """
    n = _integral(q)
    p = _place(p)
    if p == REAL:
        return n > 0
    alpha, u = _split(n, p)
    if alpha % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre_symbol(u % p, p) == 1


def diagonalize_over_Q(g):
    """
    >>> diagonalize_over_Q([[2, -1], [-1, 2]])
    (Fraction(2, 1), Fraction(3, 2))
    """
    return lat.diagonalize(lat.as_matrix(g))


def is_anisotropic_local_rank4(form, p):
    """
    Anisotropy of a rank-4 diagonal form over Q_p
    >>> is_anisotropic_local_rank4((-7, 1, 1, 1), 2), is_anisotropic_local_rank4((-7, 1, 1, 1), 3)
    (True, False)
    """
    form = tuple(Fraction(x) for x in form)
    if len(form) != 4:
        raise errors.RankMismatch(f'expected a form of rank 4, got {len(form)}')
    if _place(p) == REAL:
        return all(x > 0 for x in form) or all(x < 0 for x in form)
    d = math.prod(form)
    return is_local_square(d, p) and hasse_invariant(form, p) == -hilbert_symbol(-1, -1, p)


def _check_rank4(lattice):
    if lattice.rank != 4:
        raise errors.RankMismatch(f'expected a lattice of rank 4, got {lattice.rank}')


def witness_places(lattice):
    """
    Places where a rank-4 lattice is anisotropic
    >>> witness_places(lat.QuadLattice([[-7, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    (2,)
    """
    _check_rank4(lattice)
    form = lat.diagonalize(lattice.gram)
    out = []
    for p in primefactors(2 * abs(lattice.discriminant)):
        if is_anisotropic_local_rank4(form, p):
            out.append(p)
    if 0 in lattice.signature:
        out.append(REAL)
    return tuple(out)


def is_anisotropic_over_Q(lattice):
    """
    >>> is_anisotropic_over_Q(lat.QuadLattice([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    False
    """
    return bool(witness_places(lattice))


def _hasse_profile(lattice, primes):
    form = lat.diagonalize(lattice.gram)
    return tuple((p, hasse_invariant(form, p)) for p in primes)


def rationally_equivalent(a, b):
    """
    >>> rationally_equivalent(lat.QuadLattice([[-15, 0], [0, 1]]), lat.QuadLattice([[-3, 0], [0, 5]]))
    False
    """
    if a.rank != b.rank:
        raise errors.RankMismatch(f'ranks differ: {a.rank} and {b.rank}')
    if a.signature != b.signature:
        return False
    if square_class(a.discriminant) != square_class(b.discriminant):
        return False
    primes = primefactors(2 * abs(a.discriminant * b.discriminant))
    return _hasse_profile(a, primes) == _hasse_profile(b, primes)


def invariant_key(lattice):
    """
    Isometry invariants, equal for isomorphic lattices
    """
    primes = primefactors(2 * abs(lattice.discriminant))
    return (lattice.rank, lattice.signature, lattice.discriminant, lattice.invariant_factors,
            lattice.is_even, _hasse_profile(lattice, primes))


#
#
#
@dataclasses.dataclass(frozen=True)
class Yes:
    basis_change: tuple
    def __bool__(self):
        return True
    def as_dict(self):
        return {'verdict': 'yes', 'basis_change': [list(row) for row in self.basis_change]}


@dataclasses.dataclass(frozen=True)
class No:
    witness: str
    def __bool__(self):
        return False
    def as_dict(self):
        return {'verdict': 'no', 'witness': self.witness}


@dataclasses.dataclass(frozen=True)
class Unknown:
    def __bool__(self):
        return False
    def as_dict(self):
        return {'verdict': 'unknown'}


def distinguishing_invariant(a, b):
    """
    Name of an isometry invariant on which a and b differ, or None
    >>> L7 = lat.QuadLattice([[-7, 0], [0, 1]])
    >>> distinguishing_invariant(L7, lat.QuadLattice([[-15, 0], [0, 1]]))
    'discriminant'
    """
    if a.signature != b.signature:
        return 'signature'
    if a.discriminant != b.discriminant:
        return 'discriminant'
    if a.invariant_factors != b.invariant_factors:
        return 'invariant factors'
    if a.is_even != b.is_even:
        return 'parity'
    primes = primefactors(2 * abs(a.discriminant))
    for (p, x), (_, y) in zip(_hasse_profile(a, primes), _hasse_profile(b, primes)):
        if x != y:
            return f'hasse invariant at p={p}'
    return None


def _images(lattice, k, height):
    # vectors of norm k that may image a basis vector
    if lattice.signature[1] == 0:
        return search.short_vectors(lattice.gram, k)
    w = lattice.apply(search.basic_point(lattice.gram))
    out = []
    for m in range(-height, height + 1):
        out.extend(search.slice_vectors(lattice.gram, w, k, m))
    return tuple(out)


def _as_array(vectors):
    big = any(abs(c) > 10**6 for v in vectors for c in v)
    return np.array(vectors, dtype=object if big else np.int64).reshape(len(vectors), -1)


def find_isometry(a, b, height=DEFAULT_HEIGHT):
    """
    Integer U with U^T A U = B, columns searched among the short vectors of A;
    None when the search space holds none
    """
    n = a.rank
    if a.signature[1] > a.signature[0]:
        a, b = lat.scaled(a, -1), lat.scaled(b, -1)
    if a.signature[1] > 1:
        return None
    target = b.gram
    pools = {}
    for j in range(n):
        images = _images(a, target[j][j], height)
        if not images:
            return None
        pools[j] = _as_array(images)
    order = sorted(range(n), key=lambda j: (len(pools[j]), j))
    gram = np.array(a.gram, dtype=object if any(abs(x) > 10**6 for r in a.gram for x in r) else np.int64)
    chosen = {}

    def extend(depth, pools):
        if depth == n:
            return True
        j = order[depth]
        for x in pools[j]:
            if not depth and next(c for c in x if c) < 0:
                continue
            gx = gram @ x
            narrowed = {}
            for i in order[depth + 1:]:
                keep = pools[i][pools[i] @ gx == target[j][i]]
                if not len(keep):
                    break
                narrowed[i] = keep
            else:
                chosen[j] = x
                if extend(depth + 1, narrowed):
                    return True
        return False

    if not extend(0, pools):
        return None
    return tuple(tuple(int(chosen[j][i]) for j in range(n)) for i in range(n))


def z_isomorphic(a, b, height=DEFAULT_HEIGHT):
    """
    Yes(U) with U^T A U = B, No(invariant) or Unknown()
    >>> g1 = lat.QuadLattice([[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]])
    >>> L1 = lat.QuadLattice([[-7, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> bool(z_isomorphic(g1, L1))
    True
    """
    if a.rank != b.rank:
        raise errors.RankMismatch(f'ranks differ: {a.rank} and {b.rank}')
    witness = distinguishing_invariant(a, b)
    if witness:
        return No(witness)
    if a.gram == b.gram:
        return Yes(tuple(tuple(int(i == j) for j in range(a.rank)) for i in range(a.rank)))
    u = find_isometry(a, b, height)
    if u is None:
        v = find_isometry(b, a, height)
        if v is not None:
            u = lat.integral(lat.inverse(v))
    if u is None:
        log.warning('no isometry within height %d between %s and %s', height, a, b)
        return Unknown()
    if lat.congruent(a.gram, u) != b.gram or abs(lat.determinant(u)) != 1:
        raise AssertionError(f'isometry check failed for {u}')
    return Yes(u)

