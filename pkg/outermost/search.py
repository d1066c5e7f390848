"""
Exact enumeration of lattice vectors in positive-definite slices
"""
import functools
import itertools
import logging
import math

from sympy.polys.domains import ZZ

from . import errors
from . import lattice as lat
from .config import CELL_CACHE_SIZE

log = logging.getLogger(__name__)


def _gcdex(a, b):
    s, t, h = (int(x) for x in ZZ.gcdex(ZZ(a), ZZ(b)))
    if h < 0:
        return -s, -t, -h
    return s, t, h


@functools.lru_cache(CELL_CACHE_SIZE)
def unimodular_completion(w):
    """
    (g, basis) with basis unimodular, w.basis[0] = g = gcd(w) and w.basis[i] = 0 for i > 0
    >>> unimodular_completion((-3, 0, 0))
    (3, ((-1, 0, 0), (0, 1, 0), (0, 0, 1)))
    """
    n = len(w)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    vals = list(w)
    for i in range(1, n):
        a, b = vals[0], vals[i]
        if not b:
            continue
        s, t, h = _gcdex(a, b)
        c0, ci = cols[0], cols[i]
        cols[0] = [s * x + t * y for x, y in zip(c0, ci)]
        cols[i] = [(-b // h) * x + (a // h) * y for x, y in zip(c0, ci)]
        vals[0], vals[i] = h, 0
    if vals[0] < 0:
        cols[0] = [-x for x in cols[0]]
        vals[0] = -vals[0]
    return vals[0], tuple(tuple(c) for c in cols)


def quadric_points(q, lin, c, exact=True):
    """
    Integer points y with y.q.y + 2 lin.y + c = 0 (or <= 0 when not exact),
    q positive definite
    >>> sorted(quadric_points(((1, 0), (0, 1)), (0, 0), -2))
    [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    """
    n = len(q)
    if not n:
        if (c == 0) if exact else (c <= 0):
            yield ()
        return
    a = q[0][0]
    head = q[0][1:]
    l0 = lin[0]
    rest = [row[1:] for row in q[1:]]
    # a * f = (a y0 + s)^2 + h(r) with s = head.r + l0
    q2 = tuple(tuple(a * rest[i][j] - head[i] * head[j] for j in range(n - 1)) for i in range(n - 1))
    lin2 = tuple(a * lin[i + 1] - l0 * head[i] for i in range(n - 1))
    c2 = a * c - l0 * l0
    for r in quadric_points(q2, lin2, c2, exact=False):
        s = l0 + sum(x * y for x, y in zip(head, r))
        room = -(lat.bilinear(q2, r, r) + 2 * sum(x * y for x, y in zip(lin2, r)) + c2)
        t = math.isqrt(room)
        if exact:
            if t * t != room:
                continue
            for u in sorted({t, -t}):
                if (u - s) % a == 0:
                    yield ((u - s) // a,) + r
        else:
            for y0 in range(-((t + s) // a), (t - s) // a + 1):
                yield (y0,) + r


def short_vectors(gram, k):
    """
    All vectors of norm k in a positive-definite lattice
    >>> short_vectors(((1, 0), (0, 2)), 3)
    ((-1, -1), (-1, 1), (1, -1), (1, 1))
    """
    n = len(gram)
    return tuple(sorted(quadric_points(gram, (0,) * n, -k)))


@functools.lru_cache(CELL_CACHE_SIZE)
def slice_vectors(gram, w, k, m):
    """
    All integer x with x.G.x = k and w.x = m, where w.x = 0 is a positive-definite slice
    >>> g = ((-3, 0, 0, 0), (0, 5, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    >>> slice_vectors(g, (-3, 0, 0, 0), 6, -3)[:3]
    ((1, -1, -2, 0), (1, -1, 0, -2), (1, -1, 0, 2))
    """
    g, basis = unimodular_completion(w)
    if m % g:
        return ()
    z0 = m // g
    a = lat.gram_of(gram, basis)
    q = tuple(row[1:] for row in a[1:])
    lin = tuple(z0 * x for x in a[0][1:])
    c = a[0][0] * z0 * z0 - k
    out = []
    for y in quadric_points(q, lin, c):
        z = (z0,) + y
        out.append(tuple(sum(zj * b[i] for zj, b in zip(z, basis)) for i in range(len(w))))
    log.debug('slice k=%s m=%s: %d vectors', k, m, len(out))
    return tuple(sorted(out))


@functools.lru_cache(CELL_CACHE_SIZE)
def root_basis(gram, k):
    """
    Basis of the sublattice {x : 2Gx = 0 mod k} holding every root of norm k
    >>> root_basis(((-3, 0), (0, 5)), 6)
    ((1, 0), (0, 3))
    """
    n = len(gram)
    generators = [tuple(k * int(i == j) for i in range(n)) for j in range(n)]
    generators += [tuple(2 * gram[i][j] for i in range(n)) for j in range(n)]
    h = lat.hermite_columns(generators)
    # the sublattice is the dot-product dual of (1/k) span(h)
    hinv = lat.inverse(tuple(tuple(col[i] for col in h) for i in range(n)))
    return tuple(tuple(int(k * x) for x in row) for row in hinv)


def root_step(gram, w, k):
    """
    Spacing of the values w.x over the roots of norm k
    """
    return lat.content(lat.apply(root_basis(gram, k), w))


@functools.lru_cache(CELL_CACHE_SIZE)
def root_slice(gram, w, k, m):
    """
    Primitive crystallographic roots x of norm k with w.x = m, sorted
    >>> g = ((-3, 0, 0, 0), (0, 5, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    >>> root_slice(g, (-3, 0, 0, 0), 6, -3)
    ((1, 0, -3, 0), (1, 0, 0, -3), (1, 0, 0, 3), (1, 0, 3, 0))
    """
    basis = root_basis(gram, k)
    sub = lat.gram_of(gram, basis)
    ws = lat.apply(basis, w)
    out = []
    for y in slice_vectors(sub, ws, k, m):
        x = tuple(sum(yj * b[i] for yj, b in zip(y, basis)) for i in range(len(w)))
        if lat.content(x) == 1:
            out.append(x)
    return tuple(sorted(out))


def basic_point(gram):
    """
    First basis vector of negative norm, else the primitive vector of smallest
    negative norm in growing boxes (first nonzero coordinate positive, ties lexicographic)
    >>> basic_point(((0, 1), (1, 0)))
    (1, -1)
    """
    n = len(gram)
    for i in range(n):
        if gram[i][i] < 0:
            return tuple(int(i == j) for j in range(n))
    if lat.signature(gram)[1] == 0:
        raise errors.InvalidArgument('positive-definite lattice has no basic point')
    for r in itertools.count(1):
        best = None
        for x in itertools.product(range(-r, r + 1), repeat=n):
            if next((c for c in x if c), 0) <= 0:
                continue
            q = lat.bilinear(gram, x, x)
            if q >= 0 or lat.content(x) != 1:
                continue
            if best is None or (-q, x) < best:
                best = (-q, x)
        if best:
            return best[1]
