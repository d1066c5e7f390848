"""
Width bounds for the outermost edge of a compact acute-angled polyhedron
"""
import contextlib
import dataclasses
import functools
import itertools
import logging
import math
from fractions import Fraction

import sympy
from mpmath import iv, mp
from mpmath.libmp import to_rational

from . import errors

log = logging.getLogger(__name__)

DENOMINATORS = (2, 3, 4, 6)
DPS = 30
INTERVAL_DPS = 20
FIELDS = ('alpha12', 'alpha13', 'alpha23', 'alpha14', 'alpha24')


@dataclasses.dataclass(frozen=True, order=True)
class AngleSet:
    """
    Dihedral angles pi/k at the outermost edge F1 n F2 and its end faces F3, F4,
    stored as the denominators k
    >>> AngleSet(4, 3, 2, 2, 3).canonical()
    AngleSet(alpha12=4, alpha13=2, alpha23=3, alpha14=3, alpha24=2)
    >>> str(AngleSet(6, 2, 2, 2, 2))
    '(pi/6, pi/2, pi/2, pi/2, pi/2)'
    """
    alpha12: int
    alpha13: int
    alpha23: int
    alpha14: int
    alpha24: int

    def __post_init__(self):
        for name in FIELDS:
            if getattr(self, name) not in DENOMINATORS:
                raise errors.InvalidArgument(f'{name} must be pi/k with k in {DENOMINATORS}')
    def __str__(self):
        return '(' + ', '.join(f'pi/{k}' for k in self) + ')'
    def __iter__(self):
        return iter(dataclasses.astuple(self))

    def is_valid(self):
        """
        Both vertex triples have angle sum above pi
        """
        k12, k13, k23, k14, k24 = self
        return (Fraction(1, k12) + Fraction(1, k13) + Fraction(1, k23) > 1
                and Fraction(1, k12) + Fraction(1, k14) + Fraction(1, k24) > 1)

    def swap_faces(self):
        # F1 <-> F2
        return AngleSet(self.alpha12, self.alpha23, self.alpha13, self.alpha24, self.alpha14)
    def swap_ends(self):
        # F3 <-> F4
        return AngleSet(self.alpha12, self.alpha14, self.alpha24, self.alpha13, self.alpha23)
    def orbit(self):
        a = self.swap_ends()
        return frozenset((self, self.swap_faces(), a, a.swap_faces()))
    def canonical(self):
        return min(self.orbit())
    def as_dict(self):
        return {name: f'pi/{k}' for name, k in zip(FIELDS, self)}


@contextlib.contextmanager
def _precision(ctx, dps):
    saved = ctx.dps
    ctx.dps = dps
    try:
        yield ctx
    finally:
        ctx.dps = saved


def _upper(x):
    p, q = to_rational(x._mpi_[1])
    return Fraction(p, q)


def _lower(x):
    p, q = to_rational(x._mpi_[0])
    return Fraction(p, q)


@functools.lru_cache(maxsize=None)
def _cofactors():
    """
    G33, G44 and the coefficients c1, c0 of G34 = c1 T + c0 for the Gram
    matrix of unit normals, as polynomials in the five cosines
    """
    c12, c13, c23, c14, c24, t = sympy.symbols('c12 c13 c23 c14 c24 T')
    gram = sympy.Matrix([
        [1, -c12, -c13, -c14],
        [-c12, 1, -c23, -c24],
        [-c13, -c23, 1, -t],
        [-c14, -c24, -t, 1],
    ])
    g34 = sympy.expand(gram.cofactor(2, 3))
    exprs = (gram.cofactor(2, 2), gram.cofactor(3, 3), g34.coeff(t, 1), g34.coeff(t, 0))
    out = []
    for expr in exprs:
        poly = sympy.Poly(sympy.expand(expr), c12, c13, c23, c14, c24)
        out.append(tuple((int(coef), exps) for exps, coef in poly.terms()))
    return tuple(out)


def _evaluate(poly, values):
    return sum(coef * math.prod(v**e for v, e in zip(values, exps)) for coef, exps in poly)


def _cosines(ctx, angles):
    return tuple(ctx.cos(ctx.pi / k) for k in angles)


def _plane_cosines(ctx, angles):
    c12, c13, c23, c14, c24 = _cosines(ctx, angles)
    s = {k: ctx.sqrt(1 - c * c) for k, c in zip(FIELDS, (c12, c13, c23, c14, c24))}
    return (
        (c23 + c12 * c13) / (s['alpha12'] * s['alpha13']),
        (c24 + c12 * c14) / (s['alpha12'] * s['alpha14']),
        (c13 + c12 * c23) / (s['alpha12'] * s['alpha23']),
        (c14 + c12 * c24) / (s['alpha12'] * s['alpha24']),
    )


def plane_angles(angles):
    """
    Plane angles at the edge's end vertices, in radians
    >>> [round(float(a), 6) for a in plane_angles(AngleSet(4, 2, 3, 3, 2))]
    [0.785398, 0.955317, 0.955317, 0.785398]
    """
    with mp.workdps(DPS):
        cosines = _plane_cosines(mp, angles)
        if any(abs(c) >= 1 for c in cosines):
            raise errors.DegenerateVertex(f'no spherical triangle at a vertex of {angles}')
        return tuple(+mp.acos(c) for c in cosines)


def _a0(ctx, angles):
    # tanh(ln cot(a/4)) = cos(a/2)
    return ctx.cos(ctx.pi / (2 * angles.alpha12))


def _cosh_f(ctx, a0, cos_a, cos_b):
    x = a0 * ctx.sqrt((1 + cos_a) / (1 - cos_a))
    y = a0 * ctx.sqrt((1 + cos_b) / (1 - cos_b))
    return ctx.sqrt(1 + x * x) * ctx.sqrt(1 + y * y) + x * y


def _labelings(ctx, angles, both_labelings):
    p1, p2, p3, p4 = _plane_cosines(ctx, angles)
    return ((p3, p4), (p1, p2)) if both_labelings else ((p3, p4),)


def edge_length_bound(angles, both_labelings=True):
    """
    Upper bound F for the length of the outermost edge
    >>> round(float(edge_length_bound(AngleSet(6, 2, 2, 2, 2))), 5)
    1.71415
    """
    plane_angles(angles)
    with mp.workdps(DPS):
        a0 = _a0(mp, angles)
        return +max(mp.acosh(_cosh_f(mp, a0, a, b)) for a, b in _labelings(mp, angles, both_labelings))


@dataclasses.dataclass(frozen=True)
class EdgeBound:
    """
    Width bound of one angle set, with its interval enclosure
    """
    angles: AngleSet
    t: float
    interval: tuple
    display: Fraction
    a0: float
    cosh_f: float
    g33: float
    g44: float
    c1: float
    c0: float
    published: Fraction = None

    def as_dict(self):
        return {
            'angle_set': str(self.angles),
            't_raw': f'{self.t:.8f}',
            't_display': f'{float(self.display):.2f}',
            'interval': [str(x) for x in self.interval],
            't_published': None if self.published is None else f'{float(self.published):.2f}',
        }


def _width(ctx, angles, labeling, a0, parts):
    g33, g44, c1, c0 = parts
    return (_cosh_f(ctx, a0, *labeling) * ctx.sqrt(g33 * g44) - c0) / c1


def width_bound(angles, both_labelings=True):
    """
    Bound t with |(u3, u4)| < t sqrt((u3,u3)(u4,u4)) for the roots of the end faces
    >>> b = width_bound(AngleSet(6, 2, 2, 2, 2))
    >>> round(b.t, 6), b.display
    (2.866025, Fraction(287, 100))
    >>> width_bound(AngleSet(4, 2, 3, 3, 2), both_labelings=False).display
    Fraction(207, 50)
    """
    plane_angles(angles)
    polys = _cofactors()
    with mp.workdps(DPS):
        parts = tuple(_evaluate(p, _cosines(mp, angles)) for p in polys)
        g33, g44, c1, c0 = parts
        if c1 <= 0 or g33 * g44 <= 0:
            raise errors.IllposedAngleSet(f'cofactors of {angles} do not give a width bound')
        a0 = _a0(mp, angles)
        values = [_width(mp, angles, lab, a0, parts) for lab in _labelings(mp, angles, both_labelings)]
        t = max(values)
        cosh_f = max(_cosh_f(mp, a0, *lab) for lab in _labelings(mp, angles, both_labelings))
        if t <= 0:
            raise errors.IllposedAngleSet(f'{angles} gives a non-positive width bound {float(t):.6f}')
    with _precision(iv, INTERVAL_DPS):
        iparts = tuple(_evaluate(p, _cosines(iv, angles)) for p in polys)
        ia0 = _a0(iv, angles)
        enclosures = [_width(iv, angles, lab, ia0, iparts) for lab in _labelings(iv, angles, both_labelings)]
        interval = (max(_lower(x) for x in enclosures), max(_upper(x) for x in enclosures))
    display = Fraction(math.ceil(100 * interval[1]), 100)
    return EdgeBound(angles, float(t), interval, display, float(a0), float(cosh_f),
                     float(g33), float(g44), float(c1), float(c0))


#
#
#
def lemma_angle_sets():
    """
    Orbit representatives of the angle sets with both vertex sums above pi
    >>> len(lemma_angle_sets())
    45
    """
    found = set()
    for ks in itertools.product(DENOMINATORS, repeat=5):
        a = AngleSet(*ks)
        if a.is_valid():
            found.add(a.canonical())
    return tuple(sorted(found))


@functools.lru_cache(maxsize=None)
def valid_angle_sets():
    """
    Representatives with a width bound in the published labeling
    >>> len(valid_angle_sets()), AngleSet(2, 2, 6, 2, 6) in valid_angle_sets()
    (44, False)
    """
    out = []
    for a in lemma_angle_sets():
        try:
            width_bound(a, both_labelings=False)
        except errors.IllposedAngleSet as e:
            log.info('skipping %s: %s', a, e)
            continue
        out.append(a)
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class IllposedRow:
    """
    Orbit without a width bound in the published labeling; bound holds the
    both-labelings value when that one is well posed
    """
    angles: AngleSet
    reason: str
    bound: EdgeBound = None

    def as_dict(self):
        row = {'angle_set': str(self.angles), 't_raw': None, 't_display': None, 'interval': None}
        if self.bound is not None:
            row.update(self.bound.as_dict())
        row.update(t_published=None, reason=self.reason)
        return row


@functools.lru_cache(maxsize=None)
def bounds_table(both_labelings=True, flag_illposed=False):
    """
    One EdgeBound per orbit with a published width bound; published holds the
    value in the published labeling next to t
    >>> table = bounds_table()
    >>> len(table), max(row.published for row in table)
    (44, Fraction(207, 50))
    """
    rows = []
    for a in lemma_angle_sets():
        try:
            published = width_bound(a, both_labelings=False)
        except errors.IllposedAngleSet as e:
            log.warning('no published width bound for %s: %s', a, e)
            if flag_illposed:
                rows.append(IllposedRow(a, str(e), _sound_bound(a) if both_labelings else None))
            continue
        row = width_bound(a, both_labelings=True) if both_labelings else published
        if row.t < 1:
            log.warning('width bound %.6f of %s is below 1', row.t, a)
        rows.append(dataclasses.replace(row, published=published.display))
    log.info('bounds table: %d rows', len(rows))
    return tuple(rows)


def _sound_bound(angles):
    try:
        return width_bound(angles, both_labelings=True)
    except errors.IllposedAngleSet:
        return None


@functools.lru_cache(maxsize=None)
def table_lookup(angles, both_labelings=True):
    """
    Display bound for any member of an orbit, None when the orbit has none
    >>> table_lookup(AngleSet(6, 2, 2, 2, 2))
    Fraction(287, 100)
    >>> table_lookup(AngleSet(4, 3, 2, 2, 3), both_labelings=False)
    Fraction(207, 50)
    """
    if not angles.is_valid():
        return None
    try:
        return width_bound(angles.canonical(), both_labelings).display
    except errors.IllposedAngleSet:
        return None
