"""
Minkowski vector model: reflections and the mutual position of mirrors
"""
import dataclasses
import enum
from fractions import Fraction

from . import errors

COXETER_ORDERS = {
    Fraction(0): 2,
    Fraction(1, 4): 3,
    Fraction(1, 2): 4,
    Fraction(3, 4): 6,
}


class Position(enum.Enum):
    INTERSECTING = 'intersecting'
    PARALLEL = 'parallel'
    DIVERGENT = 'divergent'


@dataclasses.dataclass(frozen=True)
class MirrorRelation:
    """
    Relative position of two mirrors H_e, H_f
    >>> mirror_relation(2, 2, -1).order
    3
    """
    position: Position
    cos_sq: Fraction
    sign: int

    @property
    def order(self):
        """
        Coxeter order m of an intersecting pair meeting at pi/m, else None
        """
        if self.position is not Position.INTERSECTING or self.sign > 0:
            return None
        return COXETER_ORDERS.get(self.cos_sq)
    @property
    def is_coxeter(self):
        return self.position is not Position.INTERSECTING or self.order is not None
    @property
    def cosh_sq(self):
        """
        cosh^2 of the distance between divergent mirrors
        """
        return self.cos_sq if self.position is Position.DIVERGENT else None

    def as_dict(self):
        return {
            'position': self.position.value,
            'cos_sq': str(self.cos_sq),
            'sign': self.sign,
            'order': self.order,
        }


def mirror_relation(gram_ee, gram_ff, gram_ef):
    """
    Classify two mirrors from their normals' Gram entries
    >>> r = mirror_relation(5, 5, -70)
    >>> r.position, r.cos_sq
    (<Position.DIVERGENT: 'divergent'>, Fraction(196, 1))
    >>> mirror_relation(1, 1, 0).order, mirror_relation(1, 1, -1).position
    (2, <Position.PARALLEL: 'parallel'>)
    """
    if gram_ee <= 0 or gram_ff <= 0:
        raise errors.NotSpacelike(f'mirror normals must have positive norm: {gram_ee}, {gram_ff}')
    c2 = Fraction(gram_ef * gram_ef, gram_ee * gram_ff)
    if c2 < 1:
        position = Position.INTERSECTING
    elif c2 == 1:
        position = Position.PARALLEL
    else:
        position = Position.DIVERGENT
    sign = (gram_ef > 0) - (gram_ef < 0)
    return MirrorRelation(position, c2, sign)


def reflect(lattice, e, x):
    """
    x - 2(e,x)/(e,e) e
    >>> from outermost.lattice import QuadLattice
    >>> L = QuadLattice([[-7, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> reflect(L, (0, 1, -1, 0), (0, 1, 0, 0))
    (0, 0, 1, 0)
    """
    k = lattice.norm(e)
    if k <= 0:
        raise errors.NotSpacelike(f'cannot reflect in a vector of norm {k}')
    c = Fraction(2 * lattice.inner(e, x), k)
    out = tuple(xi - c * ei for xi, ei in zip(x, e))
    if all(v.denominator == 1 for v in out):
        return tuple(int(v) for v in out)
    return out


def point_mirror_distance_sq(lattice, v0, a):
    """
    sinh^2 of the distance from the point v0 to the mirror H_a
    >>> from outermost.lattice import QuadLattice
    >>> L = QuadLattice([[-3, 0, 0, 0], [0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> point_mirror_distance_sq(L, (1, 0, 0, 0), (1, 0, 3, 0))
    Fraction(1, 2)
    """
    n0 = lattice.norm(v0)
    k = lattice.norm(a)
    if n0 >= 0:
        raise errors.InvalidArgument(f'basic point must have negative norm, got {n0}')
    if k <= 0:
        raise errors.InvalidArgument(f'mirror normal must have positive norm, got {k}')
    m = lattice.inner(a, v0)
    return Fraction(m * m, k * -n0)
