"""
Vinberg's algorithm for the reflection subgroup generated by roots of given norms
"""
import collections
import dataclasses
import enum
import heapq
import logging
from fractions import Fraction

from sympy import divisors

from . import coxeter
from . import errors
from . import hyperbolic as hyp
from . import lattice as lat
from . import search
from .config import DEFAULT_BUDGET
from .lattice import Root

log = logging.getLogger(__name__)

MAX_PERTURBATION = 1000


class Verdict(enum.Enum):
    COMPACT = 'compact'
    FINITE_VOLUME = 'finite volume'
    BUDGET_EXHAUSTED = 'budget exhausted'
    BAD_PAIR = 'bad pair'

    @property
    def is_finite(self):
        return self in (Verdict.COMPACT, Verdict.FINITE_VOLUME)


class NormPolicy:
    """
    Norms of the roots a run may accept
    >>> NormPolicy.parse('1,2'), NormPolicy.parse('all')
    (NormPolicy.explicit((1, 2)), NormPolicy.ALL)
    """
    ALL = None
    def __init__(self, allowed=None):
        if allowed is not None:
            allowed = tuple(sorted(set(int(k) for k in allowed)))
            if not allowed or allowed[0] <= 0:
                raise errors.InvalidArgument(f'root norms must be positive: {allowed}')
        self.allowed = allowed
    def __repr__(self):
        if self.allowed is None:
            return 'NormPolicy.ALL'
        return f'NormPolicy.explicit({self.allowed})'
    def __eq__(self, other):
        return isinstance(other, NormPolicy) and self.allowed == other.allowed
    def __hash__(self):
        return hash(self.allowed)
    def __str__(self):
        return 'all' if self.allowed is None else ','.join(map(str, self.allowed))

    @classmethod
    def explicit(cls, norms):
        return cls(norms)
    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text == 'all':
            return cls.ALL
        try:
            norms = [int(x) for x in text.replace(' ', '').split(',')]
        except ValueError:
            raise errors.InvalidArgument(f'not a norm list: {text!r}') from None
        return cls(norms)

    def norms(self, lattice):
        if self.allowed is None:
            return root_norms(lattice)
        return self.allowed


NormPolicy.ALL = NormPolicy()
ONE_TWO = NormPolicy.explicit((1, 2))


def root_norms(lattice):
    """
    Norms a primitive root can have: divisors of twice the last invariant factor
    >>> root_norms(lat.QuadLattice([[-3, 0, 0, 0], [0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    (1, 2, 3, 5, 6, 10, 15, 30)
    """
    return tuple(divisors(2 * lattice.invariant_factors[-1]))


def choose_basic_point(lattice):
    """
    >>> choose_basic_point(lat.QuadLattice([[-7, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    (1, 0, 0, 0)
    """
    if not lattice.is_hyperbolic:
        raise errors.InvalidArgument(f'lattice of signature {lattice.signature} is not hyperbolic')
    return search.basic_point(lattice.gram)


def stabilizer_chamber(lattice, v0, norms):
    """
    Simple roots of a chamber of the finite reflection group fixing v0
    >>> L = lat.QuadLattice([[-3, 0, 0, 0], [0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> stabilizer_chamber(L, (1, 0, 0, 0), root_norms(L))
    (Root(vector=(0, 0, 1, -1), norm=2), Root(vector=(0, 0, -1, 0), norm=1), Root(vector=(0, -1, 0, 0), norm=5))
    """
    w = lattice.apply(v0)
    roots = [Root(x, k) for k in norms for x in search.root_slice(lattice.gram, w, k, 0)]
    if not roots:
        return ()
    _, basis = search.unimodular_completion(w)
    for t in range(2, MAX_PERTURBATION):
        p = tuple(sum(t**i * b[c] for i, b in enumerate(basis[1:])) for c in range(lattice.rank))
        values = [lattice.inner(r.vector, p) for r in roots]
        if 0 in values:
            continue
        distances = {Fraction(v * v, r.norm) for v, r in zip(values, roots)}
        if 2 * len(distances) == len(roots):
            break
    else:
        raise AssertionError(f'no generic point in the stabilizer of {v0}')
    positive = sorted((Fraction(v * v, r.norm), r.vector, r) for v, r in zip(values, roots) if v < 0)
    chamber = []
    for _, _, r in positive:
        if all(lattice.inner(r.vector, s.vector) <= 0 for s in chamber):
            chamber.append(r)
    log.debug('stabilizer of %s: %d roots, %d simple', v0, len(roots), len(chamber))
    return tuple(chamber)


#
#
#
@dataclasses.dataclass(frozen=True)
class VinbergReport:
    lattice: lat.QuadLattice
    v0: tuple
    norms: tuple
    roots: tuple
    priorities: tuple
    verdict: Verdict
    bad_finite: bool
    witness: tuple = None

    @property
    def gram(self):
        return lat.gram_of(self.lattice.gram, [r.vector for r in self.roots])
    @property
    def diagram(self):
        return coxeter.build_diagram(self.roots, self.gram, self.lattice.dimension)

    def as_dict(self):
        return {
            'gram': [list(row) for row in self.lattice.gram],
            'basic_point': list(self.v0),
            'norms': list(self.norms),
            'verdict': self.verdict.value,
            'roots': [dict(r.as_dict(), priority=str(q)) for r, q in zip(self.roots, self.priorities)],
            'root_gram': [list(row) for row in self.gram],
            'bad_finite': self.bad_finite,
            'witness': None if self.witness is None else [r.as_dict() for r in self.witness],
        }


class Vinberg:
    """
    Vinberg engine: roots in order of increasing priority (a,v0)^2/(a,a)
    >>> L = lat.QuadLattice([[-3, 0, 0, 0], [0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    >>> engine = Vinberg(L, NormPolicy.ALL)
    >>> len(engine.roots), engine.next_root()
    (3, Root(vector=(1, 0, 0, 3), norm=6))
    """
    def __init__(self, lattice, policy=NormPolicy.ALL, budget=DEFAULT_BUDGET, v0=None):
        if not lattice.is_hyperbolic:
            raise errors.InvalidArgument(f'lattice of signature {lattice.signature} is not hyperbolic')
        self.lattice = lattice
        self.policy = policy
        self.budget = budget
        self.norms = policy.norms(lattice)
        self.v0 = tuple(v0) if v0 is not None else choose_basic_point(lattice)
        if lattice.norm(self.v0) >= 0:
            raise errors.InvalidArgument(f'basic point {self.v0} does not have negative norm')
        self.w = lattice.apply(self.v0)
        self.roots = list(stabilizer_chamber(lattice, self.v0, self.norms))
        self.priorities = [Fraction(0)] * len(self.roots)
        self._heap = []
        self._steps = {}
        for k in self.norms:
            step = search.root_step(lattice.gram, self.w, k)
            if step:
                self._steps[k] = step
                heapq.heappush(self._heap, (Fraction(step * step, k), k, 1))
        self._pending = collections.deque()

    def _refill(self):
        if not self._heap or self._heap[0][0] > self.budget.max_priority:
            return False
        top = self._heap[0][0]
        batch = []
        while self._heap and self._heap[0][0] == top:
            _, k, j = heapq.heappop(self._heap)
            step = self._steps[k]
            batch.extend(Root(x, k) for x in search.root_slice(self.lattice.gram, self.w, k, -j * step))
            heapq.heappush(self._heap, (Fraction((j + 1) ** 2 * step * step, k), k, j + 1))
        self._pending.extend((top, r) for r in sorted(batch))
        return True

    def next_root(self):
        """
        Next accepted root, or None when the priority budget is exhausted
        """
        while True:
            while not self._pending:
                if not self._refill():
                    return None
            q, r = self._pending.popleft()
            if all(self.lattice.inner(r.vector, s.vector) <= 0 for s in self.roots):
                if not lat.is_root(self.lattice, r.vector, r.norm):
                    raise AssertionError(f'{r.vector} is not a root of norm {r.norm}')
                self.roots.append(r)
                self.priorities.append(q)
                log.debug('root %d: %s norm %d priority %s', len(self.roots), r.vector, r.norm, q)
                return r

    def diagram(self):
        gram = lat.gram_of(self.lattice.gram, [r.vector for r in self.roots])
        return coxeter.build_diagram(self.roots, gram, self.lattice.dimension)

    def _bad_pair(self, d):
        """
        Most divergent pair of bad roots, once the newest root forms one;
        earlier pairs stopped the run when they appeared
        """
        i = len(self.roots) - 1
        if self.roots[i].norm <= coxeter.BAD_NORM:
            return None
        pairs = [(d.relation(j, i).cos_sq, j) for j in d.bad
                 if j < i and d.relation(j, i).position is not hyp.Position.INTERSECTING]
        if not pairs:
            return None
        _, j = max(pairs)
        return self.roots[j], self.roots[i]

    def run(self, stop_on_bad_pair=True):
        n = self.lattice.dimension
        while True:
            d = self.diagram()
            verdict = None
            if len(self.roots) > n:
                volume = coxeter.volume_verdict(d)
                if volume is coxeter.Volume.COMPACT:
                    verdict = Verdict.COMPACT
                elif volume is coxeter.Volume.FINITE_VOLUME:
                    verdict = Verdict.FINITE_VOLUME
            witness = self._bad_pair(d) if stop_on_bad_pair and len(self.roots) else None
            if verdict is None and witness:
                verdict = Verdict.BAD_PAIR
            if verdict is None and len(self.roots) >= self.budget.max_roots:
                verdict = Verdict.BUDGET_EXHAUSTED
            if verdict is None and self.next_root() is None:
                verdict = Verdict.BUDGET_EXHAUSTED
                d = None
            if verdict is not None:
                break
        d = d or self.diagram()
        if witness is None:
            indices = coxeter.bad_witness(d)
            witness = indices and tuple(self.roots[i] for i in indices)
        log.info('%s: %d roots, %s', self.lattice, len(self.roots), verdict.value)
        if verdict is Verdict.BUDGET_EXHAUSTED:
            log.warning('budget %s exhausted for %s', self.budget.as_dict(), self.lattice)
        return VinbergReport(
            lattice=self.lattice,
            v0=self.v0,
            norms=self.norms,
            roots=tuple(self.roots),
            priorities=tuple(self.priorities),
            verdict=verdict,
            bad_finite=coxeter.bad_group_finite(d),
            witness=witness or None,
        )


def run(lattice, policy=NormPolicy.ALL, budget=DEFAULT_BUDGET, v0=None, stop_on_bad_pair=True):
    return Vinberg(lattice, policy, budget, v0).run(stop_on_bad_pair)


#
#
#
class Reflectivity(enum.Enum):
    REFLECTIVE12 = '(1,2)-reflective'
    NOT_REFLECTIVE12 = 'not (1,2)-reflective'
    REFLECTIVE = 'reflective'
    UNDECIDED = 'undecided'


@dataclasses.dataclass(frozen=True)
class ReflectivityVerdict:
    kind: Reflectivity
    witness: tuple = None
    reports: tuple = ()

    def __bool__(self):
        return self.kind in (Reflectivity.REFLECTIVE12, Reflectivity.REFLECTIVE)

    def as_dict(self):
        return {
            'verdict': self.kind.value,
            'witness': None if self.witness is None else [r.as_dict() for r in self.witness],
            'runs': [r.as_dict() for r in self.reports],
        }


def one_two_reflectivity(lattice, budget=DEFAULT_BUDGET):
    """
    (1,2)-reflectivity: the unrestricted polyhedron decides through its bad
    facets, otherwise the {1,2} polyhedron must close up
    """
    full = run(lattice, NormPolicy.ALL, budget)
    if full.verdict is Verdict.BAD_PAIR or not full.bad_finite:
        return ReflectivityVerdict(Reflectivity.NOT_REFLECTIVE12, full.witness, (full,))
    if full.verdict.is_finite:
        return ReflectivityVerdict(Reflectivity.REFLECTIVE12, None, (full,))
    restricted = run(lattice, ONE_TWO, budget)
    if restricted.verdict.is_finite:
        return ReflectivityVerdict(Reflectivity.REFLECTIVE12, None, (full, restricted))
    return ReflectivityVerdict(Reflectivity.UNDECIDED, None, (full, restricted))


def reflectivity(lattice, budget=DEFAULT_BUDGET):
    report = run(lattice, NormPolicy.ALL, budget, stop_on_bad_pair=False)
    kind = Reflectivity.REFLECTIVE if report.verdict.is_finite else Reflectivity.UNDECIDED
    return ReflectivityVerdict(kind, None, (report,))


def prefix_stable(a, b):
    """
    Whether one report's roots extend the other's
    """
    short, long = sorted((a.roots, b.roots), key=len)
    return all(x == y for x, y in zip(short, long))
