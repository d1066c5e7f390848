"""
Classification of (1,2)-reflective anisotropic lattices of rank 4 from the
configurations of roots around an outermost edge
"""
import concurrent.futures
import dataclasses
import itertools
import logging
from fractions import Fraction

from . import bounds
from . import hyperbolic as hyp
from . import lattice as lat
from . import local
from . import vinberg
from .config import DEFAULT_BUDGET, DEFAULT_HEIGHT

log = logging.getLogger(__name__)

NORMS = (1, 2)
# pairs of roots whose mirrors meet along the edge or at its end vertices
EDGE_PAIRS = ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3))
SWAPS = ((0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2))


@dataclasses.dataclass(frozen=True)
class EdgeConfiguration:
    """
    Gram matrix of the roots u1, u2 (faces through the edge) and u3, u4 (its end faces)
    """
    gram: tuple
    angles: bounds.AngleSet
    t_used: Fraction

    @property
    def lattice(self):
        return lat.QuadLattice(self.gram)

    def as_dict(self):
        return {
            'gram': [list(row) for row in self.gram],
            'angle_set': str(self.angles),
            't_used': str(self.t_used),
        }


def _permuted(gram, perm):
    return tuple(tuple(gram[i][j] for j in perm) for i in perm)


def _canonical_gram(gram):
    return min(_permuted(gram, p) for p in SWAPS)


def _angle_set(gram):
    orders = []
    for i, j in EDGE_PAIRS:
        rel = hyp.mirror_relation(gram[i][i], gram[j][j], gram[i][j])
        if rel.order is None:
            return None
        orders.append(rel.order)
    return bounds.AngleSet(*orders)


def _off_diagonal(k, l):
    return (0, -1) if 2 in (k, l) else (0,)


def _positive_definite(gram, idx):
    return all(lat.determinant([[gram[i][j] for j in idx[:n]] for i in idx[:n]]) > 0
               for n in range(1, len(idx) + 1))


def enumerate_configurations(both_labelings=True):
    """
    Every admissible Gram matrix of roots of norms 1, 2 at an outermost edge,
    one per orbit of the swaps u1 <-> u2 and u3 <-> u4
    """
    found = {}
    for diag in itertools.product(NORMS, repeat=4):
        choices = [_off_diagonal(diag[i], diag[j]) for i, j in EDGE_PAIRS]
        for values in itertools.product(*choices):
            g = [[0] * 4 for _ in range(4)]
            for i in range(4):
                g[i][i] = diag[i]
            for (i, j), v in zip(EDGE_PAIRS, values):
                g[i][j] = g[j][i] = v
            angles = _angle_set(g)
            if angles is None or not angles.is_valid():
                continue
            t = bounds.table_lookup(angles, both_labelings)
            if t is None:
                continue
            if not (_positive_definite(g, (0, 1, 2)) and _positive_definite(g, (0, 1, 3))):
                continue
            g34 = 0
            while Fraction(g34 * g34) < t * t * diag[2] * diag[3]:
                g[2][3] = g[3][2] = -g34
                gram = lat.as_matrix(g)
                if lat.determinant(gram) < 0:
                    key = _canonical_gram(gram)
                    if key not in found:
                        found[key] = EdgeConfiguration(gram, angles, t)
                g34 += 1
    out = [found[k] for k in sorted(found)]
    log.info('%d edge configurations', len(out))
    return out


#
#
#
@dataclasses.dataclass(frozen=True)
class LatticeClass:
    """
    Isometry class: canonical representative, all members found, and whether an
    isometry search came back inconclusive against another class
    """
    representative: lat.QuadLattice
    members: tuple
    flagged: bool = False

    def as_dict(self):
        return {
            'gram': [list(row) for row in self.representative.gram],
            'discriminant': self.representative.discriminant,
            'members': len(self.members),
            'flagged': self.flagged,
        }


def _group(lattices, height):
    groups = []  # [members, flagged]
    for L in lattices:
        flagged = False
        for group in groups:
            verdict = local.z_isomorphic(group[0][0], L, height)
            if verdict:
                group[0].append(L)
                break
            if isinstance(verdict, local.Unknown):
                flagged = group[1] = True
        else:
            groups.append([[L], flagged])
    return groups


def anisotropic_classes(configs, height=DEFAULT_HEIGHT):
    """
    Anisotropic configuration lattices up to isometry
    """
    buckets = {}
    for c in configs:
        L = c.lattice if isinstance(c, EdgeConfiguration) else c
        if not local.is_anisotropic_over_Q(L):
            continue
        buckets.setdefault(local.invariant_key(L), []).append(L)
    log.info('%d anisotropic lattices in %d invariant buckets',
             sum(len(b) for b in buckets.values()), len(buckets))
    out = []
    for key in sorted(buckets, key=repr):
        for members, flagged in _group(buckets[key], height):
            rep = min(members, key=lambda L: L.sort_key)
            out.append(LatticeClass(rep, tuple(members), flagged))
    out.sort(key=lambda c: c.representative.sort_key)
    log.info('%d isometry classes', len(out))
    return out


@dataclasses.dataclass(frozen=True)
class Saturation:
    """
    Candidates closed under root-preserving overlattices, with the extension
    pairs and the even-sublattice relation between candidate indices
    """
    candidates: tuple
    extensions: tuple
    even_sublattices: tuple

    def __iter__(self):
        return iter(self.candidates)
    def __len__(self):
        return len(self.candidates)
    def __getitem__(self, i):
        return self.candidates[i]


def _find(candidates, L, height):
    key = local.invariant_key(L)
    for i, (M, _) in enumerate(candidates):
        if local.invariant_key(M) == key and local.z_isomorphic(M, L, height):
            return i
    return None


def _transport(overlattice, roots):
    inv = lat.inverse(overlattice.basis_change)
    return [(lat.integral([lat.apply(inv, u)])[0], k) for u, k in roots]


def saturate(classes, even_closure=False, height=DEFAULT_HEIGHT):
    """
    Close the class representatives under overlattices keeping the configuration
    roots (the basis vectors) roots; with even_closure also under even sublattices
    """
    candidates = []
    for c in classes:
        L = c.representative if isinstance(c, LatticeClass) else c
        roots = [(tuple(int(i == j) for j in range(L.rank)), L.gram[i][i]) for i in range(L.rank)]
        candidates.append((L, roots))
    extensions = set()
    even = []
    i = 0
    while i < len(candidates):
        L, roots = candidates[i]
        for over in lat.overlattices(L, roots)[1:]:
            M = over.lattice
            j = _find(candidates, M, height)
            if j is None:
                log.info('new extension of index %d: %s', over.index, M)
                candidates.append((M, _transport(over, roots)))
                j = len(candidates) - 1
            extensions.add((i, j))
        if not L.is_even:
            E, _ = lat.even_sublattice(L)
            j = _find(candidates, E, height)
            if j is None and even_closure:
                candidates.append((E, []))
                j = len(candidates) - 1
            even.append((i, j))
        i += 1
    return Saturation(tuple(L for L, _ in candidates), tuple(sorted(extensions)), tuple(even))


@dataclasses.dataclass(frozen=True)
class ExtensionClass:
    """
    Overlattices of one index and isometry class; subgroups counts the
    subgroups of the discriminant group giving them
    """
    overlattice: lat.Overlattice
    subgroups: int

    @property
    def index(self):
        return self.overlattice.index

    def as_dict(self):
        return dict(self.overlattice.as_dict(), subgroups=self.subgroups)


def extension_classes(lattice, keep_roots=(), height=DEFAULT_HEIGHT):
    """
    Root-preserving overlattices up to isometry, in the order overlattices lists them
    >>> L = lat.QuadLattice([[4, 0], [0, 1]])
    >>> [(c.index, c.subgroups) for c in extension_classes(L)]
    [(1, 1), (2, 1)]
    """
    groups = []  # [overlattice, count]
    for over in lat.overlattices(lattice, keep_roots):
        M = over.lattice
        for group in groups:
            N = group[0].lattice
            if group[0].index == over.index and local.invariant_key(N) == local.invariant_key(M) \
                    and local.z_isomorphic(N, M, height):
                group[1] += 1
                break
        else:
            groups.append([over, 1])
    log.info('%d overlattices in %d isometry classes', sum(n for _, n in groups), len(groups))
    return [ExtensionClass(over, n) for over, n in groups]


#
#
#
@dataclasses.dataclass(frozen=True)
class ClassificationReport:
    configurations: tuple
    classes: tuple
    candidates: tuple
    extensions: tuple
    even_sublattices: tuple
    verdicts: tuple

    @property
    def reflective(self):
        return tuple(L for L, v in zip(self.candidates, self.verdicts)
                     if v.kind is vinberg.Reflectivity.REFLECTIVE12)
    @property
    def closure_ok(self):
        """
        The even sublattice of a (1,2)-reflective odd candidate is a
        (1,2)-reflective candidate too
        """
        r12 = vinberg.Reflectivity.REFLECTIVE12
        for i, j in self.even_sublattices:
            if self.verdicts[i].kind is r12 and (j is None or self.verdicts[j].kind is not r12):
                return False
        return True

    def as_dict(self):
        return {
            'configurations': [c.as_dict() for c in self.configurations],
            'classes': [c.as_dict() for c in self.classes],
            'candidates': [
                {
                    'gram': [list(row) for row in L.gram],
                    'discriminant': L.discriminant,
                    'invariant_factors': list(L.invariant_factors),
                    'verdict': v.kind.value,
                    'witness': None if v.witness is None else [r.as_dict() for r in v.witness],
                }
                for L, v in zip(self.candidates, self.verdicts)
            ],
            'extensions': [list(p) for p in self.extensions],
            'even_sublattices': [list(p) for p in self.even_sublattices],
            'closure_ok': self.closure_ok,
        }


def _verdict(args):
    L, budget = args
    verdict = vinberg.one_two_reflectivity(L, budget)
    log.info('%s: %s', L, verdict.kind.value)
    return verdict


def classify(budget=DEFAULT_BUDGET, threads=1, height=DEFAULT_HEIGHT, both_labelings=True):
    configs = enumerate_configurations(both_labelings)
    classes = anisotropic_classes(configs, height)
    sat = saturate(classes, height=height)
    log.info('%d candidates after saturation', len(sat))
    work = [(L, budget) for L in sat.candidates]
    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = tuple(pool.map(_verdict, work))
    else:
        verdicts = tuple(map(_verdict, work))
    report = ClassificationReport(tuple(configs), tuple(classes), sat.candidates,
                                  sat.extensions, sat.even_sublattices, verdicts)
    if not report.closure_ok:
        log.warning('(1,2)-reflective candidates are not closed under even sublattices')
    return report
