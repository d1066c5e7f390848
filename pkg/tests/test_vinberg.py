import itertools
from fractions import Fraction

import pytest
import outermost
from outermost import coxeter
from outermost import errors
from outermost import hyperbolic as hyp
from outermost import vinberg
from outermost.config import Budget
from outermost.lattice import Root


def diag(*xs):
    return outermost.QuadLattice([[x if i == j else 0 for j in range(len(xs))] for i, x in enumerate(xs)])


L1 = diag(-7, 1, 1, 1)
L3 = diag(-3, 5, 1, 1)
L5 = diag(-55, 1, 1, 1)

L5_ROOTS = [
    ((0, -1, -1, 0), 2),
    ((0, 0, 1, -1), 2),
    ((0, 1, 0, 0), 1),
    ((2, 0, 11, 11), 22),
    ((1, -4, 4, 5), 2),
    ((1, -2, 2, 7), 2),
    ((2, -5, 10, 10), 5),
    ((2, 0, 0, 15), 5),
]

L5_ROOT_GRAM = [
    [2, -1, -1, -11, 0, 0, -5, 0],
    [-1, 2, 0, 0, -1, -5, 0, -15],
    [-1, 0, 1, 0, -4, -2, -5, 0],
    [-11, 0, 0, 22, -11, -11, 0, -55],
    [0, -1, -4, -11, 2, -4, 0, -35],
    [0, -5, -2, -11, -4, 2, -10, -5],
    [-5, 0, -5, 0, 0, -10, 5, -70],
    [0, -15, 0, -55, -35, -5, -70, 5],
]

L3_ROOT_GRAM = [
    [1, -1, 0, 0, 0, -2, -5],
    [-1, 2, 0, -3, 0, 0, -5],
    [0, 0, 5, 0, -5, -5, -30],
    [0, -3, 0, 6, -3, 0, 0],
    [0, 0, -5, -3, 2, -1, 0],
    [-2, 0, -5, 0, -1, 1, 0],
    [-5, -5, -30, 0, 0, 0, 5],
]


def relabeled(a, b):
    # equal up to a simultaneous permutation of rows and columns
    n = len(a)
    if n != len(b) or sorted(a[i][i] for i in range(n)) != sorted(b[i][i] for i in range(n)):
        return False
    for p in itertools.permutations(range(n)):
        if all(a[p[i]][p[i]] == b[i][i] for i in range(n)) and \
                all(a[p[i]][p[j]] == b[i][j] for i in range(n) for j in range(n)):
            return True
    return False


def check_bad_witness(verdict):
    e, f = verdict.witness
    assert e.norm > 2 and f.norm > 2
    L = verdict.reports[0].lattice
    rel = hyp.mirror_relation(e.norm, f.norm, L.inner(e.vector, f.vector))
    assert rel.position is not hyp.Position.INTERSECTING


def test_norm_policy():
    assert vinberg.NormPolicy.parse(' 2, 1 ') == vinberg.ONE_TWO
    assert vinberg.NormPolicy.parse('ALL') is vinberg.NormPolicy.ALL
    assert str(vinberg.ONE_TWO) == '1,2'
    assert vinberg.ONE_TWO.norms(L3) == (1, 2)
    assert vinberg.NormPolicy.ALL.norms(L3) == (1, 2, 3, 5, 6, 10, 15, 30)
    with pytest.raises(errors.InvalidArgument):
        vinberg.NormPolicy.parse('one')
    with pytest.raises(errors.InvalidArgument):
        vinberg.NormPolicy.explicit([0, 1])


def test_needs_hyperbolic_lattice():
    with pytest.raises(errors.InvalidArgument):
        vinberg.Vinberg(diag(1, 1, 1, 1))
    with pytest.raises(errors.InvalidArgument):
        vinberg.Vinberg(L3, v0=(0, 1, 0, 0))


def test_stabilizer_roots_are_simple():
    roots = vinberg.stabilizer_chamber(L1, (1, 0, 0, 0), vinberg.root_norms(L1))
    assert len(roots) == 3
    for r, s in itertools.combinations(roots, 2):
        assert L1.inner(r.vector, s.vector) <= 0
    for r in roots:
        assert L1.inner(r.vector, (1, 0, 0, 0)) == 0


def test_roots_come_in_priority_order():
    engine = vinberg.Vinberg(L3)
    for _ in range(3):
        assert engine.next_root() is not None
    assert list(engine.priorities) == sorted(engine.priorities)
    for r in engine.roots:
        assert outermost.lattice.is_root(L3, r.vector, r.norm)


def test_l3_polyhedron():
    report = vinberg.run(L3, stop_on_bad_pair=False)
    assert report.verdict is vinberg.Verdict.COMPACT
    assert relabeled(report.gram, L3_ROOT_GRAM)
    assert not report.bad_finite
    e, f = report.witness
    assert (e.norm, f.norm) == (5, 5)
    assert L3.inner(e.vector, f.vector) == -30


def test_budget_exhausted():
    report = vinberg.run(L3, budget=Budget(max_roots=4))
    assert report.verdict is vinberg.Verdict.BUDGET_EXHAUSTED
    assert len(report.roots) == 4
    assert report.as_dict()['verdict'] == 'budget exhausted'


def test_prefix_stable():
    short = vinberg.run(L3, budget=Budget(max_roots=5))
    full = vinberg.run(L3, stop_on_bad_pair=False)
    assert vinberg.prefix_stable(short, full)


def test_one_two_reflective():
    verdict = vinberg.one_two_reflectivity(L1)
    assert verdict.kind is vinberg.Reflectivity.REFLECTIVE12
    assert verdict
    assert verdict.reports[0].verdict.is_finite


def test_not_one_two_reflective():
    for L in (L3, L5):
        verdict = vinberg.one_two_reflectivity(L)
        assert verdict.kind is vinberg.Reflectivity.NOT_REFLECTIVE12
        assert not verdict
        check_bad_witness(verdict)


def test_report_as_dict():
    report = vinberg.run(L1)
    d = report.as_dict()
    assert d['gram'][0] == [-7, 0, 0, 0]
    assert d['basic_point'] == [1, 0, 0, 0]
    assert len(d['roots']) == len(d['root_gram'])
    assert d['roots'][0]['priority'] == '0'


def signed_permutations(vectors):
    for p in itertools.permutations(range(1, 4)):
        for signs in itertools.product((1, -1), repeat=3):
            yield {(v[0],) + tuple(s * v[i] for s, i in zip(signs, p)) for v in vectors}


def test_l5_polyhedron():
    report = vinberg.run(L5, budget=Budget(max_roots=8), stop_on_bad_pair=False)
    assert len(report.roots) == 8
    assert relabeled(report.gram, L5_ROOT_GRAM)
    assert {r.vector for r in report.roots} in list(signed_permutations([v for v, _ in L5_ROOTS]))
    e, f = report.witness
    assert (e.norm, f.norm) == (5, 5)
    assert L5.inner(e.vector, f.vector) == -70
    assert report.diagram.relation(report.roots.index(e), report.roots.index(f)).position \
        is hyp.Position.DIVERGENT
    assert not report.bad_finite


def test_bad_pair_stops_at_newest_root():
    report = vinberg.run(L5)
    assert report.verdict is vinberg.Verdict.BAD_PAIR
    assert len(report.roots) <= 8
    d = report.diagram
    last = len(report.roots) - 1
    e, f = report.witness
    assert f == report.roots[last]
    assert e.norm > 2 and f.norm > 2
    pairs = {j: d.relation(j, last) for j in d.bad if j < last}
    assert pairs[report.roots.index(e)].position is not hyp.Position.INTERSECTING
    assert max(r.cos_sq for r in pairs.values() if r.position is not hyp.Position.INTERSECTING) \
        == pairs[report.roots.index(e)].cos_sq
    for i, j in itertools.combinations([k for k in d.bad if k < last], 2):
        assert d.relation(i, j).position is hyp.Position.INTERSECTING


@pytest.mark.parametrize('L', [L1, L3, L5], ids=['L1', 'L3', 'L5'])
def test_prefix_stable_under_doubled_budget(L):
    budget = Budget(max_roots=5)
    short = vinberg.run(L, budget=budget, stop_on_bad_pair=False)
    long = vinberg.run(L, budget=budget.doubled(), stop_on_bad_pair=False)
    assert len(short.roots) <= len(long.roots)
    assert vinberg.prefix_stable(short, long)
    assert long.roots[:len(short.roots)] == short.roots


@pytest.mark.parametrize('L', [L1, L3, L5], ids=['L1', 'L3', 'L5'])
def test_accepted_roots(L):
    report = vinberg.run(L, budget=Budget(max_roots=8), stop_on_bad_pair=False)
    assert list(report.priorities) == sorted(report.priorities)
    gram = report.gram
    for i, j in itertools.combinations(range(len(report.roots)), 2):
        assert gram[i][j] <= 0
    for r, q in zip(report.roots, report.priorities):
        assert outermost.lattice.is_root(L, r.vector, r.norm)
        assert q == Fraction(L.inner(r.vector, report.v0) ** 2, r.norm)


def test_redundant_root_is_rejected():
    report = vinberg.run(L3, stop_on_bad_pair=False)
    engine = vinberg.Vinberg(L3, budget=Budget(max_priority=max(report.priorities)))
    assert engine.run(stop_on_bad_pair=False).verdict is vinberg.Verdict.COMPACT
    # sum of two stabilizer facets: a root whose mirror misses the polyhedron
    extra = Root((0, 0, 0, -1), 1)
    assert outermost.lattice.is_root(L3, extra.vector, extra.norm)
    assert extra not in engine.roots
    roots = engine.roots + [extra]
    gram = outermost.lattice.gram_of(L3.gram, [r.vector for r in roots])
    with pytest.raises(errors.NotAcuteAngled):
        coxeter.build_diagram(roots, gram)
    count = len(engine.roots)
    engine._pending.appendleft((Fraction(0), extra))
    assert engine.next_root() is None
    assert len(engine.roots) == count
    assert coxeter.volume_verdict(engine.diagram()) is coxeter.Volume.COMPACT


@pytest.mark.slow
def test_l4_not_certified():
    verdict = vinberg.one_two_reflectivity(diag(-23, 1, 1, 1))
    assert verdict.kind in (vinberg.Reflectivity.UNDECIDED, vinberg.Reflectivity.NOT_REFLECTIVE12)
