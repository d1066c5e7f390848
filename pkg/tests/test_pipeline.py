import collections
import math

import pytest
import outermost
from outermost import lattice as lat
from outermost import local
from outermost import pipeline
from outermost import vinberg


def diag(*xs):
    return outermost.QuadLattice([[x if i == j else 0 for j in range(len(xs))] for i, x in enumerate(xs)])


CONFIGURATION_GRAMS = [
    [[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]],
    [[1, -1, 0, 0], [-1, 2, 0, -1], [0, 0, 1, -4], [0, -1, -4, 2]],
    [[1, 0, 0, -1], [0, 2, -1, 0], [0, -1, 2, -3], [-1, 0, -3, 2]],
    [[2, 0, 0, -1], [0, 2, -1, -1], [0, -1, 1, -2], [-1, -1, -2, 2]],
    [[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 1, -4], [-1, 0, -4, 2]],
    [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -3], [-1, -1, -3, 2]],
    [[2, 0, -1, -1], [0, 2, -1, -1], [-1, -1, 2, -3], [-1, -1, -3, 2]],
]


PUBLISHED_DISCRIMINANTS = [-7, -15, -15, -23, -28, -55, -60]


def canonical(gram):
    return min(tuple(tuple(gram[i][j] for j in p) for i in p) for p in pipeline.SWAPS)


@pytest.fixture(scope='module')
def configurations():
    return pipeline.enumerate_configurations()


@pytest.fixture(scope='module')
def published():
    return pipeline.enumerate_configurations(both_labelings=False)


@pytest.fixture(scope='module')
def report():
    return pipeline.classify()


def test_configurations_are_admissible(configurations):
    assert configurations
    keys = set()
    for c in configurations:
        L = c.lattice
        assert L.is_hyperbolic
        assert all(c.gram[i][i] in (1, 2) for i in range(4))
        assert all(c.gram[i][j] <= 0 for i in range(4) for j in range(4) if i != j)
        assert c.angles.is_valid()
        assert c.gram[2][3] ** 2 < c.t_used ** 2 * c.gram[2][2] * c.gram[3][3]
        keys.add(canonical(c.gram))
    assert len(keys) == len(configurations)


def test_published_configurations_found(configurations, published):
    for found in (configurations, published):
        keys = {canonical(c.gram) for c in found}
        for g in CONFIGURATION_GRAMS:
            assert canonical(g) in keys


def test_both_labelings_extend_published(configurations, published):
    keys = {canonical(c.gram) for c in configurations}
    assert {canonical(c.gram) for c in published} < keys
    widths = {canonical(c.gram): c.t_used for c in configurations}
    for c in published:
        assert widths[canonical(c.gram)] >= c.t_used


def test_configuration_as_dict(configurations):
    d = configurations[0].as_dict()
    assert set(d) == {'gram', 'angle_set', 't_used'}
    assert d['angle_set'].startswith('(pi/')


def check_classes(configurations, classes):
    assert sum(len(c.members) for c in classes) == \
        sum(1 for c in configurations if local.is_anisotropic_over_Q(c.lattice))
    for c in classes:
        for member in c.members:
            assert local.invariant_key(member) == local.invariant_key(c.representative)


def test_anisotropic_classes_published(published):
    classes = pipeline.anisotropic_classes(published)
    assert [c.representative.discriminant for c in classes] == PUBLISHED_DISCRIMINANTS
    check_classes(published, classes)


def test_anisotropic_classes(configurations):
    classes = pipeline.anisotropic_classes(configurations)
    found = collections.Counter(c.representative.discriminant for c in classes)
    assert not collections.Counter(PUBLISHED_DISCRIMINANTS) - found
    assert len(classes) > len(PUBLISHED_DISCRIMINANTS)
    check_classes(configurations, classes)


def test_saturation_adds_nothing_new(published):
    classes = pipeline.anisotropic_classes(published)
    sat = pipeline.saturate(classes)
    assert len(sat) == 7
    assert sat.extensions
    for i, j in sat.extensions:
        assert sat[i].is_even
        assert sat[i].discriminant == 4 * sat[j].discriminant
    assert {sat[i].discriminant for i, _ in sat.extensions} == {-28, -60}


def test_saturation(configurations):
    classes = pipeline.anisotropic_classes(configurations)
    sat = pipeline.saturate(classes)
    assert len(sat) >= len(classes)
    for i, j in sat.extensions:
        assert i != j
        assert sat[i].discriminant % sat[j].discriminant == 0
        ratio = sat[i].discriminant // sat[j].discriminant
        assert ratio > 1 and math.isqrt(ratio) ** 2 == ratio


def test_even_closure(published):
    classes = pipeline.anisotropic_classes(published)
    sat = pipeline.saturate(classes, even_closure=True)
    for i, j in sat.even_sublattices:
        assert not sat[i].is_even
        assert j is not None
        assert sat[j].is_even
        assert sat[j].discriminant == 4 * sat[i].discriminant


def basis_roots(gram):
    return [(tuple(int(i == j) for j in range(4)), gram[i][i]) for i in range(4)]


def test_extension_classes():
    L6 = outermost.QuadLattice(CONFIGURATION_GRAMS[5])
    assert len(lat.overlattices(L6, basis_roots(L6.gram))) == 4
    found = pipeline.extension_classes(L6, basis_roots(L6.gram))
    assert [(c.index, c.subgroups) for c in found] == [(1, 1), (2, 3)]
    assert found[1].as_dict()['subgroups'] == 3
    M = found[1].overlattice.lattice
    assert not M.is_even
    assert local.invariant_key(M) == local.invariant_key(diag(-7, 1, 1, 1))


def test_extension_classes_cover_overlattices():
    L7 = outermost.QuadLattice(CONFIGURATION_GRAMS[6])
    found = pipeline.extension_classes(L7, basis_roots(L7.gram))
    assert found[0].index == 1
    assert sum(c.subgroups for c in found) == len(lat.overlattices(L7, basis_roots(L7.gram))) == 4
    for c in found[1:]:
        assert c.index == 2
        assert local.invariant_key(c.overlattice.lattice) == local.invariant_key(diag(-15, 1, 1, 1))


def find(report, model):
    key = local.invariant_key(model)
    matches = [(L, v) for L, v in zip(report.candidates, report.verdicts) if local.invariant_key(L) == key]
    if len(matches) > 1:
        matches = [(L, v) for L, v in matches if local.z_isomorphic(L, model)]
    assert matches, f'{model} not among the candidates'
    return matches[0][1]


@pytest.mark.slow
def test_classification(report):
    r12 = vinberg.Reflectivity.REFLECTIVE12
    for model in (diag(-7, 1, 1, 1), diag(-15, 1, 1, 1)):
        assert find(report, model).kind is r12
    for g in CONFIGURATION_GRAMS[5:]:
        assert find(report, outermost.QuadLattice(g)).kind is r12
    for model in (diag(-3, 5, 1, 1), diag(-55, 1, 1, 1)):
        verdict = find(report, model)
        assert verdict.kind is vinberg.Reflectivity.NOT_REFLECTIVE12
        assert verdict.witness
    assert find(report, diag(-23, 1, 1, 1)).kind in (
        vinberg.Reflectivity.UNDECIDED, vinberg.Reflectivity.NOT_REFLECTIVE12)
    assert report.closure_ok


@pytest.mark.slow
def test_classification_report(report):
    d = report.as_dict()
    assert len(d['candidates']) == len(report.verdicts) >= 7
    assert len(d['classes']) > 7
    assert len(d['configurations']) == len(report.configurations)
    assert d['closure_ok'] is True
    discriminants = sorted(c['discriminant'] for c in d['candidates'] if c['verdict'] == '(1,2)-reflective')
    assert {-7, -15, -28, -60} <= set(discriminants)


@pytest.mark.slow
def test_classify_threads_agree(report):
    again = pipeline.classify(threads=4)
    assert [v.kind for v in again.verdicts] == [v.kind for v in report.verdicts]
    assert again.candidates == report.candidates
