from fractions import Fraction
import pytest
import outermost
from outermost import bounds
from outermost import errors
from outermost.bounds import AngleSet


def test_angle_set_validation():
    with pytest.raises(errors.InvalidArgument):
        AngleSet(5, 2, 2, 2, 2)
    assert AngleSet(4, 2, 3, 3, 2).is_valid()
    assert not AngleSet(2, 3, 6, 2, 2).is_valid()
    assert not AngleSet(3, 3, 3, 2, 2).is_valid()


def test_orbit():
    a = AngleSet(2, 3, 4, 6, 2)
    assert len(a.orbit()) == 4
    for b in a.orbit():
        assert b.canonical() == a.canonical()
        assert b.orbit() == a.orbit()
    assert a.swap_faces().swap_faces() == a
    assert a.swap_ends().swap_ends() == a
    assert AngleSet(6, 2, 2, 2, 2).orbit() == {AngleSet(6, 2, 2, 2, 2)}


def test_angle_set_text():
    a = outermost.parse_angles('(pi/4, pi/2, pi/3, pi/3, pi/2)')
    assert a == AngleSet(4, 2, 3, 3, 2)
    assert outermost.parse_angles('(π/6, π/2, π/2, π/2, π/2)') == AngleSet(6, 2, 2, 2, 2)
    assert a.as_dict()['alpha23'] == 'pi/3'
    with pytest.raises(outermost.ParseError):
        outermost.parse_angles('4 2 3 3')
    with pytest.raises(outermost.ParseError):
        outermost.parse_angles('(pi/5, pi/2, pi/2, pi/2, pi/2)')


def test_lemma_angle_sets():
    found = bounds.lemma_angle_sets()
    assert len(found) == 45
    assert all(a == a.canonical() and a.is_valid() for a in found)
    assert len(bounds.valid_angle_sets()) == 44


def test_illposed():
    with pytest.raises(errors.IllposedAngleSet):
        bounds.width_bound(AngleSet(2, 2, 6, 2, 6), both_labelings=False)
    assert len(bounds.bounds_table()) == 44
    rows = bounds.bounds_table(flag_illposed=True)
    assert len(rows) == 45
    flagged = [r for r in rows if isinstance(r, bounds.IllposedRow)]
    assert [r.angles for r in flagged] == [AngleSet(2, 2, 6, 2, 6)]
    d = flagged[0].as_dict()
    assert d['t_published'] is None
    assert d['reason']
    # both labelings still bound this orbit
    assert flagged[0].bound.t >= 1
    assert d['t_raw'] is not None
    rows = bounds.bounds_table(both_labelings=False, flag_illposed=True)
    assert [r.as_dict()['t_raw'] for r in rows if isinstance(r, bounds.IllposedRow)] == [None]


def test_illposed_is_logged(caplog):
    bounds.bounds_table.cache_clear()
    with caplog.at_level('WARNING', logger='outermost.bounds'):
        bounds.bounds_table()
    assert any('(pi/2, pi/2, pi/6, pi/2, pi/6)' in r.getMessage() for r in caplog.records)


def test_known_bounds():
    b = bounds.width_bound(AngleSet(6, 2, 2, 2, 2))
    assert b.t == pytest.approx(2.866025, abs=1e-6)
    assert b.display == Fraction(287, 100)
    b = bounds.width_bound(AngleSet(4, 2, 3, 3, 2), both_labelings=False)
    assert b.t == pytest.approx(4.13726, abs=1e-5)
    assert b.as_dict()['t_display'] == '4.14'
    assert float(bounds.edge_length_bound(AngleSet(6, 2, 2, 2, 2))) == pytest.approx(1.71415, abs=1e-5)


def test_interval_encloses_bound():
    for both in (True, False):
        for row in bounds.bounds_table(both):
            low, high = row.interval
            assert low <= Fraction(row.t) * (1 + Fraction(1, 10**12))
            assert Fraction(row.t) * (1 - Fraction(1, 10**12)) <= high
            assert row.display >= high
            assert row.display - high < Fraction(1, 100)
            assert row.t > 0


def test_width_bound_at_least_one():
    for row in bounds.bounds_table():
        assert row.t >= 1, row.angles
        assert row.t < 7
    for a in bounds.lemma_angle_sets():
        assert bounds.width_bound(a).t >= 1
    # the published labeling alone drops below 1
    assert min(row.t for row in bounds.bounds_table(both_labelings=False)) < 1


def test_table_maximum():
    rows = bounds.bounds_table()
    top = max(rows, key=lambda r: r.published)
    assert top.angles == AngleSet(4, 2, 3, 3, 2).canonical()
    assert top.published == Fraction(207, 50)
    published = bounds.bounds_table(both_labelings=False)
    top = max(published, key=lambda r: r.t)
    assert top.angles == AngleSet(4, 2, 3, 3, 2)
    assert top.display == Fraction(207, 50)
    assert max(r.display for r in rows) > Fraction(207, 50)
    row = next(r for r in rows if r.angles == AngleSet(6, 2, 2, 2, 2))
    assert row.display == row.published == Fraction(287, 100)


def test_both_labelings_dominates():
    for a in bounds.valid_angle_sets():
        one = bounds.width_bound(a, both_labelings=False)
        both = bounds.width_bound(a, both_labelings=True)
        assert both.t >= one.t
        assert both.display >= one.display
    for row in bounds.bounds_table():
        assert row.display >= row.published


def test_table_lookup():
    assert bounds.table_lookup(AngleSet(2, 2, 6, 2, 6), both_labelings=False) is None
    assert bounds.table_lookup(AngleSet(2, 2, 6, 2, 6)) >= 1
    assert bounds.table_lookup(AngleSet(2, 6, 6, 2, 2)) is None
    a = AngleSet(4, 2, 3, 3, 2)
    for b in a.orbit():
        assert bounds.table_lookup(b, both_labelings=False) == Fraction(207, 50)
        assert bounds.table_lookup(b) == bounds.width_bound(a).display


def test_plane_angles():
    angles = bounds.plane_angles(AngleSet(4, 2, 3, 3, 2))
    assert [round(float(x), 6) for x in angles] == [0.785398, 0.955317, 0.955317, 0.785398]
    for a in bounds.valid_angle_sets():
        assert all(0 < float(x) < 3.1416 for x in bounds.plane_angles(a))
