import pytest
import outermost
from outermost import errors
from outermost import lattice as lat
from outermost import local


L1 = [[-7, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
G1 = [[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]]
G6 = [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -3], [-1, -1, -3, 2]]
G7 = [[2, 0, -1, -1], [0, 2, -1, -1], [-1, -1, 2, -3], [-1, -1, -3, 2]]


def test_invariants():
    L = outermost.QuadLattice(G1)
    assert L.rank == 4
    assert L.signature == (3, 1)
    assert L.discriminant == -7
    assert L.invariant_factors == (1, 1, 1, 7)
    assert L.is_hyperbolic
    assert not L.is_even


def test_even_invariants():
    L6 = outermost.QuadLattice(G6)
    assert L6.is_even
    assert L6.discriminant == -28
    assert L6.invariant_factors == (1, 1, 2, 14)
    L7 = outermost.QuadLattice(G7)
    assert L7.discriminant == -60
    assert L7.invariant_factors == (1, 1, 2, 30)


def test_immutable():
    L = outermost.QuadLattice(L1)
    with pytest.raises(AttributeError):
        L.gram = ((1,),)
    assert hash(L) == hash(outermost.QuadLattice(L1))
    assert L == outermost.QuadLattice(L1, name='L1')


def test_invalid_gram():
    with pytest.raises(errors.InvalidArgument):
        outermost.QuadLattice([[1, 2], [0, 1]])
    with pytest.raises(errors.InvalidArgument):
        outermost.QuadLattice([[1, 2, 3], [2, 1, 0]])
    with pytest.raises(errors.InvalidArgument):
        outermost.QuadLattice([[1.5, 0], [0, 1]])
    with pytest.raises(errors.DegenerateLattice):
        outermost.QuadLattice([[1, 1], [1, 1]])


def test_diagonalize_preserves_determinant():
    d = lat.diagonalize(G7)
    prod = 1
    for x in d:
        prod *= x
    assert prod == -60
    assert sum(1 for x in d if x < 0) == 1


def test_scaled_and_sum():
    L = lat.direct_sum(outermost.QuadLattice([[-7]]), outermost.QuadLattice([[1, 0], [0, 1]]),
                       outermost.QuadLattice([[1]]))
    assert L == outermost.QuadLattice(L1)
    assert lat.scaled(L, 2).discriminant == 16 * -7
    assert lat.scaled(L, 2).is_even


def test_dual_lattice():
    L = outermost.QuadLattice(G6)
    dual = lat.dual_lattice(L)
    assert dual.index == 28
    assert not dual.is_integral


def test_even_sublattice():
    L = outermost.QuadLattice(L1)
    E, index = lat.even_sublattice(L)
    assert index == 2
    assert E.is_even
    assert E.discriminant == 4 * L.discriminant
    L6 = outermost.QuadLattice(G6)
    assert lat.even_sublattice(L6) == (L6, 1)


def test_discriminant_group_order():
    for g in (G1, G6, G7):
        L = outermost.QuadLattice(g)
        assert len(lat.discriminant_group(L)) == abs(L.discriminant)


def test_overlattices_of_even_configurations():
    L6 = outermost.QuadLattice(G6)
    roots = [(tuple(int(i == j) for j in range(4)), G6[i][i]) for i in range(4)]
    found = lat.overlattices(L6, roots)
    assert found[0].index == 1
    assert found[0].lattice == L6
    bigger = found[1:]
    assert len(bigger) == 3
    for over in bigger:
        assert over.index == 2
        M = over.lattice
        assert M.discriminant == -7
        assert local.z_isomorphic(M, outermost.QuadLattice(L1))


def test_overlattice_roots_survive():
    L6 = outermost.QuadLattice(G6)
    roots = [(tuple(int(i == j) for j in range(4)), G6[i][i]) for i in range(4)]
    for over in lat.overlattices(L6, roots)[1:]:
        inv = lat.inverse(over.basis_change)
        M = over.lattice
        for u, k in roots:
            v = lat.integral([lat.apply(inv, u)])[0]
            assert M.norm(v) == k
            assert all(2 * x % k == 0 for x in M.apply(v))


def test_is_root():
    L = outermost.QuadLattice(G1)
    assert lat.is_root(L, (1, 0, 0, 0), 1)
    assert lat.is_root(L, (0, 1, 0, 0), 2)
    assert not lat.is_root(L, (0, 1, 0, 0), 1)
    with pytest.raises(errors.NotPrimitive):
        lat.is_root(L, (2, 0, 0, 0), 4)
    with pytest.raises(errors.RankMismatch):
        lat.is_root(L, (1, 0, 0), 1)
