from itertools import product as cartesian

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mackeyalg.gset import (Action, GMap, GSetError, GSetSum, TransitiveGSet, basis_product,
                            double_coset_product, induce, orbit_decompose, product,
                            pullback, regular_action, table_of_marks, trivial_action)

from conftest import group

GROUPS = ["cyclic:2", "cyclic:4", "klein", "sym:3", "cyclic:6", "dihedral:4"]


def brute_marks(G):
    """|(G/H)^K| by brute force over group elements: #{g : g^-1 K g <= H} / |H|."""
    cls = G.subgroup_classes()
    n = len(cls)
    M = np.zeros((n, n), dtype=np.int64)
    for a, b in cartesian(range(n), repeat=2):
        K, H = cls[a].rep, set(cls[b].rep)
        count = sum(1 for g in G if all(G.m(G.m(G.inv[g], k), g) in H for k in K))
        M[a, b] = count // len(H)
    return M


def test_regular_and_trivial_actions():
    G = group("cyclic:4")
    cls = G.subgroup_classes()
    assert orbit_decompose(regular_action(G)).mult[cls.trivial] == 1
    assert sum(orbit_decompose(regular_action(G)).mult) == 1
    assert orbit_decompose(trivial_action(G)).mult[cls.whole] == 1


def test_bad_action_rejected():
    G = group("cyclic:2")
    with pytest.raises(GSetError):
        orbit_decompose(Action(G, ((0, 1), (0, 0))))


@pytest.mark.parametrize("spec", GROUPS)
def test_marks_oracle(spec):
    G = group(spec)
    T = table_of_marks(G)
    assert np.array_equal(T.by_class(), brute_marks(G))
    # lower triangular with positive diagonal in the decreasing-order convention
    M = T.matrix
    assert np.array_equal(M, np.tril(M)) and (np.diag(M) > 0).all()


def test_c4_marks_matrix():
    T = table_of_marks(group("cyclic:4"))
    assert T.matrix.tolist() == [[1, 0, 0], [1, 2, 0], [1, 2, 4]]


@pytest.mark.parametrize("spec", GROUPS)
def test_products_agree_with_marks_and_double_cosets(spec):
    G = group(spec)
    M = brute_marks(G)
    n = len(G.subgroup_classes())
    for i, j in cartesian(range(n), repeat=2):
        X = basis_product(G, i, j)
        assert np.array_equal(M @ np.array(X.mult), M[:, i] * M[:, j])
        assert X == double_coset_product(G, i, j)
        assert X == basis_product(G, j, i)


@pytest.mark.parametrize("spec", ["cyclic:4", "klein", "sym:3"])
def test_product_associative(spec):
    G = group(spec)
    n = len(G.subgroup_classes())
    B = [GSetSum.basis(G, i) for i in range(n)]
    for x, y, z in cartesian(B, repeat=3):
        assert product(product(x, y), z) == product(x, product(y, z))


def test_reference_products():
    C4 = group("cyclic:4")
    assert basis_product(C4, 1, 1).mult == (0, 2, 0)
    assert basis_product(C4, 0, 1).mult == (2, 0, 0)
    V = group("klein")
    assert basis_product(V, 1, 2).mult == (1, 0, 0, 0, 0)
    assert basis_product(V, 1, 1).mult == (0, 2, 0, 0, 0)


def test_disjoint_union_decomposes_additively():
    G = group("sym:3")
    X = TransitiveGSet.of_class(G, 1).action
    Y = TransitiveGSet.of_class(G, 2).action
    assert orbit_decompose(X.disjoint_union(Y)) == orbit_decompose(X) + orbit_decompose(Y)


@pytest.mark.parametrize("spec", ["cyclic:4", "klein", "sym:3"])
def test_pullback_over_a_point_is_product(spec):
    G = group(spec)
    cls = G.subgroup_classes()
    pt = TransitiveGSet.of_class(G, cls.whole)
    for i, j in cartesian(range(len(cls)), repeat=2):
        X, Y = TransitiveGSet.of_class(G, i), TransitiveGSet.of_class(G, j)
        f = GMap.coset_map(X, pt, 0)
        g = GMap.coset_map(Y, pt, 0)
        total, orbits = pullback(f, g)
        assert total == basis_product(G, i, j)
        assert sum(len(G.left_cosets(o.subgroup)) for o in orbits) == len(X) * len(Y)


def test_pullback_examples():
    G = group("cyclic:4")
    one, H = TransitiveGSet.of_class(G, 0), TransitiveGSet.of_class(G, 1)
    p = GMap.coset_map(one, H, 0)
    total, _ = pullback(p, p)
    assert total.mult == (2, 0, 0)
    ident = GMap.coset_map(H, H, 0)
    total, orbits = pullback(ident, ident)
    assert total.mult == (0, 1, 0)
    assert list(orbits[0].left.images) == list(range(len(H)))


def test_pullback_needs_common_target():
    G = group("cyclic:4")
    one, H = TransitiveGSet.of_class(G, 0), TransitiveGSet.of_class(G, 1)
    with pytest.raises(GSetError):
        pullback(GMap.coset_map(one, one, 0), GMap.coset_map(one, H, 0))


def test_coset_map_well_definedness():
    G = group("sym:3")
    cls = G.subgroup_classes()
    H2, H3 = TransitiveGSet.of_class(G, 1), TransitiveGSet.of_class(G, 2)
    with pytest.raises(GSetError):
        GMap.coset_map(H2, H3, 0)


def test_induction():
    G = group("cyclic:4")
    H = G.subgroup_classes()[1].rep
    Hg = G.subgroup_as_group(H)
    assert induce(G, H, GSetSum.basis(Hg, 1)).mult == (0, 1, 0)
    assert induce(G, H, GSetSum.basis(Hg, 0)).mult == (1, 0, 0)
    assert induce(G, H, GSetSum.basis(Hg, 0) + GSetSum.basis(Hg, 1)).mult == (1, 1, 0)


@given(st.sampled_from(GROUPS), st.data())
def test_transitive_sets_have_the_right_stabilizer(spec, data):
    G = group(spec)
    i = data.draw(st.integers(0, len(G.subgroup_classes()) - 1))
    X = TransitiveGSet.of_class(G, i)
    X.action.check()
    assert len(X.action.orbits()) == 1
    assert tuple(sorted(X.action.stabilizer(0))) == tuple(sorted(G.subgroup_classes()[i].rep))
    assert len(X) * len(X.subgroup) == G.order
