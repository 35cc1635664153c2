from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mackeyalg import linalg
from mackeyalg.algebra import GF, ZZ, StructuredAlgebra
from mackeyalg.burnring import (GramForm, PreconditionError, burnside_algebra, class_names,
                                form_certificate, gustafson_form, klein_substituted_presentation,
                                modp_burnside_socle, order_p_sum, radical_candidate,
                                rognerud_compatibility, standard_presentation,
                                unit_coset_functional)
from mackeyalg.grpcore import is_square_free
from mackeyalg.gset import GSetSum, table_of_marks

from conftest import group

BATTERY = ["cyclic:2", "cyclic:3", "cyclic:4", "klein", "sym:3", "cyclic:6", "dihedral:4",
           "cyclic:5", "cyclic:10"]


def test_c4_presentation():
    G = group("cyclic:4")
    assert standard_presentation(G)["relations"] == ["g^2 = 4g", "gh = 2g", "h^2 = 2h"]
    assert standard_presentation(G, GF(2))["relations"] == ["g^2 = 0", "gh = 0", "h^2 = 0"]


def test_klein_presentation():
    G = group("klein")
    rels = standard_presentation(G)["relations"]
    for r in ["hk = g", "hℓ = g", "kℓ = g", "gh = 2g", "gk = 2g", "gℓ = 2g"]:
        assert r in rels
    sub = klein_substituted_presentation(G, 2)
    assert sub["substitution"] == "s = h + k + ℓ"
    assert sub["relations"] == ["h^2 = 0", "hs = 0", "k^2 = 0", "ks = 0", "s^2 = 0"]
    with pytest.raises(PreconditionError):
        klein_substituted_presentation(group("cyclic:4"), 2)


def test_class_names():
    assert class_names(group("cyclic:4")) == ["g", "h", "1"]
    assert class_names(group("klein")) == ["g", "h", "k", "ℓ", "1"]


def test_unit_coset_functional():
    G = group("cyclic:4")
    A = burnside_algebra(G)
    assert unit_coset_functional(A, A.basis_vector(0)) == 1
    assert unit_coset_functional(A, A.unit) == 0
    assert unit_coset_functional(A, np.array([3, 5, 0])) == 3
    assert unit_coset_functional(A, GSetSum(G, (2, 1, 0))) == 2


@pytest.mark.parametrize("spec", BATTERY)
def test_burnside_structure_matches_marks(spec):
    # marks are a ring homomorphism to Z^n: the independent oracle for products
    G = group(spec)
    A = burnside_algebra(G)
    A.validate()
    M = table_of_marks(G).by_class()
    n = A.dim
    for i, j in product(range(n), repeat=2):
        assert np.array_equal(M @ A.C[i, j], M[:, i] * M[:, j])
    assert np.array_equal(M @ A.unit, np.ones(n, dtype=np.int64))


def _gram_by_hand(G):
    A = burnside_algebra(G)
    t = G.subgroup_classes().trivial
    n = A.dim
    return np.array([[A.mul(A.basis_vector(i), A.basis_vector(j))[t] for j in range(n)]
                     for i in range(n)])


def test_c4_gram_and_certificate():
    G = group("cyclic:4")
    beta = gustafson_form(G)
    # basis order (g, h, 1) here; the same matrix as [[0,0,1],[0,0,2],[1,2,4]] in (1, h, g)
    assert beta.gram.tolist() == [[4, 2, 1], [2, 0, 0], [1, 0, 0]]
    cert = form_certificate(beta)
    assert cert.symmetric and cert.associative and not cert.nondegenerate and cert.det == 0


def test_klein_gram_by_hand():
    # G/H x G/H = 2 G/H, G/H x G/K = G/1, G/1 x X = |X| G/1
    beta = gustafson_form(group("klein"))
    expected = [[4, 2, 2, 2, 1], [2, 0, 1, 1, 0], [2, 1, 0, 1, 0], [2, 1, 1, 0, 0],
                [1, 0, 0, 0, 0]]
    assert beta.gram.tolist() == expected
    assert linalg.int_det(np.array(expected)) == -2
    assert beta.det == -2
    assert gustafson_form(group("klein"), GF(2)).det == 0


@pytest.mark.parametrize("spec", BATTERY)
def test_gustafson_properties(spec):
    G = group(spec)
    beta = gustafson_form(G)
    assert np.array_equal(beta.gram, _gram_by_hand(G))
    cert = form_certificate(beta)
    assert cert.symmetric and cert.associative
    assert cert.nondegenerate == is_square_free(G.order)
    assert beta(beta.algebra.unit, beta.algebra.basis_vector(0)) == 1
    if G.order > 1:
        assert beta(beta.algebra.unit, beta.algebra.unit) == 0
    for p in (2, 3, 5):
        assert np.array_equal(gustafson_form(G, GF(p)).gram, beta.gram % p)


def test_trivial_certificate():
    A = StructuredAlgebra(ZZ, ("e",), np.ones((1, 1, 1), dtype=np.int64),
                          np.ones(1, dtype=np.int64))
    assert form_certificate(GramForm(A, np.eye(1, dtype=np.int64))).all


@pytest.mark.parametrize("spec", ["cyclic:6", "sym:3", "cyclic:4", "klein", "cyclic:10"])
def test_rognerud_compatibility(spec):
    ok, info = rognerud_compatibility(group(spec), ZZ, detail=True)
    assert ok and not info["failures"]
    n = sum(len(group(spec).subgroup_as_group(c.rep).subgroup_classes())
            for c in group(spec).subgroup_classes())
    assert info["checked"] == n


def test_socles():
    C4 = modp_burnside_socle(group("cyclic:4"), 2)
    assert C4.tolist() == [[1, 0, 0], [0, 1, 0]]
    V = group("klein")
    soc = modp_burnside_socle(V, 2)
    A = burnside_algebra(V, GF(2))
    s = order_p_sum(V, 2) % 2
    hk = A.mul(A.basis_vector(1), A.basis_vector(2))
    assert soc.shape[0] == 2
    assert linalg.rank_mod(np.vstack([soc, s, hk]), 2) == 2 == linalg.rank_mod(np.vstack([s, hk]), 2)
    assert modp_burnside_socle(group("cyclic:2"), 2).shape[0] == 1
    with pytest.raises(PreconditionError):
        modp_burnside_socle(group("sym:3"), 2)


@pytest.mark.parametrize("spec, p", [("cyclic:4", 2), ("klein", 2), ("dihedral:4", 2),
                                     ("cyclic:9", 3), ("cyclic:8", 2)])
def test_radical_candidate_is_nilpotent_ideal(spec, p):
    G = group(spec)
    J = radical_candidate(G, p)
    A = burnside_algebra(G, GF(p))
    assert J.shape[0] == A.dim - 1
    # [G/1] always lies in the socle of F_p B(G) for a p-group
    soc = modp_burnside_socle(G, p)
    g = np.zeros(A.dim, dtype=np.int64)
    g[G.subgroup_classes().trivial] = 1
    assert linalg.rank_mod(np.vstack([soc, g]), p) == soc.shape[0]


@given(st.sampled_from(["cyclic:4", "klein", "sym:3", "cyclic:6"]), st.data())
def test_burnside_commutative_associative(spec, data):
    A = burnside_algebra(group(spec))
    n = A.dim
    x, y, z = (np.array(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
               for _ in range(3))
    assert np.array_equal(A.mul(x, y), A.mul(y, x))
    assert np.array_equal(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z)))
    assert np.array_equal(A.mul(A.unit, x), x)
