import numpy as np
import pytest

from mackeyalg import linalg
from mackeyalg.algebra import GF, matrix_algebra, product_algebra, truncated_polynomial_algebra, \
    upper_triangular_algebra
from mackeyalg.burncat import mackey_algebra
from mackeyalg.burnring import burnside_algebra
from mackeyalg.fdalg.radical import (RADICAL_DIM_CAP, _products, ideal_power_dims, is_two_sided_ideal,
                                     largest_nilpotent_ideal_bruteforce, radical,
                                     radical_bruteforce, socle_left)
from mackeyalg.grpcore import ResourceCapError

from conftest import group


def same_span(X, Y, p):
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.shape[0] != Y.shape[0]:
        return False
    if X.shape[0] == 0:
        return True
    return np.array_equal(linalg.rref_mod(X, p)[0], linalg.rref_mod(Y, p)[0])


SMALL_ALGEBRAS = {
    "F2[x]/x^3": lambda: truncated_polynomial_algebra(2, 3),
    "F3[x]/x^2": lambda: truncated_polynomial_algebra(3, 2),
    "M2(F2)": lambda: matrix_algebra(2, 2),
    "T2(F2)": lambda: upper_triangular_algebra(2, 2),
    "T3(F2)": lambda: upper_triangular_algebra(2, 3),
    "F2 x F2[x]/x^2": lambda: product_algebra(truncated_polynomial_algebra(2, 1),
                                              truncated_polynomial_algebra(2, 2)),
    "F2B(C4)": lambda: burnside_algebra(group("cyclic:4"), GF(2)),
    "F2B(klein)": lambda: burnside_algebra(group("klein"), GF(2)),
    "F3B(S3)": lambda: burnside_algebra(group("sym:3"), GF(3)),
}


@pytest.mark.parametrize("name", sorted(SMALL_ALGEBRAS))
def test_radical_matches_bruteforce(name):
    A = SMALL_ALGEBRAS[name]()
    assert A.dim <= 8
    assert same_span(radical(A), radical_bruteforce(A), A.p)


def test_mackey_c2_radical_against_ideal_search():
    A = mackey_algebra(group("cyclic:2"), GF(2)).algebra
    assert A.dim == 6
    oracle = largest_nilpotent_ideal_bruteforce(A)
    J = radical(A)
    assert same_span(J, oracle, 2)
    assert same_span(J, radical_bruteforce(A), 2)


@pytest.mark.parametrize("spec,p", [("cyclic:2", 2), ("cyclic:4", 2), ("klein", 2),
                                    ("sym:3", 2), ("sym:3", 3), ("cyclic:6", 3)])
def test_radical_invariants_on_mackey_algebras(spec, p):
    A = mackey_algebra(group(spec), GF(p)).algebra
    J = radical(A)
    assert is_two_sided_ideal(A, J)
    assert ideal_power_dims(A, J)[-1] == 0
    if 0 < J.shape[0] < A.dim:
        assert radical(A.quotient(J)).shape[0] == 0


def test_f2b_c4_radical_is_span_g_h():
    G = group("cyclic:4")
    A = burnside_algebra(G, GF(2))
    # basis [G/1], [G/H], [G/G]; g = [G/1], h = [G/H]
    expected = np.array([[1, 0, 0], [0, 1, 0]])
    assert same_span(radical(A), expected, 2)


def test_semisimple_radical_is_zero():
    A = product_algebra(*[truncated_polynomial_algebra(3, 1)] * 3)
    assert radical(A).shape[0] == 0
    assert radical(matrix_algebra(2, 2)).shape[0] == 0
    assert radical(burnside_algebra(group("cyclic:6"), GF(5))).shape[0] == 0


@pytest.mark.parametrize("spec", ["cyclic:4", "klein"])
def test_burnside_socle_dimension_two(spec):
    A = burnside_algebra(group(spec), GF(2))
    assert socle_left(A).shape[0] == 2


def test_semisimple_socle_is_everything():
    A = matrix_algebra(3, 2)
    assert socle_left(A).shape[0] == A.dim


@pytest.mark.parametrize("name", sorted(SMALL_ALGEBRAS))
def test_socle_is_left_ideal_killed_by_radical(name):
    A = SMALL_ALGEBRAS[name]()
    J = radical(A)
    S = socle_left(A, J)
    if J.shape[0] and S.shape[0]:
        assert not _products(A, J, S).any()
    E = linalg.Echelon(A.dim, A.p)
    E.add_many(S)
    left = _products(A, np.eye(A.dim, dtype=np.int64), S)
    assert all(E.contains(v) for v in left)


def test_radical_rejects_integers():
    with pytest.raises(ValueError):
        radical(burnside_algebra(group("cyclic:2")))


def test_radical_dimension_cap():
    A = matrix_algebra(2, 12)
    assert A.dim > RADICAL_DIM_CAP
    with pytest.raises(ResourceCapError):
        radical(A)
