import numpy as np
import pytest

from mackeyalg.algebra import GF, ZZ, algebra_from_table, product_algebra
from mackeyalg.burnring import burnside_algebra
from mackeyalg.checks import residue_module
from mackeyalg.fdalg.integral import (AbelianGroup, IntModule, IntResolution, from_modp, int_ext,
                                      int_regular, one_dimensional_module, rees_reduction_check)
from mackeyalg.grpcore import ResourceCapError

from conftest import group


def integers():
    return algebra_from_table(ZZ, ["1"], {(0, 0): [1]}, [1])


def integers_squared():
    Z = integers()
    return product_algebra(Z, Z)


def test_abelian_group_helpers():
    A = AbelianGroup(0, (2, 2))
    assert str(A) == "Z/2 + Z/2"
    assert A.dim_over(2) == 2 and A.dim_over(3) is None
    assert str(AbelianGroup(0, ())) == "0" and AbelianGroup(0, ()).is_zero
    assert AbelianGroup(1, ()).dim_over(2) is None
    assert str(AbelianGroup(2, (4,))) == "Z^2 + Z/4"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ext_over_integers(p):
    S = integers()
    N = IntModule(S, np.array([[[1]]]), p, "F_p")
    assert int_ext(S, N, 0).is_zero
    assert int_ext(S, N, 1) == AbelianGroup(0, (p,))
    assert int_ext(S, N, 2).is_zero


def test_ext_over_product_sees_one_factor():
    S = integers_squared()
    # F_3 on the first factor only
    N = IntModule(S, np.array([[[1]], [[0]]]), 3, "F_3")
    assert int_ext(S, N, 1) == AbelianGroup(0, (3,))
    assert int_ext(S, N, 2).is_zero


@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:4", "sym:3"])
def test_regular_module_is_projective(spec):
    S = burnside_algebra(group(spec), ZZ)
    R = int_regular(S)
    assert int_ext(S, R, 0) == AbelianGroup(S.dim, ())
    assert int_ext(S, R, 1).is_zero


def test_integral_resolution_is_exact():
    G = group("cyclic:4")
    S = burnside_algebra(G, ZZ)
    res = IntResolution(from_modp(S, residue_module(G, 2), 2), cap=5)
    res.extend(4)
    assert res.is_exact(3)


def test_int_ext_errors():
    S = integers()
    N = IntModule(S, np.array([[[1]]]), 2, "F_2")
    with pytest.raises(ValueError):
        int_ext(S, N, -1)
    with pytest.raises(ResourceCapError):
        int_ext(S, N, 5, cap=5)
    with pytest.raises(ValueError):
        int_ext(S, N, 1, coeff=N)


@pytest.mark.parametrize("p", [2, 3])
def test_rees_over_integers(p):
    S = integers()
    N = one_dimensional_module(S.base_change(GF(p)), [1])
    for i in (1, 2):
        r = rees_reduction_check(S, p, N, i)
        assert r.lhs.is_zero and r.rhs_dim == 0 and r.equal


@pytest.mark.parametrize("i", [1, 2, 3])
def test_rees_c4_residue(i):
    G = group("cyclic:4")
    r = rees_reduction_check(burnside_algebra(G, ZZ), 2, residue_module(G, 2), i, cap=6)
    assert r.lhs_dim is not None
    assert r.equal
    assert r.to_json()["equal"] is True


@pytest.mark.parametrize("spec,p", [("cyclic:2", 2), ("cyclic:3", 3), ("sym:3", 2),
                                    ("sym:3", 3), ("cyclic:6", 2)])
def test_rees_other_groups(spec, p):
    G = group(spec)
    S = burnside_algebra(G, ZZ)
    N = residue_module(G, p)
    for i in (1, 2):
        assert rees_reduction_check(S, p, N, i).equal


def test_rees_preconditions():
    G = group("cyclic:4")
    S = burnside_algebra(G, ZZ)
    N = residue_module(G, 2)
    with pytest.raises(ValueError):
        rees_reduction_check(S, 2, N, 0)
    with pytest.raises(ValueError):
        rees_reduction_check(S.base_change(GF(2)), 2, N, 1)


def test_one_dimensional_module_rejects_non_character():
    A = burnside_algebra(group("cyclic:2"), GF(3))
    # [G/1]^2 = 2 [G/1], so [G/1] must act by 0 or 2
    with pytest.raises(ValueError):
        one_dimensional_module(A, [1, 1])
