import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mackeyalg.algebra import GF, ZZ
from mackeyalg.burncat import (SpanError, canonicalize_span, compose, hom_basis, identity_span,
                               left_leg, mackey_algebra, mackey_basis, mackey_dimension_oracle,
                               right_leg, socle_witness_check)
from mackeyalg.burnring import PreconditionError, burnside_algebra, order_p_sum

from conftest import group

SMALL = ["cyclic:2", "cyclic:4", "klein", "sym:3"]


def span_matrix(s):
    """Incidence counts of the two legs: M[x, y] = #{l : left(l) = x, right(l) = y}.
    Composition of spans becomes matrix multiplication, M(f o g) = M(g) M(f)."""
    L, R = left_leg(s), right_leg(s)
    M = np.zeros((len(L.target), len(R.target)), dtype=np.int64)
    for x, y in zip(L.images, R.images):
        M[x, y] += 1
    return M


def random_translate(G, s, rng):
    """Same span presented through ``x L x^-1`` with legs ``x u h`` and ``x v k``."""
    cls = G.subgroup_classes()
    H, K = cls[s.source].rep, cls[s.target].rep
    x, h, k = rng.randrange(G.order), rng.choice(H), rng.choice(K)
    L = tuple(sorted(G.conj(x, l) for l in s.middle))
    return L, G.m(G.m(x, s.u), h), G.m(G.m(x, s.v), k)


def test_hom_basis_examples():
    G = group("cyclic:4")
    cls = G.subgroup_classes()
    assert len(hom_basis(G, cls.whole, 1)) == 2
    assert len(hom_basis(G, cls.whole, cls.trivial)) == 1
    for spec in SMALL + ["cyclic:6"]:
        G = group(spec)
        cls = G.subgroup_classes()
        assert len(hom_basis(G, cls.whole, cls.whole)) == len(cls)


def test_identity_span_and_distinct_c4_spans():
    G = group("cyclic:4")
    cls = G.subgroup_classes()
    e = identity_span(G, 1)
    assert e.middle == cls[1].rep and e.u == 0 and e.v == 0
    a = canonicalize_span(G, cls[0].rep, 0, 0, cls.whole, 1)
    b = canonicalize_span(G, cls[1].rep, 0, 0, cls.whole, 1)
    assert a != b
    assert a.render(legs=False) == "[G/G <- G/1 -> G/H2]"
    assert a == canonicalize_span(G, a.middle, a.u, a.v, a.source, a.target)


def test_bad_containment_rejected():
    G = group("sym:3")
    cls = G.subgroup_classes()
    with pytest.raises(SpanError):
        canonicalize_span(G, cls[2].rep, 0, 0, cls[1].index, cls.whole)


@pytest.mark.parametrize("spec", SMALL)
def test_canonicalization_under_1000_random_translates(spec):
    G = group(spec)
    rng = random.Random(f"canon-{spec}")
    basis = mackey_basis(G)
    for _ in range(1000):
        s = rng.choice(basis)
        L, u, v = random_translate(G, s, rng)
        c = canonicalize_span(G, L, u, v, s.source, s.target)
        assert c == s
        assert canonicalize_span(G, c.middle, c.u, c.v, c.source, c.target) == c


@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:3", "cyclic:4", "klein", "sym:3",
                                  "cyclic:6", "dihedral:4"])
def test_dimension_oracle(spec):
    G = group(spec)
    assert len(mackey_basis(G)) == mackey_dimension_oracle(G)
    if spec == "cyclic:2":
        assert len(mackey_basis(G)) == 6


@pytest.mark.parametrize("spec", SMALL + ["sym:3"])
def test_hom_dimension_law(spec):
    G = group(spec)
    cls = G.subgroup_classes()
    for c in cls:
        assert len(hom_basis(G, cls.whole, c.index)) == len(
            G.subgroup_as_group(c.rep).subgroup_classes())


@pytest.mark.parametrize("spec", SMALL)
def test_composition_matches_incidence_matrices(spec):
    G = group(spec)
    basis = mackey_basis(G)
    mats = {s: span_matrix(s) for s in basis}
    for f, g in product(basis, repeat=2):
        if g.target != f.source:
            with pytest.raises(SpanError):
                compose(f, g)
            continue
        total = sum(c * mats[s] for s, c in compose(f, g).items())
        assert np.array_equal(total, mats[g] @ mats[f])


@pytest.mark.parametrize("spec", ["cyclic:4", "sym:3"])
def test_compose_associative_on_spans(spec):
    G = group(spec)
    basis = mackey_basis(G)

    def comp(f, x):       # f o (linear combination x)
        out = {}
        for s, c in x.items():
            for t, d in compose(f, s).items():
                out[t] = out.get(t, 0) + c * d
        return {t: c for t, c in out.items() if c}

    for f, g, h in product(basis, repeat=3):
        if h.target != g.source or g.target != f.source:
            continue
        left = {}
        for s, c in compose(f, g).items():
            for t, d in compose(s, h).items():
                left[t] = left.get(t, 0) + c * d
        assert {t: c for t, c in left.items() if c} == comp(f, compose(g, h))


@pytest.mark.parametrize("spec", SMALL)
def test_mackey_algebra_laws(spec):
    G = group(spec)
    mu = mackey_algebra(G)
    A = mu.algebra
    assert A.associativity_defect() == 0 and A.unit_defect() == 0
    idems = [mu.idempotent(i) for i in range(len(G.subgroup_classes()))]
    assert np.array_equal(sum(idems), A.unit)
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            assert np.array_equal(A.mul(e, f), e if i == j else 0 * e)
    for p in (2, 3):
        Ap = mackey_algebra(G, GF(p)).algebra
        assert np.array_equal(Ap.C, A.C % p) and Ap.dim == A.dim


@pytest.mark.parametrize("spec, R", [("cyclic:4", GF(2)), ("cyclic:4", ZZ), ("klein", ZZ),
                                     ("sym:3", ZZ)])
def test_corner_embedding_is_multiplicative(spec, R):
    G = group(spec)
    mu = mackey_algebra(G, R)
    B = burnside_algebra(G, R)
    n = B.dim
    for i, j in product(range(n), repeat=2):
        x, y = B.basis_vector(i), B.basis_vector(j)
        assert np.array_equal(mu.corner_embed(B.mul(x, y)),
                              mu.algebra.mul(mu.corner_embed(x), mu.corner_embed(y)))
    e = mu.idempotent(G.subgroup_classes().whole)
    assert np.array_equal(mu.corner_embed(B.unit), e)
    assert not np.array_equal(e, mu.algebra.unit)


def _example_composites(spec, p=2):
    G = group(spec)
    cls = G.subgroup_classes()
    H = 1
    f = canonicalize_span(G, cls[H].rep, 0, 0, cls.whole, H)
    g = canonicalize_span(G, cls[cls.trivial].rep, 0, 0, cls.whole, cls.whole)
    s_terms = {canonicalize_span(G, c.rep, 0, 0, cls.whole, cls.whole): c.size
               for c in cls if c.order == p}
    fs = {}
    for t, m in s_terms.items():
        for k, c in compose(f, t).items():
            fs[k] = fs.get(k, 0) + m * c
    return G, compose(f, g), fs


def test_c4_composites():
    G, fg, fs = _example_composites("cyclic:4")
    assert {k.render(legs=False): c for k, c in fg.items()} == {"[G/G <- G/1 -> G/H2]": 2}
    assert {k.render(legs=False): c for k, c in fs.items()} == {"[G/G <- G/H2 -> G/H2]": 2}
    assert all(c % 2 == 0 for c in list(fg.values()) + list(fs.values()))
    assert all(c % 3 for c in list(fg.values()) + list(fs.values()))


def test_klein_composites():
    G, fg, fs = _example_composites("klein")
    assert {k.render(legs=False): c for k, c in fg.items()} == {"[G/G <- G/1 -> G/H2a]": 2}
    assert {k.render(legs=False): c for k, c in fs.items()} == {
        "[G/G <- G/1 -> G/H2a]": 2, "[G/G <- G/H2a -> G/H2a]": 2}


@pytest.mark.parametrize("spec", ["cyclic:4", "klein", "cyclic:8"])
def test_socle_witnesses(spec):
    rep = socle_witness_check(group(spec), 2)
    assert rep.independent and rep.corner_radical_kills and rep.all_composites_vanish
    assert rep.direct_radical_kills
    assert rep.socle_not_simple


def test_socle_witness_preconditions():
    with pytest.raises(PreconditionError):
        socle_witness_check(group("cyclic:2"), 2)
    with pytest.raises(PreconditionError):
        socle_witness_check(group("sym:3"), 2)


@given(st.sampled_from(SMALL), st.data())
def test_random_elements_associate(spec, data):
    A = mackey_algebra(group(spec)).algebra
    n = A.dim
    vec = st.lists(st.integers(-3, 3), min_size=n, max_size=n)
    x, y, z = (np.array(data.draw(vec), dtype=np.int64) for _ in range(3))
    assert np.array_equal(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z)))
    assert np.array_equal(A.mul(A.unit, x), x) and np.array_equal(A.mul(x, A.unit), x)
