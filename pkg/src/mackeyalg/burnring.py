"""Burnside rings RB(G), the free-orbit functional, the Gustafson form and
socles of mod-p Burnside rings of p-groups."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import (ZZ, CoefficientRing, ConsistencyError, GF, StructuredAlgebra)
from .grpcore import Group
from .gset import GSetSum, basis_product, induce


class PreconditionError(ValueError):
    pass


_LETTERS = "hkℓmnqrtuvwz"


def class_names(G: Group) -> list[str]:
    """Letter names for the basis: ``g = [G/1]``, ``1 = [G/G]``, and
    ``h, k, ℓ, ...`` for the remaining classes in class order."""
    cls = G.subgroup_classes()
    names = []
    letters = iter(_LETTERS)
    for c in cls:
        if c.index == cls.whole:
            names.append("1")
        elif c.index == cls.trivial:
            names.append("g")
        else:
            names.append(next(letters, f"x{c.index}"))
    return names


def burnside_algebra(G: Group, R: CoefficientRing = ZZ) -> StructuredAlgebra:
    cls = G.subgroup_classes()
    n = len(cls)
    C = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            C[i, j] = basis_product(G, i, j).mult
    unit = np.zeros(n, dtype=np.int64)
    unit[cls.whole] = 1
    labels = tuple(f"[G/{_subgroup_label(G, i)}]" for i in range(n))
    return StructuredAlgebra(R, labels, R.reduce(C), unit,
                             {"group": G, "kind": "burnside", "names": class_names(G)})


def _subgroup_label(G: Group, i: int) -> str:
    cls = G.subgroup_classes()
    if i == cls.trivial:
        return "1"
    if i == cls.whole:
        return "G"
    same = [c.index for c in cls if c.order == cls[i].order]
    suffix = "" if len(same) == 1 else "abcdefghijklmnop"[same.index(i)]
    return f"H{cls[i].order}{suffix}"


def element(A: StructuredAlgebra, X: GSetSum) -> np.ndarray:
    return A.ring.reduce(np.array(X.mult, dtype=np.int64))


def unit_coset_functional(A: StructuredAlgebra, x) -> int:
    """Coefficient of ``[G/1]`` in ``x``."""
    if isinstance(x, GSetSum):
        x = x.mult
    G = A.meta["group"]
    return int(A.ring.reduce(np.asarray(x, dtype=np.int64))[G.subgroup_classes().trivial])


@dataclass(frozen=True, eq=False)
class GramForm:
    algebra: StructuredAlgebra
    gram: np.ndarray

    def __call__(self, x, y) -> int:
        return int(self.algebra.ring.reduce(np.asarray(x) @ self.gram @ np.asarray(y)))

    @property
    def det(self) -> int:
        if self.algebra.p:
            return linalg.det_mod(self.gram, self.algebra.p)
        return linalg.int_det(self.gram)

    def to_json(self) -> dict:
        return {"basis": list(self.algebra.labels), "gram": self.gram.tolist(),
                "det": self.det}


def gustafson_form(G: Group, R: CoefficientRing = ZZ, A: StructuredAlgebra | None = None) -> GramForm:
    A = A if A is not None else burnside_algebra(G, R)
    t = G.subgroup_classes().trivial
    return GramForm(A, R.reduce(A.C[:, :, t].copy()))


@dataclass(frozen=True)
class FormCertificate:
    symmetric: bool
    associative: bool
    nondegenerate: bool
    det: int

    @property
    def all(self) -> bool:
        return self.symmetric and self.associative and self.nondegenerate


def form_certificate(beta: GramForm) -> FormCertificate:
    A, M = beta.algebra, np.asarray(beta.gram, dtype=np.int64)
    red = A.ring.reduce
    symmetric = not red(M - M.T).any()
    C = A.C.astype(np.int64)
    # beta(b_i, b_j b_k) vs beta(b_i b_j, b_k)
    lhs = np.einsum("jkm,im->ijk", C, M)
    rhs = np.einsum("ijm,mk->ijk", C, M)
    associative = not red(lhs - rhs).any()
    d = beta.det
    return FormCertificate(bool(symmetric), bool(associative), A.ring.is_unit(d), int(d))


def rognerud_compatibility(G: Group, R: CoefficientRing = ZZ, detail: bool = False):
    """Check ``beta_G(1, ind_H^G x) == beta_H(1, x)`` for every class
    representative ``H`` and every basis element ``x`` of ``RB(H)``."""
    beta_G = gustafson_form(G, R)
    one_G = beta_G.algebra.unit
    failures = []
    checked = 0
    for c in G.subgroup_classes():
        Hg = G.subgroup_as_group(c.rep)
        beta_H = gustafson_form(Hg, R)
        one_H = beta_H.algebra.unit
        for i in range(len(Hg.subgroup_classes())):
            x = GSetSum.basis(Hg, i)
            lhs = beta_G(one_G, induce(G, c.rep, x).mult)
            rhs = beta_H(one_H, x.mult)
            checked += 1
            if lhs != rhs:
                failures.append((c.index, i, lhs, rhs))
    ok = not failures
    return (ok, {"checked": checked, "failures": failures}) if detail else ok


def radical_candidate(G: Group, p: int) -> np.ndarray:
    """Span of the non-unit basis elements of ``F_pB(G)``, validated as the
    radical of a local algebra with residue field F_p."""
    if not G.is_p_group(p):
        raise PreconditionError(f"{G.name} is not a {p}-group")
    A = burnside_algebra(G, GF(p))
    whole = G.subgroup_classes().whole
    J = np.array([A.basis_vector(i) for i in range(A.dim) if i != whole], dtype=np.int64)
    # ideal: no product of a non-unit basis element lands on [G/G]
    if (A.C[:, :, whole][np.arange(A.dim) != whole] % p).any():
        raise ConsistencyError("non-unit span is not an ideal")
    # nilpotent: J^dim = 0
    P = J.copy()
    for _ in range(A.dim):
        P = np.array([A.mul(x, y) for x in P for y in J]).reshape(-1, A.dim) % p
        P = linalg.rref_mod(P, p)[0] if P.size else P
        if not P.any():
            break
    if P.any():
        raise ConsistencyError("non-unit span is not nilpotent")
    return J


def modp_burnside_socle(G: Group, p: int) -> np.ndarray:
    """Basis (RREF rows) of ``{x : J x = 0}`` in ``F_pB(G)`` for a p-group."""
    J = radical_candidate(G, p)
    A = burnside_algebra(G, GF(p))
    eqs = np.vstack([A.left_matrix(j) for j in J])
    N = linalg.nullspace_mod(eqs, p)
    return linalg.rref_mod(N, p)[0] if N.shape[0] else N


def order_p_sum(G: Group, p: int) -> np.ndarray:
    """Sum of ``[G/H]`` over all subgroups ``H`` of order ``p``, in the class basis."""
    cls = G.subgroup_classes()
    v = np.zeros(len(cls), dtype=np.int64)
    for c in cls:
        if c.order == p:
            v[c.index] += c.size
    return v


# --- presentations --------------------------------------------------------

def _render(vec, names, p) -> str:
    terms = []
    for c, name in zip(vec, names):
        c = int(c) % p if p else int(c)
        if c == 0:
            continue
        if p == 0 and c < 0:
            terms.append(("-" if not terms else "- ") + (f"{-c}{name}" if c != -1 else name))
            continue
        s = name if c == 1 else f"{c}{name}"
        terms.append(s if not terms else "+ " + s)
    return " ".join(terms) if terms else "0"


def relations(A: StructuredAlgebra, gens: dict, monomials: dict) -> list[str]:
    """Render every product ``x*y`` of generators (``x <= y``) in the span of
    the named monomials.  Products that are themselves a named monomial are
    skipped, so only genuine relations remain."""
    p = A.p
    names = list(monomials)
    M = np.array([monomials[n] for n in names], dtype=np.int64)
    out = []
    keys = list(gens)
    for a, x in enumerate(keys):
        for y in keys[a:]:
            prod = A.mul(gens[x], gens[y])
            word = f"{x}^2" if x == y else f"{x}{y}"
            if word in monomials and not ((prod - monomials[word]) % (p or 1 << 62)).any():
                continue
            coef = _express(M, prod, p)
            out.append(f"{word} = {_render(coef, names, p)}")
    return out


def _express(M, v, p):
    if p:
        x = linalg.solve_mod(M.T, v, p)
        if x is None:
            raise ConsistencyError("product outside the monomial span")
        return x
    return linalg.coordinates(M, np.asarray(v).reshape(1, -1))[0]


def standard_presentation(G: Group, R: CoefficientRing = ZZ) -> dict:
    """Generators ``g, h, k, ...`` (all non-unit classes) with their relations."""
    A = burnside_algebra(G, R)
    names = A.meta["names"]
    order = [i for i in range(A.dim) if names[i] == "g"] + \
            [i for i in range(A.dim) if names[i] not in ("g", "1")]
    gens = {names[i]: A.basis_vector(i) for i in order}
    monomials = {"1": A.unit, **gens}
    return {"ring": str(R), "generators": list(gens), "relations": relations(A, gens, monomials)}


def klein_substituted_presentation(G: Group, p: int = 2) -> dict:
    """Mod-p presentation after replacing the last order-p generator by
    ``s = sum of [G/H], |H| = p`` (the Klein four group case)."""
    A = burnside_algebra(G, GF(p))
    names = A.meta["names"]
    cls = G.subgroup_classes()
    mid = [c.index for c in cls if c.order == p]
    if len(mid) < 2:
        raise PreconditionError("needs at least two classes of subgroups of order p")
    s = order_p_sum(G, p) % p
    gens = {names[i]: A.basis_vector(i) for i in mid[:-1]}
    gens["s"] = s
    h, k = A.basis_vector(mid[0]), A.basis_vector(mid[1])
    monomials = {"1": A.unit, **gens}
    hk_word = f"{names[mid[0]]}{names[mid[1]]}"
    monomials[hk_word] = A.mul(h, k)
    return {"ring": str(GF(p)), "generators": list(gens), "substitution":
            f"s = {' + '.join(names[i] for i in mid)}",
            "relations": relations(A, gens, monomials)}
