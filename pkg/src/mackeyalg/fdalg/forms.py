"""Symmetric associative bilinear forms and the unit retraction test."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .. import linalg
from ..algebra import StructuredAlgebra
from ..burnring import GramForm
from ..grpcore import is_prime

EXHAUSTIVE_LIMIT = 1 << 16
RANDOM_TRIALS = 4000
FULL_SYSTEM_MAX_DIM = 16


@dataclass
class FormSpace:
    algebra: StructuredAlgebra
    basis: list                      # Gram matrices spanning the solutions
    status: str                      # "exists", "none", "inconclusive"
    witness: GramForm | None = None
    method: str = ""
    certificate_prime: int | None = None

    @property
    def exists_nondegenerate(self) -> bool | None:
        return {"exists": True, "none": False}.get(self.status)

    def contains(self, gram) -> bool:
        """Whether ``gram`` lies in the solution space (lattice over Z)."""
        A = self.algebra
        G = np.asarray(gram, dtype=np.int64).reshape(1, -1)
        if not self.basis:
            return not G.any()
        B = np.array([b.reshape(-1) for b in self.basis], dtype=np.int64)
        if A.p:
            E = linalg.Echelon(B.shape[1], A.p)
            E.add_many(B)
            return E.contains(G[0])
        try:
            linalg.coordinates(B, G)
            return True
        except linalg.LinalgError:
            return False


def _pair_index(n):
    return {(i, j): t for t, (i, j) in enumerate((i, j) for i in range(n) for j in range(i, n))}


def full_system(A: StructuredAlgebra) -> np.ndarray:
    """Equations on the upper-triangular Gram entries expressing
    ``beta(b_i, b_j b_k) = beta(b_i b_j, b_k)`` for all triples."""
    n = A.dim
    idx = _pair_index(n)
    C = A.C.astype(np.int64)
    rows = np.zeros((n, n, n, len(idx)), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    c = C[j, k, m]
                    if c:
                        rows[i, j, k, idx[min(i, m), max(i, m)]] += c
                    c = C[i, j, m]
                    if c:
                        rows[i, j, k, idx[min(m, k), max(m, k)]] -= c
    return rows.reshape(n ** 3, len(idx))


def _gram_from_upper(x, n) -> np.ndarray:
    G = np.zeros((n, n), dtype=np.int64)
    for (i, j), t in _pair_index(n).items():
        G[i, j] = G[j, i] = x[t]
    return G


def trace_functionals_system(A: StructuredAlgebra) -> np.ndarray:
    """``lambda`` must vanish on every commutator ``b_i b_j - b_j b_i``."""
    n = A.dim
    return (A.C - A.C.transpose(1, 0, 2)).reshape(n * n, n)


def gram_of_functional(A: StructuredAlgebra, lam) -> np.ndarray:
    return A.ring.reduce(np.tensordot(A.C, np.asarray(lam, dtype=np.int64), axes=([2], [0])))


def solve_form_space(A: StructuredAlgebra, method: str | None = None) -> list:
    """Basis of the symmetric associative Gram matrices."""
    n = A.dim
    if method is None:
        method = "full" if n <= FULL_SYSTEM_MAX_DIM else "functional"
    if method == "full":
        E = full_system(A)
        if A.p:
            N = linalg.nullspace_mod(E, A.p)
        else:
            N = linalg.int_kernel(E)
        return [_gram_from_upper(x, n) for x in N]
    if method == "functional":
        # a symmetric associative form is beta(x, y) = lambda(xy) with lambda a trace
        E = trace_functionals_system(A)
        N = linalg.nullspace_mod(E, A.p) if A.p else linalg.int_kernel(E)
        return [np.asarray(gram_of_functional(A, lam), dtype=np.int64) for lam in N]
    raise ValueError(f"unknown method {method!r}")


def batched_det_mod(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of square matrices, eliminated in lockstep."""
    M = np.array(mats, dtype=np.int64) % p
    b, n, _ = M.shape
    det = np.ones(b, dtype=np.int64)
    ar = np.arange(b)
    inverse = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    for c in range(n):
        sub = M[:, c:, c]
        nz = sub != 0
        has = nz.any(axis=1)
        det[~has] = 0
        piv = c + np.argmax(nz, axis=1)
        swap = has & (piv != c)
        if swap.any():
            rows_c = M[ar[swap], c].copy()
            M[ar[swap], c] = M[ar[swap], piv[swap]]
            M[ar[swap], piv[swap]] = rows_c
            det[swap] = (-det[swap]) % p
        pv = M[:, c, c]
        det = det * pv % p
        inv = inverse[pv]
        factors = M[:, c + 1:, c] * inv[:, None] % p
        M[:, c + 1:, :] = (M[:, c + 1:, :] - factors[:, :, None] * M[:, c, None, :]) % p
    return det


def _search_mod(basis, p: int, exhaustive: bool, seed: int = 0):
    """Look for a combination with nonzero determinant mod p."""
    if not basis:
        return None
    B = np.array(basis, dtype=np.int64) % p
    m = len(basis)
    if exhaustive:
        gen = itertools.product(range(p), repeat=m)
        chunk = []
        for coeffs in gen:
            chunk.append(coeffs)
            if len(chunk) == 4096:
                hit = _check_chunk(B, chunk, p)
                if hit is not None:
                    return hit
                chunk = []
        return _check_chunk(B, chunk, p) if chunk else None
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(RANDOM_TRIALS, m))
    return _check_chunk(B, coeffs, p)


def _check_chunk(B, coeffs, p):
    coeffs = np.asarray(coeffs, dtype=np.int64)
    mats = np.tensordot(coeffs, B, axes=([1], [0])) % p
    dets = batched_det_mod(mats, p)
    nz = np.flatnonzero(dets)
    return mats[nz[0]] if nz.size else None


def symmetric_form_space(A: StructuredAlgebra, method: str | None = None,
                         primes=(2, 3, 5, 7), box: int = 2, max_box_terms: int = 6) -> FormSpace:
    """Solve for symmetric associative forms and decide whether a
    nondegenerate one exists."""
    basis = solve_form_space(A, method)
    used = method or ("full" if A.dim <= FULL_SYSTEM_MAX_DIM else "functional")
    p = A.p
    if p:
        if not basis:
            return FormSpace(A, basis, "none", method=used)
        m = len(basis)
        small = p ** m <= EXHAUSTIVE_LIMIT
        hit = _search_mod(basis, p, exhaustive=small)
        if hit is None and not small and m <= FULL_SYSTEM_MAX_DIM and p ** m <= 1 << 20:
            hit = _search_mod(basis, p, exhaustive=True)
            small = True
        if hit is not None:
            return FormSpace(A, basis, "exists", GramForm(A, hit), used)
        return FormSpace(A, basis, "none" if small else "inconclusive", method=used)
    # over Z: small integer combinations of an LLL-reduced basis
    if not basis:
        return FormSpace(A, basis, "none", method=used)
    m = len(basis)
    for G in basis:
        if abs(linalg.int_det(G)) == 1:
            return FormSpace(A, basis, "exists", GramForm(A, G), used)
    if m <= max_box_terms:
        for coeffs in itertools.product(range(-box, box + 1), repeat=m):
            if not any(coeffs):
                continue
            G = sum(c * b for c, b in zip(coeffs, basis))
            if abs(linalg.int_det(G)) == 1:
                return FormSpace(A, basis, "exists", GramForm(A, G), used)
    # certify impossibility: every lattice element singular mod some prime
    for q in primes:
        if not is_prime(q) or q ** m > EXHAUSTIVE_LIMIT:
            continue
        if _search_mod([b % q for b in basis], q, exhaustive=True) is None:
            return FormSpace(A, basis, "none", method=used, certificate_prime=q)
    return FormSpace(A, basis, "inconclusive", method=used)


def unit_retraction_exists(A: StructuredAlgebra) -> bool:
    """The unit map ``Z -> A`` splits iff the unit vector has content 1."""
    if A.p:
        return bool(np.asarray(A.unit).any())
    return linalg.content(A.unit) == 1


def sigma_is_bimodule_map(beta: GramForm) -> bool:
    """Diagnostic: ``x -> beta(-, x)`` is an ``A``-bimodule map ``A -> A*``.

    Left linearity ``beta(y, a x) = beta(y a, x)`` is associativity; right
    linearity ``beta(y, x a) = beta(a y, x)`` needs symmetry as well.
    """
    A, M = beta.algebra, np.asarray(beta.gram, dtype=np.int64)
    C = A.C.astype(np.int64)
    red = A.ring.reduce
    # left: beta(b_y, b_a b_x) vs beta(b_y b_a, b_x)
    l1 = np.einsum("axm,ym->yax", C, M)
    l2 = np.einsum("yam,mx->yax", C, M)
    # right: beta(b_y, b_x b_a) vs beta(b_a b_y, b_x)
    r1 = np.einsum("xam,ym->yax", C, M)
    r2 = np.einsum("aym,mx->yax", C, M)
    return not red(l1 - l2).any() and not red(r1 - r2).any()
